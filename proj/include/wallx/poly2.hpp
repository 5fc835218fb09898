#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wallx/rational.hpp"

namespace wallx {

/// Dense univariate polynomial over Q (coefficient of t^k at index k).
using Poly1 = std::vector<Rat>;

namespace poly1 {

inline void trim(Poly1& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int degree(const Poly1& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero

inline Poly1 derivative(const Poly1& p) {
    Poly1 d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

inline Poly1 mul(const Poly1& a, const Poly1& b) {
    if (a.empty() || b.empty()) return {};
    Poly1 c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

inline Poly1 rem(Poly1 a, const Poly1& b) {
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    trim(a);
    while (degree(a) >= degree(b)) {
        const Rat f = a.back() / b.back();
        const size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline Poly1 monic(Poly1 p) {
    trim(p);
    if (p.empty()) return p;
    const Rat inv = Rat(1) / p.back();
    for (auto& x : p) x *= inv;
    return p;
}

inline Poly1 gcd(Poly1 a, Poly1 b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly1 r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

inline bool squarefree(const Poly1& p) {
    if (degree(p) <= 1) return true;
    return degree(gcd(p, derivative(p))) <= 0;
}

/// Exact division; throws when it does not divide.
inline Poly1 divide_exact(Poly1 a, const Poly1& b) {
    trim(a);
    if (a.empty()) return {};
    Poly1 q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (degree(a) >= degree(b)) {
        const Rat f = a.back() / b.back();
        const size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
        if (a.empty()) break;
    }
    if (!a.empty()) throw std::logic_error("polynomial division is not exact");
    trim(q);
    return q;
}

}  // namespace poly1

/// Sparse bivariate polynomial over Q, keyed by (deg_x, deg_y).
class Poly2 {
public:
    Poly2() = default;

    static Poly2 constant(const Rat& c) {
        Poly2 p;
        p.set(0, 0, c);
        return p;
    }

    void set(int i, int j, const Rat& c) {
        if (c == 0)
            c_.erase({i, j});
        else
            c_[{i, j}] = c;
    }
    void add(int i, int j, const Rat& c) {
        auto it = c_.find({i, j});
        Rat v = (it == c_.end() ? Rat(0) : it->second) + c;
        set(i, j, v);
    }
    Rat get(int i, int j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? Rat(0) : it->second;
    }
    const std::map<std::pair<int, int>, Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    int total_degree() const {  // -1 for zero
        int d = -1;
        for (const auto& [ij, c] : c_) d = std::max(d, ij.first + ij.second);
        return d;
    }
    int degree_x() const {
        int d = -1;
        for (const auto& [ij, c] : c_) d = std::max(d, ij.first);
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (const auto& [ij, c] : c_) d = std::max(d, ij.second);
        return d;
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 p = *this;
        for (const auto& [ij, c] : o.c_) p.add(ij.first, ij.second, c);
        return p;
    }
    Poly2 operator-(const Poly2& o) const {
        Poly2 p = *this;
        for (const auto& [ij, c] : o.c_) p.add(ij.first, ij.second, -c);
        return p;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 p;
        for (const auto& [ij, c] : c_)
            for (const auto& [kl, e] : o.c_) p.add(ij.first + kl.first, ij.second + kl.second, c * e);
        return p;
    }
    Poly2 operator*(const Rat& s) const {
        Poly2 p;
        if (s == 0) return p;
        for (const auto& [ij, c] : c_) p.c_[ij] = c * s;
        return p;
    }
    bool operator==(const Poly2& o) const { return c_ == o.c_; }

    Poly2 dx() const {
        Poly2 p;
        for (const auto& [ij, c] : c_)
            if (ij.first > 0) p.add(ij.first - 1, ij.second, c * ij.first);
        return p;
    }
    Poly2 dy() const {
        Poly2 p;
        for (const auto& [ij, c] : c_)
            if (ij.second > 0) p.add(ij.first, ij.second - 1, c * ij.second);
        return p;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat s = 0;
        for (const auto& [ij, c] : c_) {
            Rat term = c;
            for (int k = 0; k < ij.first; ++k) term *= x;
            for (int k = 0; k < ij.second; ++k) term *= y;
            s += term;
        }
        return s;
    }

    /// Restriction along the parametrized line (x, y) = (x0 + t cx, y0 + t cy).
    Poly1 restrict_line(const Rat& x0, const Rat& cx, const Rat& y0, const Rat& cy) const {
        Poly1 out;
        for (const auto& [ij, c] : c_) {
            Poly1 term{c};
            Poly1 fx{x0, cx}, fy{y0, cy};
            for (int k = 0; k < ij.first; ++k) term = poly1::mul(term, fx);
            for (int k = 0; k < ij.second; ++k) term = poly1::mul(term, fy);
            if (term.size() > out.size()) out.resize(term.size(), Rat(0));
            for (size_t k = 0; k < term.size(); ++k) out[k] += term[k];
        }
        poly1::trim(out);
        return out;
    }

    /// Coefficient of x^i as a univariate polynomial in y.
    Poly1 coeff_of_x(int i) const {
        Poly1 out;
        for (const auto& [ij, c] : c_) {
            if (ij.first != i) continue;
            if (static_cast<size_t>(ij.second) >= out.size()) out.resize(static_cast<size_t>(ij.second) + 1, Rat(0));
            out[static_cast<size_t>(ij.second)] = c;
        }
        poly1::trim(out);
        return out;
    }

    static Poly2 from_y_poly(const Poly1& p, int x_power = 0) {
        Poly2 out;
        for (size_t j = 0; j < p.size(); ++j) out.set(x_power, static_cast<int>(j), p[j]);
        return out;
    }

private:
    std::map<std::pair<int, int>, Rat> c_;
};

namespace poly2 {

/// Content of f as a polynomial in x: the gcd in Q[y] of its x-coefficients.
inline Poly1 content_x(const Poly2& f) {
    Poly1 c;
    for (int i = 0; i <= f.degree_x(); ++i) c = poly1::gcd(c, f.coeff_of_x(i));
    return c;
}

/// Divides every x-coefficient by a Q[y] polynomial (must be exact).
inline Poly2 divide_by_y_poly(const Poly2& f, const Poly1& g) {
    Poly2 out;
    for (int i = 0; i <= f.degree_x(); ++i) {
        Poly1 q = poly1::divide_exact(f.coeff_of_x(i), g);
        out = out + Poly2::from_y_poly(q, i);
    }
    return out;
}

inline Poly2 primitive_part_x(const Poly2& f) {
    if (f.is_zero()) return f;
    return divide_by_y_poly(f, content_x(f));
}

/// Pseudo-remainder of f by g with respect to x (coefficients in Q[y]).
inline Poly2 prem_x(Poly2 f, const Poly2& g) {
    const int dg = g.degree_x();
    if (dg < 0) throw std::invalid_argument("pseudo-division by zero");
    Poly2 lc_g = Poly2::from_y_poly(g.coeff_of_x(dg));
    while (!f.is_zero() && f.degree_x() >= dg) {
        const int df = f.degree_x();
        Poly2 lc_f = Poly2::from_y_poly(f.coeff_of_x(df), df - dg);
        f = f * lc_g - g * lc_f;
    }
    return f;
}

/// gcd in Q[x, y] via the primitive pseudo-remainder sequence in (Q[y])[x].
inline Poly2 gcd(Poly2 f, Poly2 g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    // pure Q[y] cases
    if (f.degree_x() == 0 || g.degree_x() == 0) {
        Poly1 fy = f.degree_x() == 0 ? f.coeff_of_x(0) : content_x(f);
        Poly1 gy = g.degree_x() == 0 ? g.coeff_of_x(0) : content_x(g);
        return Poly2::from_y_poly(poly1::gcd(fy, gy));
    }
    Poly1 cont = poly1::gcd(content_x(f), content_x(g));
    f = primitive_part_x(f);
    g = primitive_part_x(g);
    if (f.degree_x() < g.degree_x()) std::swap(f, g);
    while (!g.is_zero()) {
        Poly2 r = prem_x(f, g);
        f = std::move(g);
        g = r.is_zero() ? r : primitive_part_x(r);
    }
    return Poly2::from_y_poly(cont) * primitive_part_x(f);
}

/// Squarefree test via gcd(f, f_x, f_y); the slow deterministic oracle.
inline bool squarefree_slow(const Poly2& f) {
    if (f.is_zero()) return false;
    if (f.total_degree() <= 1) return true;
    Poly2 g = gcd(gcd(f, f.dx()), f.dy());
    return g.total_degree() <= 0;
}

/// Production squarefree test: content checks plus restrictions to lines
/// with pairwise distinct directions. A full-degree squarefree restriction
/// certifies squarefreeness; otherwise the slow oracle decides.
inline bool squarefree_fast(const Poly2& f, int line_budget) {
    if (f.is_zero()) return false;
    const int D = f.total_degree();
    if (D <= 1) return true;

    Poly1 cx = content_x(f);
    if (!poly1::squarefree(cx)) return false;
    Poly2 pp = divide_by_y_poly(f, cx);
    // content of pp in y (coefficients in Q[x]) via the transposed view
    Poly2 ppt;
    for (const auto& [ij, c] : pp.coeffs()) ppt.set(ij.second, ij.first, c);
    Poly1 cy = content_x(ppt);
    if (!poly1::squarefree(cy)) return false;

    for (int k = 0; k < line_budget; ++k) {
        Poly1 p = f.restrict_line(Rat(0), Rat(1), Rat(k), Rat(k));
        if (poly1::degree(p) != D) continue;
        if (poly1::squarefree(p)) return true;
    }
    return squarefree_slow(f);
}

}  // namespace poly2

}  // namespace wallx
