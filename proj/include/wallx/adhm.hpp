#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "wallx/matrix.hpp"
#include "wallx/poly2.hpp"
#include "wallx/rational.hpp"

namespace wallx {

/// Index set I_m = {(i, j) : 1 <= i + j <= m}, of size m(m+3)/2.
inline std::vector<std::pair<int, int>> index_set_Im(int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; i + j <= m; ++j)
            if (i + j >= 1) out.emplace_back(i, j);
    return out;
}

using AlphaMap = std::map<std::pair<int, int>, Rat>;

/// Representation data of the extended ADHM quiver over Q: a+1 vectors u,
/// a covectors v, the three endomorphisms A, B, C and the curve coefficients
/// alpha indexed by I_m. The C^3 geometry is a = 1; general a is supported
/// for the quiver/stability layer.
struct AdhmPoint {
    int d = 0;
    int a = 1;
    int m = 1;
    std::vector<Vec> u;  // a+1 columns, each length d
    std::vector<Vec> v;  // a rows, each length d
    Mat A, B, C;
    AlphaMap alpha;

    void validate() const {
        if (d < 0 || a < 0 || m < 1) throw std::invalid_argument("bad ADHM shape");
        if (static_cast<int>(u.size()) != a + 1 || static_cast<int>(v.size()) != a)
            throw std::invalid_argument("ADHM point needs a+1 u-vectors and a v-covectors");
        for (const auto& x : u)
            if (static_cast<int>(x.size()) != d) throw std::invalid_argument("u dimension mismatch");
        for (const auto& x : v)
            if (static_cast<int>(x.size()) != d) throw std::invalid_argument("v dimension mismatch");
        for (const Mat* mat : {&A, &B, &C})
            if (mat->rows() != d || mat->cols() != d)
                throw std::invalid_argument("matrix dimension mismatch");
        for (const auto& [ij, c] : alpha) {
            (void)c;
            if (ij.first < 0 || ij.second < 0 || ij.first + ij.second < 1 ||
                ij.first + ij.second > m)
                throw std::invalid_argument("alpha index outside I_m");
        }
    }
};

/// f_alpha as a polynomial: 1 + sum alpha_ij x^i y^j.
inline Poly2 f_alpha_poly(const AlphaMap& alpha) {
    Poly2 p = Poly2::constant(Rat(1));
    for (const auto& [ij, c] : alpha) p.add(ij.first, ij.second, c);
    return p;
}

inline Rat eval_f_alpha_scalar(const AlphaMap& alpha, const Rat& x, const Rat& y) {
    return f_alpha_poly(alpha).eval(x, y);
}

namespace detail {
inline std::vector<Mat> powers(const Mat& M, int top) {
    std::vector<Mat> p;
    p.push_back(Mat::identity(M.rows()));
    for (int k = 1; k <= top; ++k) p.push_back(p.back() * M);
    return p;
}
inline int max_i(const AlphaMap& alpha) {
    int m = 0;
    for (const auto& [ij, c] : alpha) m = std::max(m, ij.first);
    return m;
}
inline int max_j(const AlphaMap& alpha) {
    int m = 0;
    for (const auto& [ij, c] : alpha) m = std::max(m, ij.second);
    return m;
}
}  // namespace detail

/// Matrix substitution Id + sum alpha_ij A^i B^j; the monomial order is
/// A-powers to the left of B-powers (normative).
inline Mat eval_f_alpha(const AlphaMap& alpha, const Mat& A, const Mat& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("matrix shape mismatch");
    auto pa = detail::powers(A, detail::max_i(alpha));
    auto pb = detail::powers(B, detail::max_j(alpha));
    Mat out = Mat::identity(A.rows());
    for (const auto& [ij, c] : alpha)
        out = out + pa[static_cast<size_t>(ij.first)] * pb[static_cast<size_t>(ij.second)] * c;
    return out;
}

/// Tr W_{m,d} = sum alpha_ij v A^i B^j u_2 + Tr C (u_1 v + [A, B]);
/// equivalently v (f_alpha(A,B) - Id) u_2 + Tr C (u_1 v + [A, B]).
inline Rat potential(const AdhmPoint& p) {
    p.validate();
    if (p.a != 1) throw std::invalid_argument("potential needs the a = 1 layout");
    const Vec& u1 = p.u[0];
    const Vec& u2 = p.u[1];
    const Vec& v = p.v[0];
    Mat f = eval_f_alpha(p.alpha, p.A, p.B) - Mat::identity(p.d);
    Rat val = dot(f.apply_left(v), u2);
    Mat inner = Mat::outer(u1, v) + commutator(p.A, p.B);
    val += (p.C * inner).trace();
    return val;
}

/// Residual blocks of the critical equations, normalized by the trace
/// pairing dW = Tr(R_X dX) for matrices and dW = <R, d(vector)> for vectors;
/// so d/dC is exactly u_1 v + [A, B] and the finite-difference gradient
/// entry dW/dX_{kl} equals (R_X)_{lk}.
struct AdhmResiduals {
    Mat dA, dB, dC;
    Vec du1, du2;  // covectors
    Vec dv;        // column
    AlphaMap dalpha;

    bool all_zero() const {
        if (!dA.is_zero() || !dB.is_zero() || !dC.is_zero()) return false;
        if (!vec_is_zero(du1) || !vec_is_zero(du2) || !vec_is_zero(dv)) return false;
        for (const auto& [ij, c] : dalpha)
            if (c != 0) return false;
        return true;
    }
};

inline AdhmResiduals critical_residuals(const AdhmPoint& p) {
    p.validate();
    if (p.a != 1) throw std::invalid_argument("critical_residuals needs the a = 1 layout");
    const Vec& u1 = p.u[0];
    const Vec& u2 = p.u[1];
    const Vec& v = p.v[0];
    const Mat u2v = Mat::outer(u2, v);
    auto pa = detail::powers(p.A, std::max(detail::max_i(p.alpha), 1));
    auto pb = detail::powers(p.B, std::max(detail::max_j(p.alpha), 1));

    AdhmResiduals r;
    r.dC = Mat::outer(u1, v) + commutator(p.A, p.B);
    r.dA = commutator(p.B, p.C);
    r.dB = commutator(p.C, p.A);
    for (const auto& [ij, c] : p.alpha) {
        const auto [i, j] = ij;
        for (int s = 0; s + 1 <= i; ++s) {
            // d/dA of Tr(A^i B^j u2 v): A^t B^j u2 v A^s over t + s = i - 1
            r.dA = r.dA + (pa[static_cast<size_t>(i - 1 - s)] * pb[static_cast<size_t>(j)] * u2v *
                           pa[static_cast<size_t>(s)]) *
                              c;
        }
        for (int s = 0; s + 1 <= j; ++s) {
            // d/dB of Tr(B^j u2 v A^i): B^t u2 v A^i B^s over t + s = j - 1
            r.dB = r.dB + (pb[static_cast<size_t>(j - 1 - s)] * u2v * pa[static_cast<size_t>(i)] *
                           pb[static_cast<size_t>(s)]) *
                              c;
        }
    }
    r.du1 = p.C.transpose().apply(v);  // v C as a covector
    Mat f_minus_id = eval_f_alpha(p.alpha, p.A, p.B) - Mat::identity(p.d);
    r.du2 = f_minus_id.apply_left(v);
    r.dv = f_minus_id.apply(u2);
    {
        Vec cu1 = p.C.apply(u1);
        for (int i = 0; i < p.d; ++i) r.dv[static_cast<size_t>(i)] += cu1[static_cast<size_t>(i)];
    }
    for (const auto& ij : index_set_Im(p.m)) {
        Vec w = u2;
        // A^i B^j u2 (apply B^j first)
        w = pb.size() > static_cast<size_t>(ij.second) ? pb[static_cast<size_t>(ij.second)].apply(w)
                                                       : detail::powers(p.B, ij.second).back().apply(w);
        w = pa.size() > static_cast<size_t>(ij.first) ? pa[static_cast<size_t>(ij.first)].apply(w)
                                                      : detail::powers(p.A, ij.first).back().apply(w);
        r.dalpha[ij] = dot(v, w);
    }
    return r;
}

enum class Side { DT, PT };

struct StabilityResult {
    bool semistable = false;
    std::vector<Vec> closure_basis;  // the invariant subspace reached; a
                                     // certificate of failure when proper
};

/// chi_0-stability by iterated span closure: DT asks C<A,B,C>(u_*) = V,
/// PT asks C<A,B,C>(v_*) = V^dual (transposes act on covectors).
inline StabilityResult is_semistable(const AdhmPoint& p, Side side) {
    p.validate();
    std::vector<Vec> seeds;
    std::vector<Mat> ops;
    if (side == Side::DT) {
        seeds = p.u;
        ops = {p.A, p.B, p.C};
    } else {
        seeds = p.v;
        ops = {p.A.transpose(), p.B.transpose(), p.C.transpose()};
    }
    StabilityResult res;
    res.closure_basis = span_closure(seeds, ops, p.d);
    res.semistable = static_cast<int>(res.closure_basis.size()) == p.d;
    return res;
}

/// Reducedness of the affine curve C_alpha: f_alpha squarefree as a
/// bivariate polynomial. Production path: line restrictions (m^2 + 1 lines
/// with pairwise distinct directions) with the pseudo-remainder gcd as the
/// deterministic fallback.
inline bool is_reduced(const AlphaMap& alpha, int m) {
    for (const auto& [ij, c] : alpha) {
        (void)c;
        if (ij.first + ij.second < 1 || ij.first + ij.second > m)
            throw std::invalid_argument("alpha index outside I_m");
    }
    return poly2::squarefree_fast(f_alpha_poly(alpha), m * m + 1);
}

// ---------------------------------------------------------------------------
// Floating variant, used only by the finite-difference derivative checks.

struct AdhmPointD {
    int d = 0, m = 1;
    std::vector<std::vector<double>> u;  // 2 x d
    std::vector<double> v;               // d
    std::vector<std::vector<double>> A, B, C;
    std::map<std::pair<int, int>, double> alpha;

    static AdhmPointD from_exact(const AdhmPoint& p) {
        if (p.a != 1) throw std::invalid_argument("floating variant needs a = 1");
        AdhmPointD q;
        q.d = p.d;
        q.m = p.m;
        auto vec = [](const Vec& x) {
            std::vector<double> out;
            for (const auto& r : x) out.push_back(r.get_d());
            return out;
        };
        auto mat = [&](const Mat& M) {
            std::vector<std::vector<double>> out(static_cast<size_t>(M.rows()),
                                                 std::vector<double>(static_cast<size_t>(M.cols())));
            for (int i = 0; i < M.rows(); ++i)
                for (int j = 0; j < M.cols(); ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = M.at(i, j).get_d();
            return out;
        };
        q.u = {vec(p.u[0]), vec(p.u[1])};
        q.v = vec(p.v[0]);
        q.A = mat(p.A);
        q.B = mat(p.B);
        q.C = mat(p.C);
        for (const auto& [ij, c] : p.alpha) q.alpha[ij] = c.get_d();
        return q;
    }
};

inline double potential_double(const AdhmPointD& p) {
    const int d = p.d;
    auto matmul = [&](const std::vector<std::vector<double>>& X,
                      const std::vector<std::vector<double>>& Y) {
        std::vector<std::vector<double>> Z(static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 0.0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j)
                    Z[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        X[static_cast<size_t>(i)][static_cast<size_t>(k)] * Y[static_cast<size_t>(k)][static_cast<size_t>(j)];
        return Z;
    };
    double val = 0.0;
    // sum alpha_ij v A^i B^j u2
    for (const auto& [ij, c] : p.alpha) {
        std::vector<double> w = p.u[1];
        for (int k = 0; k < ij.second; ++k) {
            std::vector<double> nw(static_cast<size_t>(d), 0.0);
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) nw[static_cast<size_t>(r)] += p.B[static_cast<size_t>(r)][static_cast<size_t>(s)] * w[static_cast<size_t>(s)];
            w = nw;
        }
        for (int k = 0; k < ij.first; ++k) {
            std::vector<double> nw(static_cast<size_t>(d), 0.0);
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) nw[static_cast<size_t>(r)] += p.A[static_cast<size_t>(r)][static_cast<size_t>(s)] * w[static_cast<size_t>(s)];
            w = nw;
        }
        double vw = 0.0;
        for (int r = 0; r < d; ++r) vw += p.v[static_cast<size_t>(r)] * w[static_cast<size_t>(r)];
        val += c * vw;
    }
    // Tr C (u1 v + [A, B])
    auto AB = matmul(p.A, p.B);
    auto BA = matmul(p.B, p.A);
    std::vector<std::vector<double>> inner(static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            inner[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                p.u[0][static_cast<size_t>(i)] * p.v[static_cast<size_t>(j)] + AB[static_cast<size_t>(i)][static_cast<size_t>(j)] - BA[static_cast<size_t>(i)][static_cast<size_t>(j)];
    auto CI = matmul(p.C, inner);
    for (int i = 0; i < d; ++i) val += CI[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return val;
}

}  // namespace wallx
