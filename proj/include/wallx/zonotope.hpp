#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wallx/rational.hpp"
#include "wallx/simplex.hpp"
#include "wallx/weight.hpp"

namespace wallx {

/// One Minkowski summand: { t * direction : t in [lo, hi] }, with either end
/// possibly open.
struct Segment {
    Weight direction;
    Rat lo, hi;
    bool lo_strict = false;
    bool hi_strict = false;
};

/// Translated Minkowski sum of segments plus free lines. Membership is
/// decided exactly; strict segment bounds are reduced to a
/// strictly-positive LP optimum on a slack variable.
struct Zonotope {
    Weight translation;
    std::vector<Segment> segments;
    std::vector<Weight> lines;

    int dim() const { return translation.dim(); }

    struct Certificate {
        std::vector<Rat> seg_coeffs;   // one t_k per segment
        std::vector<Rat> line_coeffs;  // one s_m per line
    };

    bool has_strict() const {
        for (const auto& s : segments)
            if (s.lo_strict || s.hi_strict) return true;
        return false;
    }

    /// Per-coordinate (or any linear functional) range ignoring strictness —
    /// a safe over-approximation used for enumeration boxes and pre-filters.
    /// Returns nullopt when a line makes the functional unbounded.
    std::optional<std::pair<Rat, Rat>> functional_range(const std::vector<Rat>& phi) const {
        auto apply = [&](const Weight& w) {
            Rat s = 0;
            for (int i = 0; i < w.dim(); ++i) s += phi[static_cast<size_t>(i)] * w[i];
            return s;
        };
        for (const auto& l : lines)
            if (apply(l) != 0) return std::nullopt;
        Rat lo = apply(translation), hi = lo;
        for (const auto& s : segments) {
            Rat v = apply(s.direction);
            Rat one = s.lo * v, two = s.hi * v;
            lo += std::min(one, two);
            hi += std::max(one, two);
        }
        return std::make_pair(lo, hi);
    }

    std::optional<Certificate> contains(const Weight& x) const;
    bool contains_bool(const Weight& x) const { return contains(x).has_value(); }
};

inline std::optional<Zonotope::Certificate> Zonotope::contains(const Weight& x) const {
    const int d = dim();
    if (x.dim() != d) throw std::invalid_argument("dimension mismatch");

    BoundedLp lp;
    std::vector<int> seg_var(segments.size(), -1);
    for (size_t k = 0; k < segments.size(); ++k) {
        Rat width = segments[k].hi - segments[k].lo;
        if (width < 0) return std::nullopt;  // empty segment, empty polytope
        seg_var[k] = lp.add_var(width);
    }
    std::vector<int> line_pos(lines.size()), line_neg(lines.size());
    for (size_t m = 0; m < lines.size(); ++m) {
        line_pos[m] = lp.add_var(std::nullopt);
        line_neg[m] = lp.add_var(std::nullopt);
    }
    const bool strict = has_strict();
    int tau = -1;
    if (strict) tau = lp.add_var(Rat(1), Rat(1));  // maximize tau, capped at 1

    // Coordinate equalities: sum_k u_k dir_k + sum_m (s+ - s-) line_m
    //   = x - translation - sum_k lo_k dir_k.
    for (int c = 0; c < d; ++c) {
        std::vector<Rat> row(static_cast<size_t>(lp.nvars), Rat(0));
        Rat rhs = x[c] - translation[c];
        for (size_t k = 0; k < segments.size(); ++k) {
            row[static_cast<size_t>(seg_var[k])] = segments[k].direction[c];
            rhs -= segments[k].lo * segments[k].direction[c];
        }
        for (size_t m = 0; m < lines.size(); ++m) {
            row[static_cast<size_t>(line_pos[m])] = lines[m][c];
            row[static_cast<size_t>(line_neg[m])] = -lines[m][c];
        }
        lp.add_row(std::move(row), std::move(rhs));
    }
    // Strictness: tau <= u_k (open lower end), tau <= width_k - u_k (open
    // upper end); membership needs optimum tau > 0.
    if (strict) {
        for (size_t k = 0; k < segments.size(); ++k) {
            const Rat width = segments[k].hi - segments[k].lo;
            if (segments[k].lo_strict) {
                int surplus = lp.add_var(std::nullopt);
                std::vector<Rat> row(static_cast<size_t>(lp.nvars), Rat(0));
                row[static_cast<size_t>(seg_var[k])] = 1;
                row[static_cast<size_t>(tau)] = -1;
                row[static_cast<size_t>(surplus)] = -1;
                lp.add_row(std::move(row), Rat(0));
            }
            if (segments[k].hi_strict) {
                int slack = lp.add_var(std::nullopt);
                std::vector<Rat> row(static_cast<size_t>(lp.nvars), Rat(0));
                row[static_cast<size_t>(seg_var[k])] = 1;
                row[static_cast<size_t>(tau)] = 1;
                row[static_cast<size_t>(slack)] = 1;
                lp.add_row(std::move(row), width);
            }
        }
    }

    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::optimal) return std::nullopt;
    if (strict && !(res.objective > 0)) return std::nullopt;

    Certificate cert;
    cert.seg_coeffs.reserve(segments.size());
    for (size_t k = 0; k < segments.size(); ++k)
        cert.seg_coeffs.push_back(segments[k].lo + res.x[static_cast<size_t>(seg_var[k])]);
    for (size_t m = 0; m < lines.size(); ++m)
        cert.line_coeffs.push_back(res.x[static_cast<size_t>(line_pos[m])] -
                                   res.x[static_cast<size_t>(line_neg[m])]);
    return cert;
}

// ---------------------------------------------------------------------------
// Builders for the root/framing Minkowski-sum polytopes. Root segments run
// over all ordered pairs i != j with coefficient range [0, 3/2].

namespace detail {
inline void add_root_segments(Zonotope& z, int d, int offset = 0) {
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Segment s;
            s.direction = basis_weight(offset + i, z.dim()) - basis_weight(offset + j, z.dim());
            s.lo = 0;
            s.hi = rat(3, 2);
            z.segments.push_back(std::move(s));
        }
}
}  // namespace detail

/// W(d) = 3/2 sum[0, beta_i - beta_j] + R tau_d.
inline Zonotope build_W(int d) {
    Zonotope z;
    z.translation = Weight::zero(d);
    detail::add_root_segments(z, d);
    if (d > 0) z.lines.push_back(tau_weight(d));
    return z;
}

/// W(d)_w, the slice of W(d) at diagonal weight w.
inline Zonotope build_W_slice(int d, const Rat& w) {
    Zonotope z;
    z.translation = d > 0 ? tau_weight(d) * w : Weight::zero(0);
    detail::add_root_segments(z, d);
    return z;
}

/// V(d) = 3/2 sum[0, beta_i - beta_j] + sum[-beta_k, 0].
inline Zonotope build_V(int d) {
    Zonotope z;
    z.translation = Weight::zero(d);
    detail::add_root_segments(z, d);
    for (int k = 0; k < d; ++k) {
        Segment s;
        s.direction = basis_weight(k, d);
        s.lo = -1;
        s.hi = 0;
        z.segments.push_back(std::move(s));
    }
    return z;
}

/// W^a(1,d) = 3/2 sum[0, beta_i - beta_j] + a/2 sum(-beta_k, beta_k];
/// the framing segments are open at the lower end.
inline Zonotope build_Wa(int d, int a) {
    Zonotope z;
    z.translation = Weight::zero(d);
    detail::add_root_segments(z, d);
    for (int k = 0; k < d && a > 0; ++k) {
        Segment s;
        s.direction = basis_weight(k, d);
        s.lo = rat(-a, 2);
        s.hi = rat(a, 2);
        s.lo_strict = true;
        z.segments.push_back(std::move(s));
    }
    return z;
}

/// V^a(1,d) = 3/2 sum[0, beta_i - beta_j] + a/2 sum[-beta_k, beta_k]
///          + sum[-beta_k, 0].
inline Zonotope build_Va(int d, int a) {
    Zonotope z = build_V(d);
    for (int k = 0; k < d && a > 0; ++k) {
        Segment s;
        s.direction = basis_weight(k, d);
        s.lo = rat(-a, 2);
        s.hi = rat(a, 2);
        z.segments.push_back(std::move(s));
    }
    return z;
}

// ---------------------------------------------------------------------------
// Lattice-point enumeration.

/// All dominant integral chi with chi + shift in P, sorted lexicographically.
/// P must be bounded (no free lines). The integer box comes from exact
/// per-coordinate ranges; prefix-sum ranges prune before the LP runs.
inline std::vector<Weight> enumerate_dominant_integral(const Zonotope& P, const Weight& shift) {
    const int d = P.dim();
    if (shift.dim() != d) throw std::invalid_argument("dimension mismatch");
    if (!P.lines.empty()) throw std::invalid_argument("unbounded polytope");
    if (d == 0) {
        std::vector<Weight> out;
        if (P.contains_bool(Weight::zero(0))) out.push_back(Weight::zero(0));
        return out;
    }

    std::vector<std::pair<Rat, Rat>> coord(static_cast<size_t>(d));
    std::vector<std::pair<Rat, Rat>> prefix(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) {
        std::vector<Rat> phi(static_cast<size_t>(d), Rat(0));
        phi[static_cast<size_t>(c)] = 1;
        coord[static_cast<size_t>(c)] = *P.functional_range(phi);
        std::vector<Rat> psi(static_cast<size_t>(d), Rat(0));
        for (int i = 0; i <= c; ++i) psi[static_cast<size_t>(i)] = 1;
        prefix[static_cast<size_t>(c)] = *P.functional_range(psi);
    }

    std::vector<Weight> out;
    std::vector<Rat> current(static_cast<size_t>(d));
    std::function<void(int, const Rat&, const Rat&)> rec = [&](int pos, const Rat& prev,
                                                               const Rat& psum) {
        if (pos == d) {
            Weight chi{std::vector<Rat>(current)};
            if (P.contains_bool(chi + shift)) out.push_back(chi);
            return;
        }
        const auto& [clo, chigh] = coord[static_cast<size_t>(pos)];
        mpz_class lo = rat_ceil(clo - shift[pos]);
        mpz_class hi = rat_floor(chigh - shift[pos]);
        if (pos > 0 && Rat(lo) < prev) lo = rat_ceil(prev);
        for (mpz_class v = lo; v <= hi; ++v) {
            Rat rv(v);
            // prefix-sum pre-filter: sum_{i<=pos}(chi+shift)_i must fit.
            Rat ps = psum + rv + shift[pos];
            if (ps < prefix[static_cast<size_t>(pos)].first ||
                ps > prefix[static_cast<size_t>(pos)].second)
                continue;
            current[static_cast<size_t>(pos)] = rv;
            rec(pos + 1, rv, ps);
        }
    };
    rec(0, Rat(0), Rat(0));
    return out;
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin feasibility: the independent membership oracle.

namespace fm {

struct Constraint {
    std::vector<Rat> a;
    Rat b;
    bool strict = false;  // a.y < b when strict, else a.y <= b
};

inline void normalize(Constraint& c) {
    for (auto& x : c.a) {
        if (x != 0) {
            Rat s = abs(x);
            for (auto& y : c.a) y /= s;
            c.b /= s;
            return;
        }
    }
}

/// Eliminates variable v from the system; grows |pos| * |neg| rows.
inline std::vector<Constraint> eliminate(const std::vector<Constraint>& sys, size_t v) {
    std::vector<Constraint> keep, pos, neg;
    for (const auto& c : sys) {
        if (c.a[v] == 0)
            keep.push_back(c);
        else if (c.a[v] > 0)
            pos.push_back(c);
        else
            neg.push_back(c);
    }
    std::map<std::vector<Rat>, std::pair<Rat, bool>> dedup;
    auto insert = [&](Constraint c) {
        normalize(c);
        auto it = dedup.find(c.a);
        if (it == dedup.end()) {
            dedup.emplace(std::move(c.a), std::make_pair(c.b, c.strict));
        } else {
            auto& [b, strict] = it->second;
            if (c.b < b || (c.b == b && c.strict && !strict)) {
                b = c.b;
                strict = c.strict;
            }
        }
    };
    for (auto& c : keep) insert(c);
    for (const auto& p : pos)
        for (const auto& n : neg) {
            Constraint c;
            c.a.resize(p.a.size());
            const Rat pc = p.a[v], nc = -n.a[v];
            for (size_t i = 0; i < p.a.size(); ++i) c.a[i] = nc * p.a[i] + pc * n.a[i];
            c.a[v] = 0;
            c.b = nc * p.b + pc * n.b;
            c.strict = p.strict || n.strict;
            insert(std::move(c));
        }
    std::vector<Constraint> out;
    out.reserve(dedup.size());
    for (auto& [a, rb] : dedup) out.push_back({a, rb.first, rb.second});
    return out;
}

}  // namespace fm

/// Membership decided by Gaussian substitution of the coordinate equalities
/// followed by Fourier–Motzkin elimination with strictness tracking.
/// Independent of the simplex path; used as a cross-check oracle.
inline bool fm_contains(const Zonotope& P, const Weight& x) {
    const int d = P.dim();
    if (x.dim() != d) throw std::invalid_argument("dimension mismatch");
    const size_t K = P.segments.size(), L = P.lines.size();
    const size_t n = K + L;

    // Equalities E y = g from the coordinates.
    std::vector<std::vector<Rat>> E;
    std::vector<Rat> g;
    for (int c = 0; c < d; ++c) {
        std::vector<Rat> row(n, Rat(0));
        for (size_t k = 0; k < K; ++k) row[k] = P.segments[k].direction[c];
        for (size_t m = 0; m < L; ++m) row[K + m] = P.lines[m][c];
        E.push_back(std::move(row));
        g.push_back(x[c] - P.translation[c]);
    }
    // Bounds as inequalities.
    std::vector<fm::Constraint> sys;
    for (size_t k = 0; k < K; ++k) {
        fm::Constraint up, lo;
        up.a.assign(n, Rat(0));
        up.a[k] = 1;
        up.b = P.segments[k].hi;
        up.strict = P.segments[k].hi_strict;
        lo.a.assign(n, Rat(0));
        lo.a[k] = -1;
        lo.b = -P.segments[k].lo;
        lo.strict = P.segments[k].lo_strict;
        sys.push_back(std::move(up));
        sys.push_back(std::move(lo));
    }

    // Substitute variables out via the equalities (exact Gaussian steps).
    std::vector<bool> eliminated(n, false);
    for (size_t r = 0; r < E.size(); ++r) {
        size_t piv = n;
        for (size_t j = 0; j < n; ++j)
            if (!eliminated[j] && E[r][j] != 0) {
                piv = j;
                break;
            }
        if (piv == n) {
            if (g[r] != 0) return false;  // 0 = nonzero
            continue;
        }
        const Rat pc = E[r][piv];
        for (size_t r2 = 0; r2 < E.size(); ++r2) {
            if (r2 == r || E[r2][piv] == 0) continue;
            const Rat f = E[r2][piv] / pc;
            for (size_t j = 0; j < n; ++j) E[r2][j] -= f * E[r][j];
            g[r2] -= f * g[r];
        }
        for (auto& c : sys) {
            if (c.a[piv] == 0) continue;
            const Rat f = c.a[piv] / pc;
            for (size_t j = 0; j < n; ++j) c.a[j] -= f * E[r][j];
            c.b -= f * g[r];
        }
        eliminated[piv] = true;
    }

    // Fourier–Motzkin on whatever is left.
    for (size_t v = 0; v < n; ++v) {
        if (eliminated[v]) continue;
        sys = fm::eliminate(sys, v);
    }
    for (const auto& c : sys) {
        bool zero = true;
        for (const auto& y : c.a)
            if (y != 0) {
                zero = false;
                break;
            }
        if (!zero) continue;  // still mentions a line variable: vacuous here
        if (c.strict ? !(Rat(0) < c.b) : !(Rat(0) <= c.b)) return false;
    }
    return true;
}

}  // namespace wallx
