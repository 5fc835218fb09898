#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wallx/rational.hpp"
#include "wallx/weight.hpp"
#include "wallx/zonotope.hpp"

namespace wallx {

/// Genericity of the stability parameter: 2*mu*l is non-integral for every
/// 1 <= l <= d. Hard precondition for the strict-end enumerators, soft flag
/// elsewhere.
inline bool is_generic_mu(const Rat& mu, int d) {
    for (int l = 1; l <= d; ++l)
        if (is_integer(Rat(2 * l) * mu)) return false;
    return true;
}

inline Weight delta_weight(const Rat& mu, int d) { return sigma(d) * mu; }

/// The level-e decomposition polytope in the coordinates of the shifted
/// weight chi + rho + delta: root coefficients in [0, 3/2] for ordered pairs
/// j < i inside {1..e} and inside {e+1..d}, the cross pairs j <= e < i
/// frozen at 3/2 (translation), diagonal boxes [-(a+2)/2, -a/2] below the
/// level and (-a/2, a/2] above it.
inline Zonotope build_level_polytope(int d, int a, int e) {
    if (e < 0 || e > d) throw std::invalid_argument("level out of range");
    Zonotope z;
    z.translation = Weight::zero(d);
    for (int j = 0; j < e; ++j)
        for (int i = e; i < d; ++i) {
            z.translation[i] += rat(3, 2);
            z.translation[j] -= rat(3, 2);
        }
    auto add_block_roots = [&](int lo, int hi) {
        for (int j = lo; j < hi; ++j)
            for (int i = j + 1; i < hi; ++i) {
                Segment s;
                s.direction = basis_weight(i, d) - basis_weight(j, d);
                s.lo = 0;
                s.hi = rat(3, 2);
                z.segments.push_back(std::move(s));
            }
    };
    add_block_roots(0, e);
    add_block_roots(e, d);
    for (int i = 0; i < e; ++i) {
        Segment s;
        s.direction = basis_weight(i, d);
        s.lo = rat(-(a + 2), 2);
        s.hi = rat(-a, 2);
        z.segments.push_back(std::move(s));
    }
    for (int i = e; i < d && a > 0; ++i) {
        Segment s;
        s.direction = basis_weight(i, d);
        s.lo = rat(-a, 2);
        s.hi = rat(a, 2);
        s.lo_strict = true;
        z.segments.push_back(std::move(s));
    }
    return z;
}

/// Certificate of the level decomposition: root coefficients c_{ij} (1-based,
/// j < i, cross pairs frozen at 3/2) and the diagonal coefficients c_i.
struct DecompositionWitness {
    int e = 0;
    std::map<std::pair<int, int>, Rat> c_roots;
    std::vector<Rat> c_diag;

    /// Recomposes the witnessed point (used by tests and assertions).
    Weight recompose(int d) const {
        Weight x(d);
        for (const auto& [ij, c] : c_roots) {
            x[ij.first - 1] += c;
            x[ij.second - 1] -= c;
        }
        for (int i = 0; i < d; ++i) x[i] += c_diag[static_cast<size_t>(i)];
        return x;
    }
};

namespace detail {
inline DecompositionWitness witness_from_certificate(int d, int a, int e,
                                                     const Zonotope::Certificate& cert) {
    DecompositionWitness w;
    w.e = e;
    w.c_diag.assign(static_cast<size_t>(d), Rat(0));
    for (int j = 1; j <= e; ++j)
        for (int i = e + 1; i <= d; ++i) w.c_roots[{i, j}] = rat(3, 2);
    size_t k = 0;
    auto eat_roots = [&](int lo, int hi) {
        for (int j = lo; j < hi; ++j)
            for (int i = j + 1; i < hi; ++i) w.c_roots[{i + 1, j + 1}] = cert.seg_coeffs[k++];
    };
    eat_roots(0, e);
    eat_roots(e, d);
    for (int i = 0; i < e; ++i) w.c_diag[static_cast<size_t>(i)] = cert.seg_coeffs[k++];
    for (int i = e; i < d && a > 0; ++i) w.c_diag[static_cast<size_t>(i)] = cert.seg_coeffs[k++];
    return w;
}
}  // namespace detail

/// Levels e for which the shifted point admits the decomposition of the
/// level polytope. On inputs satisfying the module precondition exactly one
/// level passes.
inline std::vector<int> passing_levels(const Weight& point, int a) {
    std::vector<int> out;
    for (int e = 0; e <= point.dim(); ++e)
        if (build_level_polytope(point.dim(), a, e).contains_bool(point)) out.push_back(e);
    return out;
}

struct LevelResult {
    int e = 0;
    DecompositionWitness witness;
};

/// Unique level of a shifted point (chi + rho + delta supplied directly).
inline std::optional<LevelResult> find_level_at(const Weight& point, int a) {
    const int d = point.dim();
    std::optional<LevelResult> found;
    for (int e = 0; e <= d; ++e) {
        Zonotope P = build_level_polytope(d, a, e);
        auto cert = P.contains(point);
        if (!cert) continue;
        if (found) throw std::logic_error("level decomposition not unique (implementation bug)");
        found = LevelResult{e, detail::witness_from_certificate(d, a, e, *cert)};
    }
    return found;
}

/// find_level_e of the module contract: errors when chi violates the
/// precondition chi + rho + delta in V^a(1, d).
inline LevelResult find_level_e(const Weight& chi, int a, const Rat& mu) {
    const int d = chi.dim();
    Weight point = chi + rho(d) + delta_weight(mu, d);
    auto r = find_level_at(point, a);
    if (!r) throw std::domain_error("not-in-polytope: no level admits the input weight");
    return *r;
}

/// p_l(chi) = <tau_l, chi+rho+delta> + (3/2) l (d-l) + (a/2) l.
inline Rat p_l(const Weight& chi, int l, int a, const Rat& mu) {
    const int d = chi.dim();
    if (l < 1 || l > d) throw std::invalid_argument("p_l needs 1 <= l <= d");
    Rat v = pair(tau_cocharacter(l, d), chi + rho(d) + delta_weight(mu, d));
    return v + rat(3, 2) * l * (d - l) + rat(a, 2) * l;
}

struct PResult {
    int e = 0;
    Rat p;
    DecompositionWitness witness;
};

/// p(chi) = p_{e(chi)}(chi), computed from the cocharacter pairing and
/// cross-checked against the witness form sum_{i<=e}(c_i + a/2).
inline PResult p_of(const Weight& chi, int a, const Rat& mu) {
    const int d = chi.dim();
    LevelResult lev = find_level_e(chi, a, mu);
    const int e = lev.e, f = d - e;
    Rat p = pair(tau_cocharacter(e, d), chi + rho(d) + delta_weight(mu, d));
    p += rat(3, 2) * e * f + rat(a, 2) * e;
    Rat from_witness = 0;
    for (int i = 0; i < e; ++i) from_witness += lev.witness.c_diag[static_cast<size_t>(i)] + rat(a, 2);
    if (p != from_witness) throw std::logic_error("p(chi): pairing and witness forms disagree");
    return {e, p, std::move(lev.witness)};
}

// ---------------------------------------------------------------------------
// The w <-> v transform and semiorthogonal summand types.

/// v_i = w_i + d_i (d' + sum_{j>i} d_j - sum_{j<i} d_j).
inline std::vector<long> transform_w_to_v(const std::vector<std::pair<int, long>>& parts,
                                          int d_prime) {
    const int k = static_cast<int>(parts.size());
    std::vector<long> v(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        long after = 0, before = 0;
        for (int j = 0; j < k; ++j) {
            if (j > i) after += parts[static_cast<size_t>(j)].first;
            if (j < i) before += parts[static_cast<size_t>(j)].first;
        }
        v[static_cast<size_t>(i)] =
            parts[static_cast<size_t>(i)].second +
            static_cast<long>(parts[static_cast<size_t>(i)].first) * (d_prime + after - before);
    }
    return v;
}

/// Inverse of transform_w_to_v; parts carry (d_i, v_i).
inline std::vector<long> transform_v_to_w(const std::vector<std::pair<int, long>>& parts,
                                          int d_prime) {
    const int k = static_cast<int>(parts.size());
    std::vector<long> w(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        long after = 0, before = 0;
        for (int j = 0; j < k; ++j) {
            if (j > i) after += parts[static_cast<size_t>(j)].first;
            if (j < i) before += parts[static_cast<size_t>(j)].first;
        }
        w[static_cast<size_t>(i)] =
            parts[static_cast<size_t>(i)].second -
            static_cast<long>(parts[static_cast<size_t>(i)].first) * (d_prime + after - before);
    }
    return w;
}

/// A semiorthogonal summand label: ordered parts (d_i, w_i), residual d',
/// inside the ambient context (d, a, mu).
struct TypeS {
    std::vector<std::pair<int, long>> parts;
    int d_prime = 0;
    int d = 0;
    int a = 0;
    Rat mu;

    int level() const { return d - d_prime; }
    long w_sum() const {
        long s = 0;
        for (auto& [di, wi] : parts) s += wi;
        return s;
    }
    std::vector<long> v() const { return transform_w_to_v(parts, d_prime); }

    bool same_label(const TypeS& o) const { return parts == o.parts && d_prime == o.d_prime; }
    bool same_context(const TypeS& o) const { return d == o.d && a == o.a && mu == o.mu; }
};

/// p(S), computed through both closed forms, which must agree:
/// sum w_i - (d-d')(-mu-d'-a/2) = sum v_i - (d-d')(-mu-a/2).
inline Rat p_of_type(const TypeS& s) {
    const int e = s.level();
    Rat e1 = Rat(s.w_sum()) - Rat(e) * (-s.mu - s.d_prime - rat(s.a, 2));
    long vsum = 0;
    for (long vi : s.v()) vsum += vi;
    Rat e2 = Rat(vsum) - Rat(e) * (-s.mu - rat(s.a, 2));
    if (e1 != e2) throw std::logic_error("p_of_type: the two expressions disagree");
    return e1;
}

struct TypeResult {
    TypeS type;
    std::vector<Weight> components;  // chi_1, ..., chi_k, chi'
};

namespace detail {
inline std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int first = 1; first <= rem; ++first) {
            cur.push_back(first);
            rec(rem - first);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

/// Chain of Theorem 3.2: -1-mu-a/2 <= v_1/d_1 < ... <= -mu-a/2 (closed ends,
/// strict middles). Strict ends when closed_ends is false.
inline bool v_chain_ok(const std::vector<int>& sizes, const std::vector<long>& v, int a,
                       const Rat& mu, bool closed_ends) {
    const Rat lo = -1 - mu - rat(a, 2), hi = -mu - rat(a, 2);
    for (size_t i = 0; i < sizes.size(); ++i) {
        Rat q = Rat(v[i]) / sizes[i];
        if (i == 0) {
            if (closed_ends ? q < lo : !(q > lo)) return false;
        } else {
            Rat prev = Rat(v[i - 1]) / sizes[i - 1];
            if (!(q > prev)) return false;
        }
        if (i + 1 == sizes.size()) {
            if (closed_ends ? q > hi : !(q < hi)) return false;
        }
    }
    return true;
}
}  // namespace detail

/// The unique summand label and component weights of a generator chi:
/// chi = chi_1 + ... + chi_k + chi' with chi_i + rho_i in W(d_i)_{w_i},
/// chi' + rho' + (mu-e) sigma_{d'} in W^a(1, d') and the v-chain of the
/// closed-end theorem. Nonexistence and non-uniqueness both throw: the
/// first signals a violated precondition, the second an implementation bug.
inline TypeResult type_of_weight(const Weight& chi, int a, const Rat& mu) {
    const int d = chi.dim();
    if (!chi.is_dominant() || !chi.is_integral())
        throw std::invalid_argument("type_of_weight needs a dominant integral weight");
    LevelResult lev = find_level_e(chi, a, mu);
    const int e = lev.e, d_prime = d - e;

    Weight chi_prime = chi.slice(e, d_prime);
    Weight shifted_prime =
        chi_prime + rho(d_prime) + sigma(d_prime) * (mu - e);
    if (!build_Wa(d_prime, a).contains_bool(shifted_prime))
        throw std::logic_error("type_of_weight: residual part escaped W^a(1, d')");

    Weight chi_e = chi.slice(0, e);
    std::optional<TypeResult> found;
    for (const auto& sizes : detail::compositions(e)) {
        std::vector<Weight> comps;
        std::vector<std::pair<int, long>> parts;
        int off = 0;
        bool ok = true;
        for (int di : sizes) {
            Weight ci = chi_e.slice(off, di);
            off += di;
            long wi = to_ll(ci.coeff_sum().get_num());  // integral slice
            parts.emplace_back(di, wi);
            comps.push_back(std::move(ci));
        }
        std::vector<long> v = transform_w_to_v(parts, d_prime);
        if (!detail::v_chain_ok(sizes, v, a, mu, /*closed_ends=*/true)) continue;
        for (size_t i = 0; i < sizes.size() && ok; ++i) {
            Zonotope W = build_W_slice(sizes[i], Rat(parts[i].second));
            if (!W.contains_bool(comps[i] + rho(sizes[i]))) ok = false;
        }
        if (!ok) continue;
        if (found) throw std::logic_error("type decomposition not unique (implementation bug)");
        TypeS type{parts, d_prime, d, a, mu};
        comps.push_back(chi_prime);
        found = TypeResult{std::move(type), std::move(comps)};
    }
    if (!found) throw std::logic_error("type decomposition not found (implementation bug)");
    return *found;
}

// ---------------------------------------------------------------------------
// The order O on types.

enum class OrderVerdict { in_O, not_in_O, both_directions };

/// Optional clause-3 tie break: given (S', S) with equal p and equal levels,
/// returns {(S',S) in O, (S,S') in O}. The default treats such pairs as
/// incomparable.
using TieBreakHook = std::function<std::pair<bool, bool>(const TypeS&, const TypeS&)>;

/// Membership of (S', S) in O: p(S') > p(S); or equal p and smaller level;
/// or equal p, equal level, and the pluggable tie break.
inline OrderVerdict compare_types(const TypeS& s_prime, const TypeS& s,
                                  const TieBreakHook& hook = {}) {
    if (!s_prime.same_context(s)) throw std::invalid_argument("compare_types: contexts differ");
    const Rat pp = p_of_type(s_prime), ps = p_of_type(s);
    bool fwd = false, rev = false;
    if (pp > ps) {
        fwd = true;
    } else if (ps > pp) {
        rev = true;
    } else if (s_prime.level() != s.level()) {
        (s_prime.level() < s.level() ? fwd : rev) = true;
    } else if (hook) {
        auto [f, r] = hook(s_prime, s);
        fwd = f;
        rev = r;
    }
    if (fwd && rev) return OrderVerdict::both_directions;
    return fwd ? OrderVerdict::in_O : OrderVerdict::not_in_O;
}

}  // namespace wallx
