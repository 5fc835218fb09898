#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "wallx/invariants.hpp"
#include "wallx/rational.hpp"
#include "wallx/weight.hpp"
#include "wallx/zonotope.hpp"

namespace wallx {

struct Summand {
    TypeS type;
    std::vector<long> v;
};

/// All semiorthogonal summand labels for (d, a, mu): residuals d' <= d,
/// compositions (d_i) of d - d', and integer weights (w_i) whose v-chain
/// sits in (-1-mu-a/2, -mu-a/2) — closed at both ends for the all-mu
/// theorem, strict for the generic-mu one. Output ordered by d' descending,
/// then lexicographically on parts.
inline std::vector<Summand> enumerate_summands(int d, int a, const Rat& mu, bool closed_ends) {
    if (!closed_ends && !is_generic_mu(mu, d))
        throw std::domain_error(
            "non-generic-mu: strict-end enumeration requires 2*mu*l nonintegral for l <= d");
    const Rat lo = -1 - mu - rat(a, 2), hi = -mu - rat(a, 2);

    std::vector<Summand> out;
    for (int d_prime = d; d_prime >= 0; --d_prime) {
        const int e = d - d_prime;
        std::vector<Summand> bucket;
        for (const auto& sizes : detail::compositions(e)) {
            const int k = static_cast<int>(sizes.size());
            std::vector<long> v(static_cast<size_t>(k));
            std::function<void(int)> rec = [&](int i) {
                if (i == k) {
                    std::vector<std::pair<int, long>> vparts;
                    for (int j = 0; j < k; ++j)
                        vparts.emplace_back(sizes[static_cast<size_t>(j)], v[static_cast<size_t>(j)]);
                    std::vector<long> w = transform_v_to_w(vparts, d_prime);
                    std::vector<std::pair<int, long>> parts;
                    for (int j = 0; j < k; ++j)
                        parts.emplace_back(sizes[static_cast<size_t>(j)], w[static_cast<size_t>(j)]);
                    bucket.push_back({TypeS{std::move(parts), d_prime, d, a, mu}, v});
                    return;
                }
                const int di = sizes[static_cast<size_t>(i)];
                // lower end: chain on v_i/d_i, strict against the previous part
                Rat lower = i == 0 ? lo : Rat(v[static_cast<size_t>(i - 1)]) / sizes[static_cast<size_t>(i - 1)];
                bool lower_strict = i > 0 || !closed_ends;
                Rat lb = Rat(di) * lower;
                mpz_class vlo = lower_strict ? rat_floor(lb) + 1 : rat_ceil(lb);
                Rat ub = Rat(di) * hi;
                mpz_class vhi = (i + 1 == k && closed_ends) ? rat_floor(ub) : rat_ceil(ub) - 1;
                for (mpz_class vv = vlo; vv <= vhi; ++vv) {
                    v[static_cast<size_t>(i)] = to_ll(vv);
                    rec(i + 1);
                }
            };
            rec(0);
        }
        std::sort(bucket.begin(), bucket.end(),
                  [](const Summand& x, const Summand& y) { return x.type.parts < y.type.parts; });
        for (auto& s : bucket) out.push_back(std::move(s));
    }
    return out;
}

/// eta_i = (a+1) e_i + 2 e_i (d - e_i), the lambda-weight width of the
/// grade-restriction window for the Kempf-Ness stratum of level e_i.
inline long window_width(int e_i, int d, int a) {
    if (e_i <= 0 || e_i > d) throw std::invalid_argument("window_width needs 0 < e_i <= d");
    return static_cast<long>(a + 1) * e_i + 2L * e_i * (d - e_i);
}

/// Window test for a generator Gamma(chi): the tau_{e_i}^{-1}-weight range,
/// shifted by <lambda_i, delta + (d/2) tau_d> = -(mu + 1/2) e_i, must land in
/// [-eta/2, eta/2) (half-open) or [-eta/2, eta/2] (closed).
inline bool window_contains(const Weight& chi, int e_i, int d, int a, const Rat& mu,
                            bool half_open) {
    if (chi.dim() != d) throw std::invalid_argument("dimension mismatch");
    const Cocharacter lambda = tau_cocharacter_inv(e_i, d);
    auto [lo, hi] = lambda_weight_range(chi, lambda);
    const Rat shift = pair(lambda, delta_weight(mu, d) + tau_weight(d) * rat(d, 2));
    const Rat eta_half = rat(window_width(e_i, d, a), 2);
    if (!(lo + shift >= -eta_half)) return false;
    return half_open ? (hi + shift < eta_half) : (hi + shift <= eta_half);
}

// ---------------------------------------------------------------------------
// Generator sets of the window categories, indexed by the lattice conditions.

/// Dominant integral chi with chi + rho in W(d)_w (generators of M(d)_w).
inline std::vector<Weight> generators_W_slice(int d, long w) {
    return enumerate_dominant_integral(build_W_slice(d, Rat(w)), rho(d));
}

/// Dominant integral chi with chi + rho + mu_eff sigma in W^a(1, d).
inline std::vector<Weight> generators_Wa(int d, int a, const Rat& mu_eff) {
    return enumerate_dominant_integral(build_Wa(d, a), rho(d) + delta_weight(mu_eff, d));
}

/// Dominant integral chi with chi + rho + delta in V^a(1, d) — the
/// generator-indexing weights of the ambient category.
inline std::vector<Weight> generators_Va(int d, int a, const Rat& mu) {
    return enumerate_dominant_integral(build_Va(d, a), rho(d) + delta_weight(mu, d));
}

/// Number of generator tuples indexed by a summand label: the product of the
/// W(d_i)_{w_i} counts times the W^a(1, d') count at delta' = (mu-e) sigma.
inline mpz_class summand_generator_count(const TypeS& s) {
    mpz_class n = 1;
    for (auto& [di, wi] : s.parts) n *= static_cast<long>(generators_W_slice(di, wi).size());
    n *= static_cast<long>(generators_Wa(s.d_prime, s.a, s.mu - s.level()).size());
    return n;
}

}  // namespace wallx
