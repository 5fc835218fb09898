#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "wallx/invariants.hpp"
#include "wallx/weight.hpp"

namespace wallx {

/// One term of the attracting-locus pushforward expansion: the straightened
/// weight (chi - sigma_J)^+ with homological shift |J| - l(J), or a vanished
/// placeholder when chi - sigma_J + rho is non-regular.
struct BwbTerm {
    Weight weight;     // straightened; meaningless when vanished
    int shift = 0;     // |J| - l(J); |J| when vanished (l undefined, kept as 0)
    bool vanished = false;
    std::vector<int> J_multiplicities;  // against the negative multiset entries
    Weight sigma_J;
};

namespace detail {
/// chi must be dominant inside every block of equal lambda-exponents (a
/// weight of the lambda-Levi).
inline bool levi_dominant(const Weight& chi, const Cocharacter& lambda) {
    for (int i = 0; i + 1 < chi.dim(); ++i)
        if (lambda.exps[static_cast<size_t>(i)] == lambda.exps[static_cast<size_t>(i) + 1] &&
            !(chi[i] <= chi[i + 1]))
            return false;
    return true;
}

/// Odometer over sub-multiset multiplicity vectors in lexicographic order.
/// Returns false once exhausted.
inline bool next_multiplicity(std::vector<int>& m, const std::vector<int>& caps) {
    for (size_t i = m.size(); i-- > 0;) {
        if (m[i] < caps[i]) {
            ++m[i];
            for (size_t j = i + 1; j < m.size(); ++j) m[j] = 0;
            return true;
        }
    }
    return false;
}
}  // namespace detail

/// All terms of the expansion of p_{lambda*} q_lambda^* Gamma(chi) over
/// sub-multisets J of the lambda-negative weights of the shape. Vanished
/// terms are recorded and flagged. max_terms caps the number of emitted
/// terms (deterministic lexicographic prefix) as a guard for large shapes.
inline std::vector<BwbTerm> bwb_terms(const Weight& chi, const QuiverShape& shape,
                                      const Cocharacter& lambda,
                                      std::optional<size_t> max_terms = {}) {
    if (chi.dim() != shape.d || lambda.dim() != shape.d)
        throw std::invalid_argument("dimension mismatch");
    if (!detail::levi_dominant(chi, lambda))
        throw std::invalid_argument("chi is not dominant for the lambda-Levi");

    WeightMultiset neg = weight_multiset(shape, PairingSign::negative, lambda);
    std::vector<int> caps;
    caps.reserve(neg.entries.size());
    for (auto& [w, m] : neg.entries) caps.push_back(m);

    std::vector<BwbTerm> out;
    std::vector<int> mult(caps.size(), 0);
    do {
        if (max_terms && out.size() >= *max_terms) break;
        BwbTerm term;
        term.J_multiplicities = mult;
        term.sigma_J = Weight::zero(shape.d);
        int size_J = 0;
        for (size_t i = 0; i < mult.size(); ++i) {
            if (mult[i] == 0) continue;
            size_J += mult[i];
            term.sigma_J = term.sigma_J + neg.entries[i].first * Rat(mult[i]);
        }
        StraightenResult st = weyl_straighten(chi - term.sigma_J);
        term.vanished = st.vanished;
        if (st.vanished) {
            term.shift = size_J;
        } else {
            term.weight = st.weight;
            term.shift = size_J - st.length;
        }
        out.push_back(std::move(term));
    } while (detail::next_multiplicity(mult, caps));
    return out;
}

// ---------------------------------------------------------------------------
// The orthogonality inequality sweep.

enum class OrthoHypothesis { p_strict, equal_p_smaller_level, equal_p_equal_level, not_applicable };

struct OrthoFailure {
    std::vector<int> I_multiplicities;
    Weight straightened;
    Rat lhs, rhs;
};

struct OrthoReport {
    OrthoHypothesis hypothesis = OrthoHypothesis::not_applicable;
    bool applicable = false;
    long checked = 0;           // inequality instances evaluated
    long skipped_vanished = 0;  // I with (chi' - sigma_I)^+ = 0
    bool sampled = false;       // I-universe exceeded the cap, seeded sample used
    std::vector<OrthoFailure> failures;
};

/// Checks <tau_e, (chi' - sigma_I)^+> > <tau_e, chi> for sub-multisets I of
/// the tau_{e'}-negative weights, under the hypotheses (i) p(chi') > p(chi),
/// (ii) equal p and e' < e, (iii) equal p, equal level, I nonempty. The
/// I-universe is exhaustive up to `cap` sub-multisets, after which a seeded
/// deterministic sample of `cap` is drawn and recorded in the report.
inline OrthoReport orthogonality_check(const TypeS& S, const TypeS& S_prime, const Weight& chi,
                                       const Weight& chi_prime, int a, const Rat& mu,
                                       std::uint64_t seed = 0, long cap = 1L << 14) {
    if (!S.same_context(S_prime)) throw std::invalid_argument("type contexts differ");
    if (S.a != a || S.mu != mu)
        throw std::invalid_argument("type context disagrees with the supplied (a, mu)");
    const int d = S.d;
    const int e = S.level(), e_prime = S_prime.level();
    const Rat p = p_of_type(S), p_prime = p_of_type(S_prime);

    OrthoReport rep;
    if (p_prime > p)
        rep.hypothesis = OrthoHypothesis::p_strict;
    else if (p_prime == p && e_prime < e)
        rep.hypothesis = OrthoHypothesis::equal_p_smaller_level;
    else if (p_prime == p && e_prime == e)
        rep.hypothesis = OrthoHypothesis::equal_p_equal_level;
    else
        return rep;  // not claimed orthogonal
    rep.applicable = true;

    QuiverShape shape{d, a, false, 0};
    WeightMultiset neg = weight_multiset(shape, PairingSign::negative, tau_cocharacter(e_prime, d));
    std::vector<int> caps;
    for (auto& [w, m] : neg.entries) caps.push_back(m);

    const Cocharacter tau_e = tau_cocharacter(e, d);
    const Rat rhs = pair(tau_e, chi);
    const bool need_nonempty = rep.hypothesis == OrthoHypothesis::equal_p_equal_level;

    auto check_one = [&](const std::vector<int>& mult) {
        int size_I = 0;
        Weight sigma_I = Weight::zero(d);
        for (size_t i = 0; i < mult.size(); ++i) {
            size_I += mult[i];
            if (mult[i] > 0) sigma_I = sigma_I + neg.entries[i].first * Rat(mult[i]);
        }
        if (size_I == 0 && need_nonempty) return;
        StraightenResult st = weyl_straighten(chi_prime - sigma_I);
        if (st.vanished) {
            ++rep.skipped_vanished;
            return;
        }
        ++rep.checked;
        Rat lhs = pair(tau_e, st.weight);
        if (!(lhs > rhs)) rep.failures.push_back({mult, st.weight, lhs, rhs});
    };

    mpz_class universe = 1;
    for (int c : caps) universe *= (c + 1);
    if (universe <= cap) {
        std::vector<int> mult(caps.size(), 0);
        do {
            check_one(mult);
        } while (detail::next_multiplicity(mult, caps));
    } else {
        rep.sampled = true;
        std::mt19937_64 rng(seed);
        std::set<std::vector<int>> seen;
        while (static_cast<long>(seen.size()) < cap) {
            std::vector<int> mult(caps.size());
            for (size_t i = 0; i < caps.size(); ++i)
                mult[i] = static_cast<int>(rng() % (static_cast<unsigned>(caps[i]) + 1));
            if (seen.insert(mult).second) check_one(mult);
        }
    }
    return rep;
}

}  // namespace wallx
