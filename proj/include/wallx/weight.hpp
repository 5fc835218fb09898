#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wallx/rational.hpp"

namespace wallx {

/// A weight of the maximal torus T(d) in the basis beta_1..beta_d of
/// standard characters; entry i is the coefficient of beta_i. Immutable in
/// spirit: every operation returns a new value.
class Weight {
public:
    Weight() = default;
    explicit Weight(int d) : c_(static_cast<size_t>(d)) {
        if (d < 0) throw std::invalid_argument("negative dimension");
    }
    explicit Weight(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {}

    static Weight zero(int d) { return Weight(d); }

    int dim() const { return static_cast<int>(c_.size()); }
    const Rat& operator[](int i) const { return c_.at(static_cast<size_t>(i)); }
    Rat& operator[](int i) { return c_.at(static_cast<size_t>(i)); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Weight operator+(const Weight& o) const {
        check_dim(o);
        Weight r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[static_cast<size_t>(i)] += o[i];
        return r;
    }
    Weight operator-(const Weight& o) const {
        check_dim(o);
        Weight r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[static_cast<size_t>(i)] -= o[i];
        return r;
    }
    Weight operator-() const {
        Weight r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Weight operator*(const Rat& s) const {
        Weight r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend Weight operator*(const Rat& s, const Weight& w) { return w * s; }

    bool operator==(const Weight& o) const { return c_ == o.c_; }
    bool operator!=(const Weight& o) const { return c_ != o.c_; }
    bool operator<(const Weight& o) const {
        return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
    }

    Rat coeff_sum() const { return std::accumulate(c_.begin(), c_.end(), Rat(0)); }

    bool is_integral() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return is_integer(x); });
    }

    /// Non-decreasing entries; strictly increasing when strict.
    bool is_dominant(bool strict = false) const {
        for (int i = 0; i + 1 < dim(); ++i) {
            if (strict ? !(c_[static_cast<size_t>(i)] < c_[static_cast<size_t>(i) + 1])
                       : !(c_[static_cast<size_t>(i)] <= c_[static_cast<size_t>(i) + 1]))
                return false;
        }
        return true;
    }

    Weight slice(int begin, int len) const {
        if (begin < 0 || len < 0 || begin + len > dim()) throw std::out_of_range("slice");
        return Weight(std::vector<Rat>(c_.begin() + begin, c_.begin() + begin + len));
    }

    static Weight concat(const Weight& a, const Weight& b) {
        std::vector<Rat> v = a.c_;
        v.insert(v.end(), b.c_.begin(), b.c_.end());
        return Weight(std::move(v));
    }

private:
    void check_dim(const Weight& o) const {
        if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
    }
    std::vector<Rat> c_;
};

/// rho(d): entry i (1-based) equals (2i-d-1)/2; half the sum of positive
/// roots, dominant with strictly increasing entries.
inline Weight rho(int d) {
    Weight w(d);
    for (int i = 1; i <= d; ++i) w[i - 1] = rat(2L * i - d - 1, 2);
    return w;
}

/// sigma_d = sum of all beta_i.
inline Weight sigma(int d) {
    Weight w(d);
    for (int i = 0; i < d; ++i) w[i] = 1;
    return w;
}

/// tau_d = sigma_d / d (as a weight).
inline Weight tau_weight(int d) {
    if (d <= 0) throw std::invalid_argument("tau_weight needs d >= 1");
    return sigma(d) * rat(1, d);
}

inline Weight basis_weight(int i, int d) {
    Weight w(d);
    w[i] = 1;
    return w;
}

/// A cocharacter of T(d): t -> (t^{e_1}, ..., t^{e_d}).
struct Cocharacter {
    std::vector<long> exps;

    int dim() const { return static_cast<int>(exps.size()); }

    /// Antidominant iff exponents are non-increasing.
    bool is_antidominant() const {
        for (size_t i = 0; i + 1 < exps.size(); ++i)
            if (exps[i] < exps[i + 1]) return false;
        return true;
    }

    bool operator==(const Cocharacter& o) const { return exps == o.exps; }
};

/// 1_d, the diagonal cocharacter.
inline Cocharacter diag_cocharacter(int d) {
    return Cocharacter{std::vector<long>(static_cast<size_t>(d), 1)};
}

/// tau_e = (t,...,t,1,...,1) with e copies of t.
inline Cocharacter tau_cocharacter(int e, int d) {
    if (e < 0 || e > d) throw std::invalid_argument("tau_cocharacter: e out of range");
    Cocharacter c{std::vector<long>(static_cast<size_t>(d), 0)};
    for (int i = 0; i < e; ++i) c.exps[static_cast<size_t>(i)] = 1;
    return c;
}

/// tau_e^{-1} = (t^{-1},...,t^{-1},1,...,1).
inline Cocharacter tau_cocharacter_inv(int e, int d) {
    Cocharacter c = tau_cocharacter(e, d);
    for (auto& x : c.exps) x = -x;
    return c;
}

/// Antidominant cocharacter (t^k,..,t^k, t^{k-1},.., ..., t,..,t, 1,..,1)
/// attached to a partition (d_1,...,d_k) of e inside T(d).
inline Cocharacter partition_cocharacter(const std::vector<int>& parts, int d) {
    Cocharacter c{std::vector<long>(static_cast<size_t>(d), 0)};
    int k = static_cast<int>(parts.size());
    size_t pos = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < parts[static_cast<size_t>(i)]; ++j) {
            if (pos >= c.exps.size()) throw std::invalid_argument("partition exceeds d");
            c.exps[pos++] = k - i;
        }
    }
    return c;
}

/// Natural pairing <lambda, chi> = sum exps_i * coeffs_i.
inline Rat pair(const Cocharacter& lambda, const Weight& chi) {
    if (lambda.dim() != chi.dim()) throw std::invalid_argument("dimension mismatch");
    Rat s = 0;
    for (int i = 0; i < chi.dim(); ++i) s += Rat(lambda.exps[static_cast<size_t>(i)]) * chi[i];
    return s;
}

struct StraightenResult {
    bool vanished = false;
    Weight weight;  // dominant representative; unspecified when vanished
    int length = 0; // inversion count of the sorting permutation
};

/// Weyl-shifted straightening: chi+rho with a repeated entry vanishes;
/// otherwise sort ascending and subtract rho. The length is the number of
/// inversions of the sorting permutation.
inline StraightenResult weyl_straighten(const Weight& chi) {
    const int d = chi.dim();
    std::vector<Rat> shifted(static_cast<size_t>(d));
    const Weight r = rho(d);
    for (int i = 0; i < d; ++i) shifted[static_cast<size_t>(i)] = chi[i] + r[i];

    int inversions = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (shifted[static_cast<size_t>(i)] == shifted[static_cast<size_t>(j)])
                return {true, Weight(), 0};
            if (shifted[static_cast<size_t>(i)] > shifted[static_cast<size_t>(j)]) ++inversions;
        }
    std::sort(shifted.begin(), shifted.end());
    Weight out(std::move(shifted));
    return {false, out - r, inversions};
}

/// Min/max of <lambda, w(chi)> over the Weyl orbit of a dominant chi, by the
/// rearrangement inequality (no d! enumeration).
inline std::pair<Rat, Rat> lambda_weight_range(const Weight& chi, const Cocharacter& lambda) {
    if (!chi.is_dominant()) throw std::invalid_argument("lambda_weight_range: chi not dominant");
    if (chi.dim() != lambda.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> c = chi.coeffs();
    std::vector<long> e = lambda.exps;
    std::sort(c.begin(), c.end());
    std::sort(e.begin(), e.end());
    Rat hi = 0, lo = 0;
    const int d = chi.dim();
    for (int i = 0; i < d; ++i) {
        hi += Rat(e[static_cast<size_t>(i)]) * c[static_cast<size_t>(i)];
        lo += Rat(e[static_cast<size_t>(i)]) * c[static_cast<size_t>(d - 1 - i)];
    }
    return {lo, hi};
}

/// Shape of the quivers Q^a / Q^af at dimension (1, d): three loops at the
/// vertex 1, a arrows each way between 0 and 1, one framing arrow when
/// framed, and N loops at the vertex 0 (trivial T(d)-weights).
struct QuiverShape {
    int d = 0;
    int a = 0;
    bool framed = false;
    int loops_at_zero = 0;
};

enum class PairingSign { negative, zero, positive, nonnegative, nonpositive, all };

/// Multiset of weights with multiplicities, entries sorted lexicographically.
struct WeightMultiset {
    std::vector<std::pair<Weight, int>> entries;

    int total() const {
        int t = 0;
        for (auto& e : entries) t += e.second;
        return t;
    }
};

/// The sub-multiset of W^a (or W^af when framed) with the requested pairing
/// sign against lambda. Root weights beta_i - beta_j occur for all ordered
/// pairs (i, j) with multiplicity 3 (the i = j entries are zero weights).
inline WeightMultiset weight_multiset(const QuiverShape& shape, PairingSign sign,
                                      const Cocharacter& lambda) {
    const int d = shape.d;
    if (lambda.dim() != d) throw std::invalid_argument("dimension mismatch");

    std::vector<std::pair<Weight, int>> raw;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            raw.emplace_back(basis_weight(i, d) - basis_weight(j, d), 3);
    for (int i = 0; i < d; ++i) {
        int up = shape.a + (shape.framed ? 1 : 0);
        if (up > 0) raw.emplace_back(basis_weight(i, d), up);
        if (shape.a > 0) raw.emplace_back(-basis_weight(i, d), shape.a);
    }
    if (shape.loops_at_zero > 0) raw.emplace_back(Weight::zero(d), shape.loops_at_zero);

    auto keep = [&](const Weight& w) {
        Rat p = pair(lambda, w);
        switch (sign) {
            case PairingSign::negative: return p < 0;
            case PairingSign::zero: return p == 0;
            case PairingSign::positive: return p > 0;
            case PairingSign::nonnegative: return p >= 0;
            case PairingSign::nonpositive: return p <= 0;
            case PairingSign::all: return true;
        }
        return false;
    };

    std::vector<std::pair<Weight, int>> kept;
    for (auto& [w, m] : raw)
        if (keep(w)) kept.emplace_back(w, m);
    std::sort(kept.begin(), kept.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    WeightMultiset out;
    for (auto& [w, m] : kept) {
        if (!out.entries.empty() && out.entries.back().first == w)
            out.entries.back().second += m;
        else
            out.entries.emplace_back(w, m);
    }
    return out;
}

}  // namespace wallx
