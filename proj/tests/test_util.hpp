#pragma once

#include <random>
#include <vector>

#include "wallx/rational.hpp"
#include "wallx/weight.hpp"

namespace wtest {

using wallx::Rat;
using wallx::Weight;

inline Weight w(std::vector<long> v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return Weight(std::move(c));
}

inline Weight wr(std::vector<Rat> v) { return Weight(std::move(v)); }

inline Rat rnd_rat(std::mt19937_64& rng, long num_range = 40) {
    static const long dens[] = {1, 1, 2, 2, 3, 4, 7, 14};
    std::uniform_int_distribution<long> dn(-num_range, num_range);
    std::uniform_int_distribution<size_t> dd(0, std::size(dens) - 1);
    return wallx::rat(dn(rng), dens[dd(rng)]);
}

inline Weight rnd_weight(std::mt19937_64& rng, int d, long num_range = 40) {
    std::vector<Rat> c(static_cast<size_t>(d));
    for (auto& x : c) x = rnd_rat(rng, num_range);
    return Weight(std::move(c));
}

inline Weight rnd_integral_dominant(std::mt19937_64& rng, int d, long range = 6) {
    std::uniform_int_distribution<long> dn(-range, range);
    std::vector<long> v(static_cast<size_t>(d));
    for (auto& x : v) x = dn(rng);
    std::sort(v.begin(), v.end());
    return w(v);
}

// All permutations of {0..d-1}, for brute-force Weyl-orbit oracles.
inline std::vector<std::vector<int>> all_perms(int d) {
    std::vector<int> p(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline int perm_inversions(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv;
}

}  // namespace wtest
