#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace wallx {

/// Exact rational scalar. All verdict-producing arithmetic in the library
/// uses this type; floating point appears only in the finite-difference
/// spot-checks of the ADHM tests.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "n" (optional sign, arbitrary precision). Wire format:
/// lowest terms, q > 0; integers may omit "/q".
inline Rat parse_rat(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("bad-rational: '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    std::string t(s);
    auto slash = t.find('/');
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    auto valid = [](const std::string& x, bool allow_sign) {
        if (x.empty()) return false;
        size_t i = 0;
        if (allow_sign && (x[0] == '+' || x[0] == '-')) i = 1;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw bad();
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline mpz_class rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline mpz_class rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline long long to_ll(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer out of range");
    return z.get_si();
}

}  // namespace wallx
