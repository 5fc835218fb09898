#pragma once

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "wallx/adhm.hpp"
#include "wallx/bwb.hpp"
#include "wallx/invariants.hpp"
#include "wallx/sod.hpp"
#include "wallx/weight.hpp"
#include "wallx/zonotope.hpp"

namespace wallx {

using json = nlohmann::json;

inline json to_json(const Weight& w) {
    json arr = json::array();
    for (int i = 0; i < w.dim(); ++i) arr.push_back(rat_str(w[i]));
    return arr;
}

inline json to_json(const Cocharacter& c) {
    json arr = json::array();
    for (long e : c.exps) arr.push_back(e);
    return arr;
}

inline Weight weight_from_json(const json& arr) {
    std::vector<Rat> c;
    for (const auto& x : arr) {
        if (x.is_number_integer())
            c.emplace_back(x.get<long>());
        else
            c.push_back(parse_rat(x.get<std::string>()));
    }
    return Weight(std::move(c));
}

/// Comma-separated rationals, e.g. "-1,2" or "1/2,-3/4".
inline Weight parse_weight_list(const std::string& s) {
    std::vector<Rat> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_rat(item));
    return Weight(std::move(c));
}

inline Cocharacter parse_cocharacter_list(const std::string& s) {
    Cocharacter c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rat r = parse_rat(item);
        if (!is_integer(r)) throw std::invalid_argument("bad-cocharacter: '" + item + "'");
        c.exps.push_back(static_cast<long>(to_ll(r.get_num())));
    }
    return c;
}

inline json to_json(const Zonotope& z) {
    json segs = json::array();
    for (const auto& s : z.segments)
        segs.push_back({{"direction", to_json(s.direction)},
                        {"lo", rat_str(s.lo)},
                        {"hi", rat_str(s.hi)},
                        {"lo_strict", s.lo_strict},
                        {"hi_strict", s.hi_strict}});
    json lines = json::array();
    for (const auto& l : z.lines) lines.push_back(to_json(l));
    return {{"translation", to_json(z.translation)}, {"segments", segs}, {"lines", lines}};
}

inline json to_json(const Zonotope::Certificate& c) {
    json segs = json::array(), lines = json::array();
    for (const auto& t : c.seg_coeffs) segs.push_back(rat_str(t));
    for (const auto& s : c.line_coeffs) lines.push_back(rat_str(s));
    return {{"segments", segs}, {"lines", lines}};
}

inline json to_json(const DecompositionWitness& w) {
    json roots = json::array();
    for (const auto& [ij, c] : w.c_roots)
        roots.push_back(json::array({ij.first, ij.second, rat_str(c)}));
    json diag = json::array();
    for (const auto& c : w.c_diag) diag.push_back(rat_str(c));
    return {{"e", w.e}, {"c_roots", roots}, {"c_diag", diag}};
}

inline json to_json(const TypeS& t) {
    json parts = json::array();
    for (const auto& [di, wi] : t.parts) parts.push_back(json::array({di, wi}));
    json v = json::array();
    for (long x : t.v()) v.push_back(x);
    return {{"d_prime", t.d_prime}, {"parts", parts}, {"v", v}};
}

inline json to_json(const BwbTerm& t) {
    json j{{"J", t.J_multiplicities},
           {"sigma_J", to_json(t.sigma_J)},
           {"vanished", t.vanished},
           {"shift", t.shift}};
    if (!t.vanished) j["weight"] = to_json(t.weight);
    return j;
}

inline Mat mat_from_json(const json& rows, int d) {
    if (static_cast<int>(rows.size()) != d) throw std::invalid_argument("matrix row count mismatch");
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != d)
            throw std::invalid_argument("matrix column count mismatch");
        for (int j = 0; j < d; ++j) {
            const auto& x = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            m.at(i, j) = x.is_number_integer() ? Rat(x.get<long>()) : parse_rat(x.get<std::string>());
        }
    }
    return m;
}

/// AdhmPoint wire format: d, m, optional a (default 1), u/v as arrays of
/// rational-string vectors, A/B/C row-major, alpha as [i, j, "p/q"] triples.
inline AdhmPoint adhm_from_json(const json& j, int m) {
    AdhmPoint p;
    p.d = j.at("d").get<int>();
    p.a = j.value("a", 1);
    p.m = m;
    for (const auto& row : j.at("u")) {
        Weight w = weight_from_json(row);
        p.u.emplace_back(w.coeffs());
    }
    for (const auto& row : j.at("v")) {
        Weight w = weight_from_json(row);
        p.v.emplace_back(w.coeffs());
    }
    p.A = mat_from_json(j.at("A"), p.d);
    p.B = mat_from_json(j.at("B"), p.d);
    p.C = mat_from_json(j.at("C"), p.d);
    if (j.contains("alpha"))
        for (const auto& triple : j.at("alpha")) {
            int i = triple.at(0).get<int>(), k = triple.at(1).get<int>();
            const auto& x = triple.at(2);
            p.alpha[{i, k}] =
                x.is_number_integer() ? Rat(x.get<long>()) : parse_rat(x.get<std::string>());
        }
    p.validate();
    return p;
}

}  // namespace wallx
