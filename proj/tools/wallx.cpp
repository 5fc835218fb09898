// wallx: exact wall-crossing combinatorics for DT/PT quivers.
// Subcommands: polytope, decompose, sod, bwb, adhm check, verify.
// All output is JSON-lines on stdout; exit 0 on success, 1 on verification
// failure, 2 on usage or input errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wallx/json_io.hpp"
#include "wallx/verify.hpp"

using namespace wallx;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string golden_dir;
};

int emit(const std::string& name, const std::string& payload, const GlobalOpts& g) {
    if (!g.golden_dir.empty()) {
        std::ifstream in(g.golden_dir + "/" + name + ".jsonl");
        if (!in.good()) {
            std::cout << json{{"error", {{"code", "golden-missing"},
                                         {"message", g.golden_dir + "/" + name + ".jsonl"}}}}
                             .dump()
                      << "\n";
            return 1;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        if (buf.str() != payload) {
            std::cout << payload;
            std::cout << json{{"error", {{"code", "golden-mismatch"}, {"message", name}}}}.dump()
                      << "\n";
            return 1;
        }
    }
    std::cout << payload;
    return 0;
}

Zonotope build_kind(const std::string& kind, int d, int a, long w) {
    if (kind == "W") return build_W(d);
    if (kind == "Wslice") return build_W_slice(d, Rat(w));
    if (kind == "V") return build_V(d);
    if (kind == "Wa") return build_Wa(d, a);
    if (kind == "Va") return build_Va(d, a);
    throw std::invalid_argument("bad-kind: '" + kind + "'");
}

int run_polytope(const std::string& kind, int d, int a, long w, const std::string& contains,
                 bool enumerate, const std::string& shift, bool describe, const GlobalOpts& g) {
    Zonotope P = build_kind(kind, d, a, w);
    std::string out;
    if (describe) out += to_json(P).dump() + "\n";
    if (!contains.empty()) {
        Weight x = parse_weight_list(contains);
        auto cert = P.contains(x);
        json line{{"kind", kind},
                  {"d", d},
                  {"a", a},
                  {"point", to_json(x)},
                  {"member", cert.has_value()}};
        if (kind == "Wslice") line["w"] = w;
        if (cert) line["certificate"] = to_json(*cert);
        out += line.dump() + "\n";
    }
    if (enumerate) {
        Weight sh = shift.empty() ? Weight::zero(d) : parse_weight_list(shift);
        auto gens = enumerate_dominant_integral(P, sh);
        for (const auto& chi : gens) out += json{{"chi", to_json(chi)}}.dump() + "\n";
        out += json{{"kind", kind}, {"count", gens.size()}}.dump() + "\n";
    }
    if (out.empty())
        throw std::invalid_argument(
            "polytope: nothing to do (use --contains, --enumerate or --describe)");
    return emit("polytope", out, g);
}

int run_decompose(int d, int a, const std::string& mu_s, const std::string& chi_s,
                  const GlobalOpts& g) {
    Rat mu = parse_rat(mu_s);
    Weight chi = parse_weight_list(chi_s);
    if (chi.dim() != d) throw std::invalid_argument("dimension-mismatch: chi has wrong length");
    if (!chi.is_dominant() || !chi.is_integral())
        throw std::invalid_argument("chi must be dominant and integral");
    auto pres = p_of(chi, a, mu);
    auto tres = type_of_weight(chi, a, mu);
    json comps = json::array();
    for (const auto& c : tres.components) comps.push_back(to_json(c));
    json line{{"chi", to_json(chi)}, {"d", d},
              {"a", a},              {"mu", rat_str(mu)},
              {"e", pres.e},         {"p", rat_str(pres.p)},
              {"witness", to_json(pres.witness)}};
    line["type"] = to_json(tres.type);
    line["components"] = comps;
    return emit("decompose", line.dump() + "\n", g);
}

int run_sod(int d, int a, const std::string& mu_s, bool closed, const GlobalOpts& g) {
    Rat mu = parse_rat(mu_s);
    auto summands = enumerate_summands(d, a, mu, closed);
    verify_detail::CountCache cache;
    std::string out;
    mpz_class total = 0;
    for (const auto& s : summands) {
        mpz_class n = cache.product(s.type);
        total += n;
        json line = to_json(s.type);
        line["generators"] = n.get_str();
        out += line.dump() + "\n";
    }
    out += json{{"summands", summands.size()}, {"generator_total", total.get_str()}}.dump() + "\n";
    return emit("sod", out, g);
}

int run_bwb(int d, int a, bool framed, int loops, const std::string& lambda_s,
            const std::string& chi_s, std::optional<size_t> max_terms, const GlobalOpts& g) {
    Cocharacter lambda = parse_cocharacter_list(lambda_s);
    Weight chi = parse_weight_list(chi_s);
    if (lambda.dim() != d || chi.dim() != d)
        throw std::invalid_argument("dimension-mismatch: lambda/chi length");
    QuiverShape shape{d, a, framed, loops};
    auto terms = bwb_terms(chi, shape, lambda, max_terms);
    std::string out;
    long vanished = 0;
    for (const auto& t : terms) {
        if (t.vanished) ++vanished;
        out += to_json(t).dump() + "\n";
    }
    out += json{{"terms", terms.size()}, {"vanished", vanished}}.dump() + "\n";
    return emit("bwb", out, g);
}

int run_adhm_check(const std::string& file, int m, const GlobalOpts& g) {
    std::ifstream in(file);
    if (!in.good()) throw std::invalid_argument("cannot read '" + file + "'");
    json j = json::parse(in);
    AdhmPoint p = adhm_from_json(j, m);
    json line;
    line["d"] = p.d;
    line["m"] = p.m;
    if (p.a == 1) {
        line["potential"] = rat_str(potential(p));
        auto r = critical_residuals(p);
        auto block = [](const Mat& M) {
            return json{{"max_abs", rat_str(M.max_abs())}, {"zero", M.is_zero()}};
        };
        auto vec_block = [](const Vec& v) {
            Rat mx = 0;
            for (const auto& x : v)
                if (abs(x) > mx) mx = abs(x);
            return json{{"max_abs", rat_str(mx)}, {"zero", vec_is_zero(v)}};
        };
        Rat am = 0;
        bool az = true;
        for (const auto& [ij, c] : r.dalpha) {
            if (abs(c) > am) am = abs(c);
            if (c != 0) az = false;
        }
        line["residuals"] = json{{"dA", block(r.dA)},
                                 {"dB", block(r.dB)},
                                 {"dC", block(r.dC)},
                                 {"du1", vec_block(r.du1)},
                                 {"du2", vec_block(r.du2)},
                                 {"dv", vec_block(r.dv)},
                                 {"dalpha", json{{"max_abs", rat_str(am)}, {"zero", az}}}};
        line["critical"] = r.all_zero();
    }
    line["dt_semistable"] = is_semistable(p, Side::DT).semistable;
    line["pt_semistable"] = is_semistable(p, Side::PT).semistable;
    line["reduced"] = is_reduced(p.alpha, p.m);
    return emit("adhm", line.dump() + "\n", g);
}

int run_verify(int d, int a, const std::string& mu_s, const GlobalOpts& g) {
    VerifyOptions opt;
    opt.d = d;
    opt.a = a;
    opt.mu = parse_rat(mu_s);
    opt.seed = g.seed;
    opt.jobs = g.jobs;
    auto suites = run_verify_suites(opt);
    std::string out = verify_report(opt, suites);
    long failed = 0;
    for (const auto& s : suites) failed += s.failed;
    int rc = emit("verify", out, g);
    return rc != 0 ? rc : (failed > 0 ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wall-crossing combinatorics for DT/PT quivers"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for sampled sweeps");
    app.add_option("--jobs", g.jobs, "parallelism cap (output is order-independent)");
    app.add_option("--golden", g.golden_dir, "directory of frozen fixtures to diff against");

    auto* poly = app.add_subcommand("polytope", "membership and enumeration");
    std::string kind = "Va", contains_s, shift_s;
    int pd = 1, pa = 0;
    long pw = 0;
    bool enumerate = false;
    poly->add_option("--kind", kind, "W | Wslice | V | Wa | Va")->required();
    poly->add_option("--d", pd)->required();
    poly->add_option("--a", pa);
    poly->add_option("--w", pw, "slice index for Wslice");
    poly->add_option("--contains", contains_s, "point to test, comma-separated rationals");
    poly->add_flag("--enumerate", enumerate, "list dominant integral weights");
    poly->add_option("--shift", shift_s, "shift for --enumerate (e.g. rho+delta)");
    bool describe = false;
    poly->add_flag("--describe", describe, "print the polytope definition as JSON");

    auto* dec = app.add_subcommand("decompose", "level, p-invariant and summand type of a weight");
    int dd = 1, da = 1;
    std::string dmu, dchi;
    dec->add_option("--d", dd)->required();
    dec->add_option("--a", da)->required();
    dec->add_option("--mu", dmu)->required();
    dec->add_option("--chi", dchi)->required();

    auto* sod = app.add_subcommand("sod", "semiorthogonal summand labels and generator counts");
    int sd = 1, sa = 1;
    std::string smu;
    bool closed = false;
    sod->add_option("--d", sd)->required();
    sod->add_option("--a", sa)->required();
    sod->add_option("--mu", smu)->required();
    sod->add_flag("--closed", closed, "closed-end chain (valid for every mu)");

    auto* bwb = app.add_subcommand("bwb", "attracting-locus pushforward term expansion");
    int bd = 1, ba = 0, bloops = 0;
    bool bframed = false;
    std::string blambda, bchi;
    std::size_t bmax = 0;
    bwb->add_option("--d", bd)->required();
    bwb->add_option("--a", ba)->required();
    bwb->add_flag("--framed", bframed);
    bwb->add_option("--loops", bloops, "loops at the framing vertex");
    bwb->add_option("--lambda", blambda, "cocharacter exponents")->required();
    bwb->add_option("--chi", bchi)->required();
    bwb->add_option("--max-terms", bmax, "cap the emitted terms");

    auto* adhm = app.add_subcommand("adhm", "extended ADHM layer");
    auto* check = adhm->add_subcommand("check", "evaluate a point");
    std::string afile;
    int am = 1;
    check->add_option("--file", afile)->required();
    check->add_option("--m", am)->required();

    auto* ver = app.add_subcommand("verify", "run the property suites");
    int vd = 2, va = 1;
    std::string vmu = "-9/14";
    ver->add_option("--d", vd)->required();
    ver->add_option("--a", va)->required();
    ver->add_option("--mu", vmu)->required();

    try {
        app.parse(argc, argv);
        if (poly->parsed())
            return run_polytope(kind, pd, pa, pw, contains_s, enumerate, shift_s, describe, g);
        if (dec->parsed()) return run_decompose(dd, da, dmu, dchi, g);
        if (sod->parsed()) return run_sod(sd, sa, smu, closed, g);
        if (bwb->parsed())
            return run_bwb(bd, ba, bframed, bloops, blambda, bchi,
                           bmax ? std::optional<size_t>(bmax) : std::nullopt, g);
        if (adhm->parsed()) {
            if (!check->parsed()) throw std::invalid_argument("adhm needs the 'check' subcommand");
            return run_adhm_check(afile, am, g);
        }
        if (ver->parsed()) return run_verify(vd, va, vmu, g);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::string what = e.what();
        std::string code = what.substr(0, what.find(':'));
        if (code != "non-generic-mu") code = "not-in-polytope";
        std::cout << json{{"error", {{"code", code}, {"message", what}}}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        std::string code = what.substr(0, what.find(':'));
        if (code != "bad-rational" && code != "bad-kind" && code != "bad-cocharacter" &&
            code != "dimension-mismatch")
            code = "bad-input";
        std::cout << json{{"error", {{"code", code}, {"message", what}}}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
}
