// Acceptance suite: every criterion prints exactly one PASS/FAIL line with
// its counts and elapsed time; the process exits nonzero if any criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wallx/adhm.hpp"
#include "wallx/verify.hpp"

using namespace wallx;

namespace {

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail, double secs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << "criterion-" << id << " " << (pass ? "PASS" : "FAIL") << " " << name << ": "
              << detail << " [" << buf << "]" << std::endl;
    if (!pass) ++g_failures;
}

struct Combo {
    int d, a;
    Rat mu;
};

std::vector<Combo> sweep_combos(int dmax, int amax, bool filter_level_theorem) {
    std::vector<Combo> out;
    for (int d = 0; d <= dmax; ++d)
        for (int a = 0; a <= amax; ++a)
            for (const Rat& mu : {Rat(rat(-a, 2) - rat(1, 7)), rat(-1, 3)}) {
                // the spec's mu list is annotated generic; at a = 0 the level
                // theorem needs that genericity, so out-of-hypothesis combos
                // are skipped (see the decisions ledger)
                if (filter_level_theorem && a == 0 && !is_generic_mu(mu, d)) continue;
                out.push_back({d, a, mu});
            }
    return out;
}

void criterion_uniqueness() {
    Clock clk;
    long gens_total = 0, exceptions = 0;
    int combos = 0, skipped = 0;
    for (int d = 0; d <= 4; ++d)
        for (int a = 0; a <= 2; ++a)
            for (const Rat& mu : {Rat(rat(-a, 2) - rat(1, 7)), rat(-1, 3)}) {
                if (a == 0 && !is_generic_mu(mu, d)) {
                    ++skipped;
                    continue;
                }
                ++combos;
                Weight shift = rho(d) + delta_weight(mu, d);
                for (const Weight& chi : generators_Va(d, a, mu)) {
                    ++gens_total;
                    if (passing_levels(chi + shift, a).size() != 1) ++exceptions;
                }
            }
    std::ostringstream os;
    os << gens_total << " generators across " << combos << " combos, " << exceptions
       << " exceptions (" << skipped << " out-of-hypothesis combos skipped)";
    report(1, "uniqueness-of-e", exceptions == 0, os.str(), clk.secs());
}

void criterion_bijection() {
    Clock clk;
    long mismatches = 0, combos = 0, checked = 0;
    for (const Combo& c : sweep_combos(4, 2, true)) {
        ++combos;
        VerifyOptions opt{c.d, c.a, c.mu, 0, 1};
        SuiteResult r = suite_bijection(opt);
        checked += r.checked;
        mismatches += r.failed;
    }
    std::ostringstream os;
    os << checked << " summand fibers + totals across " << combos << " combos, " << mismatches
       << " mismatches";
    report(2, "bijection-count-identity", mismatches == 0, os.str(), clk.secs());
}

void criterion_inequalities() {
    Clock clk;
    long checked = 0, violations = 0, combos = 0;
    for (const Combo& c : sweep_combos(4, 2, true)) {
        ++combos;
        VerifyOptions opt{c.d, c.a, c.mu, 0, 1};
        SuiteResult r = suite_inequalities(opt);
        checked += r.checked;
        violations += r.failed;
    }
    std::ostringstream os;
    os << checked << " inequality instances across " << combos << " combos, " << violations
       << " violations";
    report(3, "p-invariant-inequalities", violations == 0, os.str(), clk.secs());
}

void criterion_orthogonality() {
    Clock clk;
    long checked = 0, counterexamples = 0, combos = 0;
    for (const Combo& c : sweep_combos(3, 1, true)) {
        ++combos;
        auto gens = generators_Va(c.d, c.a, c.mu);
        std::vector<TypeS> types;
        types.reserve(gens.size());
        for (const auto& chi : gens) types.push_back(type_of_weight(chi, c.a, c.mu).type);
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = 0; j < gens.size(); ++j) {
                auto rep = orthogonality_check(types[i], types[j], gens[i], gens[j], c.a, c.mu);
                if (!rep.applicable) continue;
                checked += rep.checked;
                counterexamples += static_cast<long>(rep.failures.size());
            }
    }
    std::ostringstream os;
    os << checked << " straightened-pairing inequalities across " << combos << " combos, "
       << counterexamples << " counterexamples";
    report(4, "orthogonality-sweep", counterexamples == 0, os.str(), clk.secs());
}

void criterion_transforms() {
    Clock clk;
    std::mt19937_64 rng(0);
    long failures = 0;
    const int cases = 10000;
    for (int it = 0; it < cases; ++it) {
        int d_prime = static_cast<int>(rng() % 6);
        int e = static_cast<int>(rng() % 6);
        auto comps = detail::compositions(e);
        const auto& sizes = comps[rng() % comps.size()];
        std::vector<std::pair<int, long>> parts;
        long wsum = 0;
        for (int di : sizes) {
            long wi = static_cast<long>(rng() % 81) - 40;
            parts.emplace_back(di, wi);
            wsum += wi;
        }
        auto v = transform_w_to_v(parts, d_prime);
        std::vector<std::pair<int, long>> vparts;
        long vsum = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            vparts.emplace_back(parts[i].first, v[i]);
            vsum += v[i];
        }
        auto back = transform_v_to_w(vparts, d_prime);
        bool ok = vsum - wsum == static_cast<long>(e) * d_prime;
        for (size_t i = 0; i < parts.size(); ++i)
            if (back[i] != parts[i].second) ok = false;
        // both closed forms of p(S) must agree (p_of_type throws otherwise)
        Rat mu = rat(static_cast<long>(rng() % 29) - 14, 1 + static_cast<long>(rng() % 14));
        TypeS t{parts, d_prime, d_prime + e, static_cast<int>(rng() % 3), mu};
        try {
            (void)p_of_type(t);
        } catch (const std::logic_error&) {
            ok = false;
        }
        if (!ok) ++failures;
    }
    std::ostringstream os;
    os << cases << " randomized round-trips, sum identities and p(S) double-computations, "
       << failures << " failures";
    report(5, "transform-identities", failures == 0, os.str(), clk.secs());
}

void criterion_windows() {
    Clock clk;
    long checked = 0, violations = 0, combos = 0;
    for (int d = 1; d <= 3; ++d)
        for (int a = 0; a <= 2; ++a)
            for (const Rat& mu : {Rat(rat(-a, 2) - rat(1, 7)), rat(-1, 3)}) {
                ++combos;
                const bool generic = is_generic_mu(mu, d);
                for (const Weight& chi : generators_Va(d, a, mu))
                    for (int e = 1; e <= d; ++e) {
                        ++checked;
                        if (!window_contains(chi, e, d, a, mu, /*half_open=*/false)) ++violations;
                        if (generic) {
                            ++checked;
                            if (window_contains(chi, e, d, a, mu, true) !=
                                window_contains(chi, e, d, a, mu, false))
                                ++violations;
                        }
                    }
            }
    std::ostringstream os;
    os << checked << " window checks across " << combos << " combos, " << violations
       << " violations";
    report(6, "window-consistency", violations == 0, os.str(), clk.secs());
}

void criterion_figure2() {
    Clock clk;
    long checked = 0, wrong = 0;
    for (int a = 1; a <= 2; ++a) {
        VerifyOptions opt{2, a, rat(-9, 14), 0, 1};
        SuiteResult r = suite_figure2(opt);
        checked += r.checked;
        wrong += r.failed;
    }
    std::ostringstream os;
    os << checked << " labeled-vertex membership fixtures, " << wrong << " wrong";
    report(7, "figure-2-fixtures", wrong == 0, os.str(), clk.secs());
}

void criterion_adhm() {
    Clock clk;
    std::mt19937_64 rng(2026);
    long fd_checks = 0, fd_failures = 0;
    const double h = 1e-6, tol = 1e-6;

    auto rnd_small = [&]() {
        static const long dens[] = {1, 1, 2, 3};
        return rat(static_cast<long>(rng() % 7) - 3, dens[rng() % 4]);
    };
    auto rnd_point = [&](int d, int m) {
        AdhmPoint p;
        p.d = d;
        p.a = 1;
        p.m = m;
        auto vec = [&]() {
            Vec v(static_cast<size_t>(d));
            for (auto& x : v) x = rnd_small();
            return v;
        };
        auto mat = [&]() {
            Mat M(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) M.at(i, j) = rnd_small();
            return M;
        };
        p.u = {vec(), vec()};
        p.v = {vec()};
        p.A = mat();
        p.B = mat();
        p.C = mat();
        for (const auto& ij : index_set_Im(m)) p.alpha[ij] = rnd_small();
        return p;
    };
    auto close = [&](double fd, double sym) {
        return std::fabs(fd - sym) <= tol * std::max(1.0, std::fabs(sym));
    };

    long nu_mismatch = 0;
    for (int pt = 0; pt < 20; ++pt) {
        int d = 1 + static_cast<int>(rng() % 3);
        int m = 1 + static_cast<int>(rng() % 2);
        AdhmPoint p = rnd_point(d, m);
        auto r = critical_residuals(p);
        if (!(r.dC == Mat::outer(p.u[0], p.v[0]) + commutator(p.A, p.B))) ++nu_mismatch;
        AdhmPointD pd = AdhmPointD::from_exact(p);
        auto fd_at = [&](double* slot) {
            double orig = *slot;
            *slot = orig + h;
            double up = potential_double(pd);
            *slot = orig - h;
            double dn = potential_double(pd);
            *slot = orig;
            return (up - dn) / (2 * h);
        };
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                ++fd_checks;
                if (!close(fd_at(&pd.A[i][j]), r.dA.at(j, i).get_d())) ++fd_failures;
                ++fd_checks;
                if (!close(fd_at(&pd.B[i][j]), r.dB.at(j, i).get_d())) ++fd_failures;
                ++fd_checks;
                if (!close(fd_at(&pd.C[i][j]), r.dC.at(j, i).get_d())) ++fd_failures;
            }
        for (int i = 0; i < d; ++i) {
            ++fd_checks;
            if (!close(fd_at(&pd.u[0][i]), r.du1[static_cast<size_t>(i)].get_d())) ++fd_failures;
            ++fd_checks;
            if (!close(fd_at(&pd.u[1][i]), r.du2[static_cast<size_t>(i)].get_d())) ++fd_failures;
            ++fd_checks;
            if (!close(fd_at(&pd.v[i]), r.dv[static_cast<size_t>(i)].get_d())) ++fd_failures;
        }
        for (const auto& ij : index_set_Im(m)) {
            ++fd_checks;
            if (!close(fd_at(&pd.alpha[ij]), r.dalpha.at(ij).get_d())) ++fd_failures;
        }
    }

    // d=1 stability criterion
    long stab_wrong = 0;
    for (long a1 = -2; a1 <= 2; ++a1)
        for (long a2 = -2; a2 <= 2; ++a2) {
            AdhmPoint p;
            p.d = 1;
            p.a = 1;
            p.m = 1;
            p.u = {{Rat(a1)}, {Rat(a2)}};
            p.v = {{rnd_small()}};
            p.A = Mat(1, 1);
            p.B = Mat(1, 1);
            p.C = Mat(1, 1);
            p.A.at(0, 0) = rnd_small();
            if (is_semistable(p, Side::DT).semistable != (a1 != 0 || a2 != 0)) ++stab_wrong;
        }

    // reducedness vs the slow gcd oracle: 200 random alpha per m <= 3
    long red_checked = 0, red_wrong = 0;
    for (int m = 1; m <= 3; ++m)
        for (int it = 0; it < 200; ++it) {
            AlphaMap a;
            for (const auto& ij : index_set_Im(m))
                if (rng() % 3 != 0) a[ij] = rnd_small();
            if (rng() % 4 == 0 && m >= 2) {
                Poly2 gpoly = Poly2::constant(Rat(1));
                gpoly.add(1, 0, rnd_small());
                gpoly.add(0, 1, rnd_small());
                Poly2 g2 = gpoly * gpoly;
                a.clear();
                for (const auto& [ij, c] : g2.coeffs())
                    if (ij.first + ij.second >= 1) a[ij] = c;
            }
            ++red_checked;
            if (is_reduced(a, m) != poly2::squarefree_slow(f_alpha_poly(a))) ++red_wrong;
        }

    bool pass = fd_failures == 0 && nu_mismatch == 0 && stab_wrong == 0 && red_wrong == 0;
    std::ostringstream os;
    os << fd_checks << " finite-difference entries (rel tol 1e-6) with " << fd_failures
       << " failures, dC==u1v+[A,B] mismatches " << nu_mismatch << ", d=1 stability errors "
       << stab_wrong << ", reducedness oracle disagreements " << red_wrong << "/" << red_checked;
    report(8, "adhm-layer", pass, os.str(), clk.secs());
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
    std::string cmd = std::string(WALLX_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

void criterion_determinism() {
    Clock clk;
    int rc1 = 0, rc2 = 0, rc3 = 0;
    std::string a = run_cli_capture("verify --d 2 --a 1 --mu -9/14 --jobs 1 --seed 0", rc1);
    std::string b = run_cli_capture("verify --d 2 --a 1 --mu -9/14 --jobs 4 --seed 0", rc2);
    std::string c = run_cli_capture("verify --d 2 --a 1 --mu -9/14 --jobs 1 --seed 0", rc3);
    bool pass = rc1 == 0 && rc2 == 0 && rc3 == 0 && a == b && a == c && !a.empty();
    // library-level double check across jobs
    VerifyOptions o1{3, 1, rat(-9, 14), 0, 1}, o4{3, 1, rat(-9, 14), 0, 4};
    if (verify_report(o1, run_verify_suites(o1)) != verify_report(o4, run_verify_suites(o4)))
        pass = false;
    std::ostringstream os;
    os << "verify output byte-identical across reruns and --jobs {1,4} (" << a.size() << " bytes)";
    report(9, "determinism", pass, os.str(), clk.secs());
}

}  // namespace

int main() {
    criterion_uniqueness();
    criterion_bijection();
    criterion_inequalities();
    criterion_orthogonality();
    criterion_transforms();
    criterion_windows();
    criterion_figure2();
    criterion_adhm();
    criterion_determinism();
    if (g_failures > 0) {
        std::cout << g_failures << " criteria FAILED" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
