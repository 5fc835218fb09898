#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wallx/rational.hpp"

namespace wallx {

/// maximize obj . y  subject to  A y = b,  0 <= y_j <= upper[j]
/// (upper[j] empty means unbounded above).
struct BoundedLp {
    int nvars = 0;
    std::vector<std::vector<Rat>> A;        // m rows, each of length nvars
    std::vector<Rat> b;
    std::vector<std::optional<Rat>> upper;  // length nvars
    std::vector<Rat> obj;                   // length nvars

    int add_var(std::optional<Rat> up, Rat cost = Rat(0)) {
        upper.push_back(std::move(up));
        obj.push_back(std::move(cost));
        for (auto& row : A) row.emplace_back(0);
        return nvars++;
    }
    void add_row(std::vector<Rat> coeffs, Rat rhs) {
        coeffs.resize(static_cast<size_t>(nvars));
        A.push_back(std::move(coeffs));
        b.push_back(std::move(rhs));
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rat objective;
    std::vector<Rat> x;
};

/// Exact two-phase simplex with implicit variable bounds (bound flips) and
/// Bland's rule. Tableau stays at m rows regardless of how many variables
/// carry upper bounds.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const BoundedLp& lp) : lp_(lp) {}

    LpResult solve() {
        init();
        // Phase 1: maximize -sum(artificials).
        std::vector<Rat> c1(static_cast<size_t>(ncols_), Rat(0));
        for (int j = nstruct_; j < ncols_; ++j) c1[static_cast<size_t>(j)] = -1;
        load_objective(c1);
        run(/*allow_artificial=*/true);
        if (zval_ < 0) return {LpStatus::infeasible, Rat(0), {}};
        drive_out_artificials();

        std::vector<Rat> c2(static_cast<size_t>(ncols_), Rat(0));
        for (int j = 0; j < nstruct_; ++j) c2[static_cast<size_t>(j)] = lp_.obj[static_cast<size_t>(j)];
        load_objective(c2);
        bool bounded = run(/*allow_artificial=*/false);
        if (!bounded) return {LpStatus::unbounded, Rat(0), {}};

        LpResult res;
        res.status = LpStatus::optimal;
        res.objective = zval_;
        res.x.assign(static_cast<size_t>(nstruct_), Rat(0));
        for (int j = 0; j < nstruct_; ++j)
            if (!is_basic_[static_cast<size_t>(j)] && at_upper_[static_cast<size_t>(j)])
                res.x[static_cast<size_t>(j)] = *upper_[static_cast<size_t>(j)];
        for (size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < nstruct_) res.x[static_cast<size_t>(basis_[i])] = beta_[i];
        return res;
    }

private:
    const BoundedLp& lp_;
    int nstruct_ = 0, ncols_ = 0;
    std::vector<std::vector<Rat>> T_;  // m x ncols, current B^{-1} A
    std::vector<Rat> beta_;            // values of basic variables
    std::vector<int> basis_;
    std::vector<bool> at_upper_, is_basic_;
    std::vector<std::optional<Rat>> upper_;
    std::vector<Rat> cost_, zrow_;     // zrow_[j] = reduced cost of column j
    Rat zval_;

    void init() {
        nstruct_ = lp_.nvars;
        const int m = static_cast<int>(lp_.A.size());
        ncols_ = nstruct_ + m;
        T_.assign(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(ncols_), Rat(0)));
        beta_.resize(static_cast<size_t>(m));
        basis_.resize(static_cast<size_t>(m));
        upper_ = lp_.upper;
        upper_.resize(static_cast<size_t>(ncols_));  // artificials unbounded
        at_upper_.assign(static_cast<size_t>(ncols_), false);
        is_basic_.assign(static_cast<size_t>(ncols_), false);
        for (int i = 0; i < m; ++i) {
            const bool flip = lp_.b[static_cast<size_t>(i)] < 0;
            for (int j = 0; j < nstruct_; ++j) {
                const Rat& a = lp_.A[static_cast<size_t>(i)][static_cast<size_t>(j)];
                T_[static_cast<size_t>(i)][static_cast<size_t>(j)] = flip ? Rat(-a) : a;
            }
            T_[static_cast<size_t>(i)][static_cast<size_t>(nstruct_ + i)] = 1;
            beta_[static_cast<size_t>(i)] =
                flip ? Rat(-lp_.b[static_cast<size_t>(i)]) : lp_.b[static_cast<size_t>(i)];
            basis_[static_cast<size_t>(i)] = nstruct_ + i;
            is_basic_[static_cast<size_t>(nstruct_ + i)] = true;
        }
    }

    void load_objective(const std::vector<Rat>& c) {
        cost_ = c;
        zrow_.assign(static_cast<size_t>(ncols_), Rat(0));
        zval_ = 0;
        for (int j = 0; j < ncols_; ++j) {
            if (is_basic_[static_cast<size_t>(j)]) continue;
            Rat r = cost_[static_cast<size_t>(j)];
            for (size_t i = 0; i < basis_.size(); ++i)
                if (cost_[static_cast<size_t>(basis_[i])] != 0)
                    r -= cost_[static_cast<size_t>(basis_[i])] * T_[i][static_cast<size_t>(j)];
            zrow_[static_cast<size_t>(j)] = r;
        }
        for (size_t i = 0; i < basis_.size(); ++i)
            zval_ += cost_[static_cast<size_t>(basis_[i])] * beta_[i];
        for (int j = 0; j < nstruct_; ++j)
            if (!is_basic_[static_cast<size_t>(j)] && at_upper_[static_cast<size_t>(j)])
                zval_ += cost_[static_cast<size_t>(j)] * *upper_[static_cast<size_t>(j)];
    }

    // Returns false if unbounded.
    bool run(bool allow_artificial) {
        const size_t m = basis_.size();
        for (;;) {
            // Bland: smallest improving nonbasic column.
            int enter = -1;
            bool from_upper = false;
            for (int j = 0; j < ncols_; ++j) {
                if (is_basic_[static_cast<size_t>(j)]) continue;
                if (!allow_artificial && j >= nstruct_) break;
                const Rat& r = zrow_[static_cast<size_t>(j)];
                if (!at_upper_[static_cast<size_t>(j)] && r > 0) { enter = j; from_upper = false; break; }
                if (at_upper_[static_cast<size_t>(j)] && r < 0) { enter = j; from_upper = true; break; }
            }
            if (enter < 0) return true;

            const int dir = from_upper ? -1 : 1;  // sign of the change of x_enter
            // Ratio test. Bland tie-break on the blocking variable's index;
            // leave_row == -1 encodes a flip to the entering variable's other
            // bound.
            std::optional<Rat> best;
            int leave_row = -1, leave_var = -1, leave_to_upper = 0;
            auto consider = [&](const Rat& t, int var, int row, int to_upper) {
                if (!best || t < *best || (t == *best && var < leave_var)) {
                    best = t;
                    leave_var = var;
                    leave_row = row;
                    leave_to_upper = to_upper;
                }
            };
            if (upper_[static_cast<size_t>(enter)])
                consider(*upper_[static_cast<size_t>(enter)], enter, -1, 0);
            for (size_t i = 0; i < m; ++i) {
                const Rat& a = T_[i][static_cast<size_t>(enter)];
                if (a == 0) continue;
                const Rat da = Rat(dir) * a;
                // x_basis[i] = beta_i - t * da
                if (da > 0) {
                    consider(beta_[i] / da, basis_[i], static_cast<int>(i), 0);
                } else if (upper_[static_cast<size_t>(basis_[i])]) {
                    consider((*upper_[static_cast<size_t>(basis_[i])] - beta_[i]) / -da, basis_[i],
                             static_cast<int>(i), 1);
                }
            }
            if (!best) return false;  // unbounded ray
            const Rat t = *best;

            zval_ += zrow_[static_cast<size_t>(enter)] * Rat(dir) * t;
            if (leave_row == -1) {
                // Bound flip, no basis change.
                for (size_t i = 0; i < m; ++i)
                    beta_[i] -= Rat(dir) * t * T_[i][static_cast<size_t>(enter)];
                at_upper_[static_cast<size_t>(enter)] = !at_upper_[static_cast<size_t>(enter)];
                continue;
            }

            const size_t r = static_cast<size_t>(leave_row);
            const int out = basis_[r];
            Rat enter_val = Rat(dir) * t;
            if (at_upper_[static_cast<size_t>(enter)])
                enter_val += *upper_[static_cast<size_t>(enter)];
            for (size_t i = 0; i < m; ++i)
                if (i != r) beta_[i] -= Rat(dir) * t * T_[i][static_cast<size_t>(enter)];
            beta_[r] = enter_val;

            is_basic_[static_cast<size_t>(out)] = false;
            at_upper_[static_cast<size_t>(out)] = (leave_to_upper == 1);
            is_basic_[static_cast<size_t>(enter)] = true;
            basis_[r] = enter;
            pivot(r, enter);
        }
    }

    void pivot(size_t row, int col) {
        const size_t m = basis_.size();
        std::vector<Rat>& pr = T_[row];
        const Rat inv = Rat(1) / pr[static_cast<size_t>(col)];
        for (auto& x : pr)
            if (x != 0) x *= inv;
        pr[static_cast<size_t>(col)] = 1;
        for (size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const Rat f = T_[i][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j < ncols_; ++j)
                if (pr[static_cast<size_t>(j)] != 0)
                    T_[i][static_cast<size_t>(j)] -= f * pr[static_cast<size_t>(j)];
            T_[i][static_cast<size_t>(col)] = 0;
        }
        const Rat f = zrow_[static_cast<size_t>(col)];
        if (f != 0) {
            for (int j = 0; j < ncols_; ++j)
                if (pr[static_cast<size_t>(j)] != 0)
                    zrow_[static_cast<size_t>(j)] -= f * pr[static_cast<size_t>(j)];
            zrow_[static_cast<size_t>(col)] = 0;
        }
    }

    // After a feasible phase 1, pivot basic artificials to structural columns
    // where possible; all-zero rows are redundant and get parked (the
    // artificial stays basic at zero and phase 2 never moves it).
    void drive_out_artificials() {
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < nstruct_) continue;
            for (int j = 0; j < nstruct_; ++j) {
                if (is_basic_[static_cast<size_t>(j)]) continue;
                if (T_[i][static_cast<size_t>(j)] == 0) continue;
                const int out = basis_[i];
                // Degenerate pivot: no variable moves. The entering variable
                // keeps its current bound value, which becomes the row's
                // basic value; the artificial leaves at zero.
                Rat bound_val =
                    at_upper_[static_cast<size_t>(j)] ? *upper_[static_cast<size_t>(j)] : Rat(0);
                is_basic_[static_cast<size_t>(out)] = false;
                at_upper_[static_cast<size_t>(out)] = false;
                is_basic_[static_cast<size_t>(j)] = true;
                at_upper_[static_cast<size_t>(j)] = false;
                basis_[i] = j;
                pivot(i, j);
                beta_[i] = bound_val;
                break;
            }
        }
    }
};

inline LpResult lp_solve(const BoundedLp& lp) {
    if (lp.A.empty()) {
        // No constraints: each variable sits at whichever bound the
        // objective prefers; unbounded if a positive-cost variable has none.
        LpResult r;
        r.status = LpStatus::optimal;
        r.objective = 0;
        r.x.assign(static_cast<size_t>(lp.nvars), Rat(0));
        for (int j = 0; j < lp.nvars; ++j) {
            const Rat& c = lp.obj[static_cast<size_t>(j)];
            if (c > 0) {
                if (!lp.upper[static_cast<size_t>(j)]) return {LpStatus::unbounded, Rat(0), {}};
                r.x[static_cast<size_t>(j)] = *lp.upper[static_cast<size_t>(j)];
                r.objective += c * r.x[static_cast<size_t>(j)];
            }
        }
        return r;
    }
    return BoundedSimplex(lp).solve();
}

}  // namespace wallx
