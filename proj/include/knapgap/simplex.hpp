#ifndef KNAPGAP_SIMPLEX_HPP
#define KNAPGAP_SIMPLEX_HPP

/**
 * Exact rational simplex over bounded variables.
 *
 * Two-phase primal simplex on a dense tableau of rationals.  Variables carry
 * finite lower bounds and finite-or-infinite upper bounds; rows may be <=, >=
 * or =.  Pivot selection follows Bland's smallest-index rule (the entering
 * variable's own opposite bound competes in the ratio test under the entering
 * index), which guarantees termination and makes every solve deterministic.
 *
 * Returned points are basic feasible solutions, i.e. extreme points of the
 * feasible region.  Before returning, the solver re-derives the reduced costs
 * from scratch and verifies that no improving feasible direction exists at
 * the final basis, and re-checks feasibility of the point against the
 * original problem; a failure of either check is a logic error and throws.
 *
 * No presolve is performed beyond dropping empty rows.  Correctness over
 * speed: instances are desk-scale.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {
namespace detail {

class SimplexSolver {
  public:
    explicit SimplexSolver(const LpProblem& p) : p_(p) {}

    LpSolution run() {
        build();
        if (infeasible_row_) return LpSolution{LpStatus::Infeasible, {}, 0, {}};
        if (!phase_one()) return LpSolution{LpStatus::Infeasible, {}, 0, {}};
        if (!phase_two()) return LpSolution{LpStatus::Unbounded, {}, 0, {}};
        return extract();
    }

  private:
    enum class Status { Basic, AtLower, AtUpper };

    const LpProblem& p_;
    int n_struct_ = 0;  // structural variables
    int ncols_ = 0;
    std::vector<Rational> lower_;
    std::vector<std::optional<Rational>> upper_;
    std::vector<bool> artificial_;
    std::vector<bool> banned_;
    std::vector<Status> status_;
    std::vector<RationalVector> tableau_;  // rows of B^-1 * [all columns]
    std::vector<int> basis_;               // column basic in each row
    RationalVector basic_val_;
    RationalVector red_;  // reduced costs of the active phase
    bool infeasible_row_ = false;

    Rational nb_value(int c) const { return status_[c] == Status::AtUpper ? *upper_[c] : lower_[c]; }

    bool has_span(int c) const { return !upper_[c].has_value() || lower_[c] < *upper_[c]; }

    int add_column(Rational lo, std::optional<Rational> up, bool artificial) {
        lower_.push_back(std::move(lo));
        upper_.push_back(std::move(up));
        artificial_.push_back(artificial);
        banned_.push_back(false);
        status_.push_back(Status::AtLower);
        for (auto& row : tableau_) row.push_back(0);
        return ncols_++;
    }

    void build() {
        n_struct_ = p_.num_vars();
        ncols_ = n_struct_;
        lower_ = p_.lower;
        upper_ = p_.upper;
        artificial_.assign(ncols_, false);
        banned_.assign(ncols_, false);
        status_.assign(ncols_, Status::AtLower);

        for (const LpRow& row : p_.rows) {
            bool empty = true;
            for (const Rational& a : row.coeffs)
                if (a != 0) { empty = false; break; }
            if (empty) {
                const bool ok = row.rel == Relation::LessEq    ? Rational(0) <= row.rhs
                                : row.rel == Relation::GreaterEq ? Rational(0) >= row.rhs
                                                                 : row.rhs == 0;
                if (!ok) infeasible_row_ = true;
                continue;  // drop redundant empty row
            }
            Rational resid = row.rhs;
            for (int i = 0; i < n_struct_; ++i)
                if (row.coeffs[i] != 0) resid -= row.coeffs[i] * lower_[i];

            RationalVector trow(ncols_, Rational(0));
            for (int i = 0; i < n_struct_; ++i) trow[i] = row.coeffs[i];
            tableau_.push_back(std::move(trow));
            const int r = (int)tableau_.size() - 1;

            int basic = -1;
            Rational value;
            Rational sign = 1;
            if (row.rel == Relation::LessEq) {
                const int s = add_column(0, std::nullopt, false);
                tableau_[r][s] = 1;
                if (resid >= 0) { basic = s; value = resid; }
            } else if (row.rel == Relation::GreaterEq) {
                const int s = add_column(0, std::nullopt, false);
                tableau_[r][s] = -1;
                if (resid <= 0) { basic = s; value = -resid; sign = -1; }
            }
            if (basic < 0) {
                const int z = add_column(0, std::nullopt, true);
                sign = resid >= 0 ? 1 : -1;
                tableau_[r][z] = sign;
                basic = z;
                value = resid >= 0 ? resid : Rational(-resid);
            }
            if (sign < 0)
                for (Rational& a : tableau_[r]) a = -a;
            basis_.push_back(basic);
            basic_val_.push_back(value);
            status_[basic] = Status::Basic;
        }
    }

    void compute_reduced_costs(const RationalVector& obj) {
        red_ = obj;
        red_.resize(ncols_, Rational(0));
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const Rational& cb = red_[basis_[r]];
            if (cb == 0) continue;
            const Rational f = cb;  // copy: red_[basis_[r]] changes below
            for (int c = 0; c < ncols_; ++c)
                if (tableau_[r][c] != 0) red_[c] -= f * tableau_[r][c];
        }
    }

    void pivot(int prow, int e) {
        RationalVector& pr = tableau_[prow];
        const Rational piv = pr[e];
        std::vector<int> nz;
        nz.reserve(ncols_);
        for (int c = 0; c < ncols_; ++c) {
            if (pr[c] == 0) continue;
            if (piv != 1) pr[c] /= piv;
            nz.push_back(c);
        }
        for (std::size_t r = 0; r < tableau_.size(); ++r) {
            if ((int)r == prow) continue;
            const Rational f = tableau_[r][e];
            if (f == 0) continue;
            RationalVector& row = tableau_[r];
            for (int c : nz) row[c] -= f * pr[c];
        }
        const Rational fr = red_[e];
        if (fr != 0)
            for (int c : nz) red_[c] -= fr * pr[c];
    }

    // One Bland iteration of the active phase.  Returns Optimal when no
    // eligible entering column remains, Unbounded when a ray is found.
    enum class Step { Optimal, Moved, Unbounded };

    Step step() {
        int e = -1;
        for (int c = 0; c < ncols_; ++c) {
            if (banned_[c] || status_[c] == Status::Basic || !has_span(c)) continue;
            if (status_[c] == Status::AtLower ? red_[c] > 0 : red_[c] < 0) { e = c; break; }
        }
        if (e < 0) return Step::Optimal;
        const int delta = status_[e] == Status::AtLower ? 1 : -1;

        // Ratio test: the entering column's own span competes under index e.
        std::optional<Rational> best_t;
        int best_id = e;
        int best_row = -1;
        bool hit_lower = false;
        if (upper_[e].has_value()) best_t = *upper_[e] - lower_[e];
        for (std::size_t r = 0; r < tableau_.size(); ++r) {
            const Rational& a = tableau_[r][e];
            if (a == 0) continue;
            const Rational rate = a * delta;
            std::optional<Rational> limit;
            bool lowerside = false;
            if (rate > 0) {
                limit = (basic_val_[r] - lower_[basis_[r]]) / rate;
                lowerside = true;
            } else if (upper_[basis_[r]].has_value()) {
                limit = (*upper_[basis_[r]] - basic_val_[r]) / -rate;
            } else {
                continue;
            }
            const bool better = !best_t.has_value() || *limit < *best_t ||
                                (*limit == *best_t && basis_[r] < best_id);
            if (better) {
                best_t = std::move(limit);
                best_id = basis_[r];
                best_row = (int)r;
                hit_lower = lowerside;
            }
        }
        if (!best_t.has_value()) return Step::Unbounded;

        const Rational t = *best_t;
        if (t != 0)
            for (std::size_t r = 0; r < tableau_.size(); ++r)
                if (tableau_[r][e] != 0) basic_val_[r] -= tableau_[r][e] * delta * t;

        if (best_row < 0) {
            status_[e] = status_[e] == Status::AtLower ? Status::AtUpper : Status::AtLower;
            return Step::Moved;
        }
        const Rational enter_val = nb_value(e) + Rational(delta) * t;
        const int leaving = basis_[best_row];
        status_[leaving] = hit_lower ? Status::AtLower : Status::AtUpper;
        if (artificial_[leaving]) banned_[leaving] = true;
        pivot(best_row, e);
        basis_[best_row] = e;
        basic_val_[best_row] = enter_val;
        status_[e] = Status::Basic;
        return Step::Moved;
    }

    Step run_phase() {
        // Bland's rule terminates; the cap only guards against logic errors.
        for (long long iter = 0; iter < 100'000'000; ++iter) {
            const Step s = step();
            if (s != Step::Moved) return s;
        }
        throw ContractViolation("simplex: iteration cap exceeded");
    }

    bool phase_one() {
        bool any_artificial = false;
        for (int c = 0; c < ncols_; ++c) any_artificial |= artificial_[c];
        if (any_artificial) {
            RationalVector obj(ncols_, Rational(0));
            for (int c = 0; c < ncols_; ++c)
                if (artificial_[c]) obj[c] = -1;
            compute_reduced_costs(obj);
            run_phase();  // max of a non-positive objective is never unbounded
            Rational total = 0;
            for (std::size_t r = 0; r < basis_.size(); ++r)
                if (artificial_[basis_[r]]) total += basic_val_[r];
            if (total != 0) return false;
            drive_out_artificials();
        }
        for (int c = 0; c < ncols_; ++c)
            if (artificial_[c]) banned_[c] = true;
        return true;
    }

    // Pivots zero-valued basic artificials onto structural or slack columns;
    // rows with no such column are linearly dependent and get dropped.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < basis_.size();) {
            if (!artificial_[basis_[r]]) { ++r; continue; }
            int e = -1;
            for (int c = 0; c < ncols_; ++c)
                if (!artificial_[c] && tableau_[r][c] != 0) { e = c; break; }
            if (e < 0) {
                tableau_.erase(tableau_.begin() + r);
                basic_val_.erase(basic_val_.begin() + r);
                basis_.erase(basis_.begin() + r);
                continue;
            }
            const int leaving = basis_[r];
            const Rational enter_val = nb_value(e);
            red_.assign(ncols_, Rational(0));  // not meaningful during drive-out
            pivot((int)r, e);
            basis_[r] = e;
            basic_val_[r] = enter_val;
            status_[e] = Status::Basic;
            status_[leaving] = Status::AtLower;
            banned_[leaving] = true;
            ++r;
        }
    }

    bool phase_two() {
        RationalVector obj(ncols_, Rational(0));
        for (int i = 0; i < n_struct_; ++i)
            obj[i] = p_.sense == ObjSense::Maximize ? p_.objective[i] : -p_.objective[i];
        compute_reduced_costs(obj);
        return run_phase() == Step::Optimal;
    }

    LpSolution extract() {
        std::vector<int> row_of(ncols_, -1);
        for (std::size_t r = 0; r < basis_.size(); ++r) row_of[basis_[r]] = (int)r;

        RationalVector x(n_struct_);
        for (int i = 0; i < n_struct_; ++i)
            x[i] = status_[i] == Status::Basic ? basic_val_[row_of[i]] : nb_value(i);

        verify_optimal_basis();
        if (!check_point(p_, x).feasible())
            throw ContractViolation("simplex: returned point failed feasibility verification");

        LpSolution sol;
        sol.status = LpStatus::Optimal;
        sol.x = x;
        sol.objective_value = dot(p_.objective, x);
        sol.basis.var_status.resize(n_struct_);
        for (int i = 0; i < n_struct_; ++i)
            sol.basis.var_status[i] = status_[i] == Status::Basic     ? VarStatus::Basic
                                      : status_[i] == Status::AtLower ? VarStatus::AtLower
                                                                      : VarStatus::AtUpper;
        sol.basis.row_tight.reserve(p_.rows.size());
        for (const LpRow& row : p_.rows)
            sol.basis.row_tight.push_back(dot(row.coeffs, x) == row.rhs);
        return sol;
    }

    // Re-derives reduced costs from scratch and checks the sign conditions:
    // at the returned basis there is no improving feasible direction.
    void verify_optimal_basis() {
        RationalVector obj(ncols_, Rational(0));
        for (int i = 0; i < n_struct_; ++i)
            obj[i] = p_.sense == ObjSense::Maximize ? p_.objective[i] : -p_.objective[i];
        RationalVector red = obj;
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const Rational f = red[basis_[r]];
            if (f == 0) continue;
            for (int c = 0; c < ncols_; ++c)
                if (tableau_[r][c] != 0) red[c] -= f * tableau_[r][c];
        }
        for (int c = 0; c < ncols_; ++c) {
            if (banned_[c] || !has_span(c)) continue;
            const bool ok = status_[c] == Status::Basic     ? red[c] == 0
                            : status_[c] == Status::AtLower ? red[c] <= 0
                                                            : red[c] >= 0;
            if (!ok) throw ContractViolation("simplex: optimality verification failed");
        }
    }
};

}  // namespace detail

/** Solves the problem to an optimal basic feasible solution (an extreme
 *  point), deterministically.  Status is Infeasible or Unbounded otherwise. */
inline LpSolution solve_lp(const LpProblem& p) {
    p.validate();
    return detail::SimplexSolver(p).run();
}

}  // namespace knapgap

#endif  // KNAPGAP_SIMPLEX_HPP
