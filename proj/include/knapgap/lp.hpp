#ifndef KNAPGAP_LP_HPP
#define KNAPGAP_LP_HPP

/**
 * Linear programs in H-description with per-variable bounds, and the naive
 * knapsack relaxation built from an instance.
 *
 * A problem is max/min over rational x of objective . x subject to rows
 * (coefficients, relation, rhs) and bounds lower <= x <= upper, where upper
 * entries may be absent (unbounded above).  Solutions carry the exact optimum
 * and a record of which rows and bounds are tight at the returned point.
 */

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

enum class Relation { LessEq, GreaterEq, Equal };
enum class ObjSense { Maximize, Minimize };

inline std::string to_string(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::GreaterEq: return ">=";
        default: return "=";
    }
}

struct LpRow {
    RationalVector coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs;
};

struct LpProblem {
    ObjSense sense = ObjSense::Maximize;
    RationalVector objective;
    std::vector<LpRow> rows;
    RationalVector lower;                        // finite lower bounds
    std::vector<std::optional<Rational>> upper;  // nullopt = +infinity

    int num_vars() const { return (int)objective.size(); }

    void validate() const {
        const std::size_t n = objective.size();
        if (lower.size() != n || upper.size() != n)
            throw ValidationError("lp: bound vectors do not match variable count");
        for (std::size_t i = 0; i < n; ++i)
            if (upper[i].has_value() && lower[i] > *upper[i])
                throw ValidationError("lp: lower bound exceeds upper bound for variable " +
                                      std::to_string(i));
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].coeffs.size() != n)
                throw ValidationError("lp: row " + std::to_string(r) + " has wrong width");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class VarStatus { Basic, AtLower, AtUpper };

/** Which constraints and bounds hold with equality at the returned point,
 *  plus the basic/nonbasic split certifying it is a basic feasible solution. */
struct BasisInfo {
    std::vector<VarStatus> var_status;  // per structural variable
    std::vector<bool> row_tight;        // per row: activity == rhs
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    RationalVector x;          // meaningful when Optimal
    Rational objective_value;  // exact, equals objective . x
    BasisInfo basis;
};

struct CheckResult {
    enum class Kind { Feasible, Row, LowerBound, UpperBound };
    Kind kind = Kind::Feasible;
    int index = -1;

    bool feasible() const { return kind == Kind::Feasible; }
};

/** Exact membership test; reports the first violated row, then the first
 *  violated bound. */
inline CheckResult check_point(const LpProblem& p, const RationalVector& x) {
    if ((int)x.size() != p.num_vars()) throw ContractViolation("check_point: dimension mismatch");
    for (std::size_t r = 0; r < p.rows.size(); ++r) {
        const Rational activity = dot(p.rows[r].coeffs, x);
        const LpRow& row = p.rows[r];
        const bool ok = row.rel == Relation::LessEq    ? activity <= row.rhs
                        : row.rel == Relation::GreaterEq ? activity >= row.rhs
                                                         : activity == row.rhs;
        if (!ok) return CheckResult{CheckResult::Kind::Row, (int)r};
    }
    for (int i = 0; i < p.num_vars(); ++i) {
        if (x[i] < p.lower[i]) return CheckResult{CheckResult::Kind::LowerBound, i};
        if (p.upper[i].has_value() && x[i] > *p.upper[i])
            return CheckResult{CheckResult::Kind::UpperBound, i};
    }
    return CheckResult{};
}

/** The naive relaxation of an instance: max/min cx, Ax <= b or Ax >= b,
 *  0 <= x <= d with unbounded entries kept unbounded. */
inline LpProblem naive_relaxation(const KnapsackInstance& inst) {
    LpProblem p;
    p.sense = inst.sense == Sense::Packing ? ObjSense::Maximize : ObjSense::Minimize;
    p.objective = inst.c;
    for (int j = 0; j < inst.k; ++j) {
        LpRow row;
        row.coeffs.assign(inst.A[j].begin(), inst.A[j].end());
        row.rel = inst.sense == Sense::Packing ? Relation::LessEq : Relation::GreaterEq;
        row.rhs = inst.b[j];
        p.rows.push_back(std::move(row));
    }
    p.lower.assign(inst.n, Rational(0));
    p.upper.resize(inst.n);
    for (int i = 0; i < inst.n; ++i)
        p.upper[i] = inst.d[i].has_value() ? std::optional<Rational>(Rational(*inst.d[i]))
                                           : std::nullopt;
    return p;
}

inline void append_terms(std::ostringstream& out, const RationalVector& coeffs) {
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!first) out << " + ";
        out << to_string(coeffs[i]) << " x" << i;
        first = false;
    }
    if (first) out << "0";
}

/** Rows and bounds in LP text form; excludes the objective so that the output
 *  is a serialization of the constraint system alone. */
inline std::string constraint_system_text(const LpProblem& p) {
    std::ostringstream out;
    out << "subject to\n";
    for (std::size_t r = 0; r < p.rows.size(); ++r) {
        out << "  r" << r << ": ";
        append_terms(out, p.rows[r].coeffs);
        out << " " << to_string(p.rows[r].rel) << " " << to_string(p.rows[r].rhs) << "\n";
    }
    out << "bounds\n";
    for (int i = 0; i < p.num_vars(); ++i) {
        out << "  " << to_string(p.lower[i]) << " <= x" << i << " <= "
            << (p.upper[i].has_value() ? to_string(*p.upper[i]) : std::string("inf")) << "\n";
    }
    return out.str();
}

/** Full debug dump of a problem for manual inspection. */
inline std::string lp_to_text(const LpProblem& p) {
    std::ostringstream out;
    out << (p.sense == ObjSense::Maximize ? "maximize" : "minimize") << "\n  ";
    append_terms(out, p.objective);
    out << "\n" << constraint_system_text(p);
    return out.str();
}

}  // namespace knapgap

#endif  // KNAPGAP_LP_HPP
