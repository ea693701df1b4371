#ifndef GPTCOMPAT_RATIONAL_LP_HPP
#define GPTCOMPAT_RATIONAL_LP_HPP

#include "gptcompat/linalg.hpp"
#include "gptcompat/rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gptcompat {

enum class Relation { LessEqual, Equal, GreaterEqual };

class LpDimensionError : public std::invalid_argument
{
  public:
    explicit LpDimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * maximize objective . x
 * subject to  row_i . x  (<=, =, >=)  rhs_i
 *             lower_j <= x_j <= upper_j   (missing bound = unbounded side)
 *
 * Certificates use one sign convention throughout: every row is read in
 * "<=" form (">=" rows negated), multipliers on inequality rows are
 * non-negative and multipliers on equality rows are free. Variable bounds
 * never carry explicit multipliers; verification folds them in by
 * minimizing/maximizing over the bound box.
 */
struct LpProblem
{
    RationalVector objective;
    Matrix constraints;
    std::vector<Relation> relations;
    RationalVector rhs;
    std::vector<std::optional<Rational>> lower;
    std::vector<std::optional<Rational>> upper;

    /// Free variables, zero objective, no rows.
    static LpProblem with_variables(std::size_t n);

    std::size_t num_variables() const { return objective.size(); }
    std::size_t num_rows() const { return relations.size(); }

    void add_row(const RationalVector& coefficients, Relation relation, const Rational& bound);

    /// Throws LpDimensionError when the field sizes disagree.
    void validate() const;

    /// One constraint per line, exact rationals. Meant for bug reports.
    std::string dump() const;
};

struct LpOptimal
{
    RationalVector solution;
    Rational value;
    /// Row multipliers proving value is an upper bound (see LpProblem).
    RationalVector dual;
};

struct LpInfeasible
{
    /// Row multipliers combining the rows into 0 . x <= r with r < 0 once
    /// bounds are folded in.
    RationalVector farkas;
};

struct LpUnbounded
{
    RationalVector point;
    RationalVector ray;
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

/// An infeasible LP together with its Farkas multipliers, so that a claim
/// resting on the infeasibility can be re-checked later.
struct InfeasibilityWitness
{
    std::shared_ptr<const LpProblem> problem;
    RationalVector farkas;

    bool verify() const;
};

/// Two-phase primal simplex over the rationals with Bland's rule. Fully
/// deterministic: identical problems produce identical outcomes.
LpOutcome solve(const LpProblem& problem);

/// solve() with the objective replaced by zero.
LpOutcome check_feasibility(const LpProblem& problem);

/// Re-checks an outcome against the problem by direct evaluation only.
/// Throws LpDimensionError if vector lengths do not fit the problem.
bool verify_certificate(const LpProblem& problem, const LpOutcome& outcome);

/// True iff x satisfies every row and bound exactly.
bool is_feasible_point(const LpProblem& problem, const RationalVector& x);

const char* outcome_name(const LpOutcome& outcome);

} // namespace gptcompat

#endif
