#include "gptcompat/rational_lp.hpp"

#include <sstream>

namespace gptcompat {

LpProblem LpProblem::with_variables(std::size_t n)
{
    LpProblem p;
    p.objective.assign(n, Rational(0));
    p.constraints = Matrix(0, n);
    p.lower.assign(n, std::nullopt);
    p.upper.assign(n, std::nullopt);
    return p;
}

void LpProblem::add_row(const RationalVector& coefficients, Relation relation, const Rational& bound)
{
    if (coefficients.size() != num_variables())
        throw LpDimensionError("add_row: expected " + std::to_string(num_variables()) + " coefficients, got " +
                               std::to_string(coefficients.size()));
    constraints.append_row(coefficients);
    relations.push_back(relation);
    rhs.push_back(bound);
}

void LpProblem::validate() const
{
    const std::size_t n = num_variables();
    if (constraints.rows() != relations.size() || rhs.size() != relations.size())
        throw LpDimensionError("row count mismatch between matrix, relations and rhs");
    if (constraints.rows() > 0 && constraints.cols() != n)
        throw LpDimensionError("matrix column count differs from objective length");
    if (lower.size() != n || upper.size() != n)
        throw LpDimensionError("bound vectors must have one entry per variable");
}

std::string LpProblem::dump() const
{
    std::ostringstream out;
    auto term_list = [&](const RationalVector& coeffs) {
        bool any = false;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (sgn(coeffs[j]) == 0)
                continue;
            out << (any ? " + " : "") << to_string(coeffs[j]) << "*x" << j;
            any = true;
        }
        if (!any)
            out << "0";
    };
    out << "maximize ";
    term_list(objective);
    out << '\n';
    for (std::size_t i = 0; i < num_rows(); ++i) {
        out << "r" << i << ": ";
        term_list(constraints.row(i));
        const char* rel = relations[i] == Relation::LessEqual ? " <= " : relations[i] == Relation::Equal ? " = " : " >= ";
        out << rel << to_string(rhs[i]) << '\n';
    }
    for (std::size_t j = 0; j < num_variables(); ++j) {
        if (!lower[j] && !upper[j])
            continue;
        out << "b" << j << ": " << (lower[j] ? to_string(*lower[j]) : "-inf") << " <= x" << j
            << " <= " << (upper[j] ? to_string(*upper[j]) : "+inf") << '\n';
    }
    return out.str();
}

const char* outcome_name(const LpOutcome& outcome)
{
    switch (outcome.index()) {
        case 0: return "optimal";
        case 1: return "infeasible";
        default: return "unbounded";
    }
}

namespace {

// Internal constraint: slack s = b - a.x, with s >= 0 (inequality) or s = 0.
struct SlackRow
{
    RationalVector a;
    Rational b;
    bool equality = false;
};

enum class VarKind { Free, Slack, FixedSlack, Artificial };

/**
 * Dictionary (compact tableau) form: each row expresses one basic variable
 * as beta + sum_j alpha_j * N_j over the current nonbasic columns. Storage
 * is rows x nonbasic columns, which keeps the many-row/few-column LPs of
 * this library cheap.
 */
class Dictionary
{
  public:
    Dictionary(const LpProblem& p)
        : n_(p.num_variables())
    {
        for (std::size_t i = 0; i < p.num_rows(); ++i) {
            SlackRow r{p.constraints.row(i), p.rhs[i], p.relations[i] == Relation::Equal};
            if (p.relations[i] == Relation::GreaterEqual) {
                for (auto& v : r.a)
                    v = -v;
                r.b = -r.b;
            }
            slacks_.push_back(std::move(r));
        }
        original_rows_ = p.num_rows();
        for (std::size_t j = 0; j < n_; ++j) {
            if (p.lower[j]) {
                // -x_j <= -l
                RationalVector a(n_, Rational(0));
                a[j] = -1;
                slacks_.push_back({std::move(a), Rational(-*p.lower[j]), false});
            }
            if (p.upper[j]) {
                RationalVector a(n_, Rational(0));
                a[j] = 1;
                slacks_.push_back({std::move(a), *p.upper[j], false});
            }
        }
        artificial_ = n_ + slacks_.size();

        for (std::size_t j = 0; j < n_; ++j)
            cols_.push_back(j);
        for (std::size_t k = 0; k < slacks_.size(); ++k) {
            Row row;
            row.basic = n_ + k;
            row.beta = slacks_[k].b;
            row.alpha.resize(n_);
            for (std::size_t j = 0; j < n_; ++j)
                row.alpha[j] = -slacks_[k].a[j];
            rows_.push_back(std::move(row));
        }
        objective_.beta = 0;
        objective_.alpha = p.objective;
    }

    LpOutcome run()
    {
        if (auto cert = presolve())
            return LpInfeasible{std::move(*cert)};
        if (auto cert = phase_one())
            return LpInfeasible{std::move(*cert)};
        return phase_two();
    }

  private:
    struct Row
    {
        std::size_t basic = 0;
        Rational beta;
        RationalVector alpha;
    };

    VarKind kind(std::size_t var) const
    {
        if (var < n_)
            return VarKind::Free;
        if (var == artificial_)
            return VarKind::Artificial;
        return slacks_[var - n_].equality ? VarKind::FixedSlack : VarKind::Slack;
    }

    // Bland ordering; the artificial variable comes first so that it leaves
    // the basis whenever it ties in the ratio test.
    long key(std::size_t var) const { return var == artificial_ ? -1 : static_cast<long>(var); }

    bool constrained(const Row& r) const
    {
        const VarKind k = kind(r.basic);
        return k == VarKind::Slack || k == VarKind::Artificial;
    }

    static void substitute(Row& target, const Row& pivot_row, std::size_t col)
    {
        const Rational a = target.alpha[col];
        if (sgn(a) == 0)
            return;
        target.beta += a * pivot_row.beta;
        for (std::size_t j = 0; j < target.alpha.size(); ++j) {
            if (j == col)
                target.alpha[j] = a * pivot_row.alpha[j];
            else if (sgn(pivot_row.alpha[j]) != 0)
                target.alpha[j] += a * pivot_row.alpha[j];
        }
    }

    void pivot(std::size_t r, std::size_t col)
    {
        Row& pr = rows_[r];
        const Rational piv = pr.alpha[col];
        const Rational inv = 1 / piv;
        pr.beta = -pr.beta * inv;
        for (std::size_t j = 0; j < pr.alpha.size(); ++j) {
            if (j == col)
                pr.alpha[j] = inv;
            else if (sgn(pr.alpha[j]) != 0)
                pr.alpha[j] = -pr.alpha[j] * inv;
        }
        std::swap(pr.basic, cols_[col]);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r)
                substitute(rows_[i], pr, col);
        substitute(objective_, pr, col);
        if (phase_one_active_)
            substitute(auxiliary_, pr, col);
    }

    std::size_t column_of(std::size_t var) const
    {
        for (std::size_t c = 0; c < cols_.size(); ++c)
            if (cols_[c] == var)
                return c;
        return cols_.size();
    }

    void erase_column(std::size_t col)
    {
        auto drop = [col](Row& r) { r.alpha.erase(r.alpha.begin() + static_cast<std::ptrdiff_t>(col)); };
        for (auto& r : rows_)
            drop(r);
        drop(objective_);
        if (phase_one_active_)
            drop(auxiliary_);
        cols_.erase(cols_.begin() + static_cast<std::ptrdiff_t>(col));
    }

    // Multipliers y_k = -d(s_k) over nonbasic slack columns of the given
    // objective row, restricted to the caller-visible rows.
    RationalVector multipliers_from(const Row& obj) const
    {
        RationalVector y(original_rows_, Rational(0));
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            const std::size_t var = cols_[c];
            if (var < n_ || var == artificial_)
                continue;
            const std::size_t k = var - n_;
            if (k < original_rows_)
                y[k] = -obj.alpha[c];
        }
        return y;
    }

    std::optional<RationalVector> presolve()
    {
        // Bring every free variable into the basis; equality rows first.
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t col = column_of(j);
            std::optional<std::size_t> best;
            bool best_eq = false;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (kind(rows_[i].basic) == VarKind::Free || sgn(rows_[i].alpha[col]) == 0)
                    continue;
                const bool eq = kind(rows_[i].basic) == VarKind::FixedSlack;
                if (!best || (eq && !best_eq) ||
                    (eq == best_eq && key(rows_[i].basic) < key(rows_[*best].basic))) {
                    best = i;
                    best_eq = eq;
                }
            }
            if (best)
                pivot(*best, col);
        }

        // Push remaining equality slacks out of the basis.
        for (std::size_t i = 0; i < rows_.size();) {
            if (kind(rows_[i].basic) != VarKind::FixedSlack) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t c = 0; c < cols_.size(); ++c) {
                if (kind(cols_[c]) == VarKind::Slack && sgn(rows_[i].alpha[c]) != 0 &&
                    (!col || key(cols_[c]) < key(cols_[*col])))
                    col = c;
            }
            if (col) {
                pivot(i, *col);
                ++i;
                continue;
            }
            if (sgn(rows_[i].beta) == 0) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            // s_i - sum_f alpha_f s_f = beta holds identically, with all
            // s_f fixed at zero: a contradiction among equality rows.
            RationalVector y(original_rows_, Rational(0));
            const int flip = sgn(rows_[i].beta) > 0 ? -1 : 1;
            const std::size_t k = rows_[i].basic - n_;
            if (k < original_rows_)
                y[k] = flip;
            for (std::size_t c = 0; c < cols_.size(); ++c) {
                if (kind(cols_[c]) != VarKind::FixedSlack || sgn(rows_[i].alpha[c]) == 0)
                    continue;
                const std::size_t kf = cols_[c] - n_;
                if (kf < original_rows_)
                    y[kf] = -flip * rows_[i].alpha[c];
            }
            return y;
        }
        return std::nullopt;
    }

    // Bland's rule simplex on the given objective row. Returns the entering
    // column that proved unboundedness, if any.
    std::optional<std::pair<std::size_t, int>> iterate(Row& obj)
    {
        for (;;) {
            std::optional<std::size_t> enter;
            int direction = 1;
            for (std::size_t c = 0; c < cols_.size(); ++c) {
                const VarKind k = kind(cols_[c]);
                if (k == VarKind::FixedSlack || sgn(obj.alpha[c]) == 0)
                    continue;
                if (k == VarKind::Free) {
                    // Untouched by every constrained row.
                    return std::pair{c, sgn(obj.alpha[c])};
                }
                if (sgn(obj.alpha[c]) > 0 && (!enter || key(cols_[c]) < key(cols_[*enter])))
                    enter = c;
            }
            if (!enter)
                return std::nullopt;

            std::optional<std::size_t> leave;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!constrained(rows_[i]) || sgn(rows_[i].alpha[*enter]) >= 0)
                    continue;
                Rational ratio = rows_[i].beta / -rows_[i].alpha[*enter];
                if (!leave || ratio < best_ratio ||
                    (ratio == best_ratio && key(rows_[i].basic) < key(rows_[*leave].basic))) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leave)
                return std::pair{*enter, direction};
            pivot(*leave, *enter);
        }
    }

    std::optional<RationalVector> phase_one()
    {
        std::optional<std::size_t> worst;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!constrained(rows_[i]) || sgn(rows_[i].beta) >= 0)
                continue;
            if (!worst || rows_[i].beta < rows_[*worst].beta ||
                (rows_[i].beta == rows_[*worst].beta && key(rows_[i].basic) < key(rows_[*worst].basic)))
                worst = i;
        }
        if (!worst)
            return std::nullopt;

        // Artificial x0 added to every inequality row; maximize -x0.
        phase_one_active_ = true;
        cols_.push_back(artificial_);
        for (auto& r : rows_)
            r.alpha.push_back(constrained(r) ? Rational(1) : Rational(0));
        objective_.alpha.push_back(0);
        auxiliary_.beta = 0;
        auxiliary_.alpha.assign(cols_.size(), Rational(0));
        auxiliary_.alpha.back() = -1;
        pivot(*worst, cols_.size() - 1);

        iterate(auxiliary_);

        std::optional<std::size_t> art_row;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].basic == artificial_)
                art_row = i;
        if (art_row && sgn(rows_[*art_row].beta) > 0) {
            auto cert = multipliers_from(auxiliary_);
            phase_one_active_ = false;
            return cert;
        }
        if (art_row) {
            std::optional<std::size_t> col;
            for (std::size_t c = 0; c < cols_.size(); ++c)
                if (kind(cols_[c]) == VarKind::Slack && sgn(rows_[*art_row].alpha[c]) != 0 &&
                    (!col || key(cols_[c]) < key(cols_[*col])))
                    col = c;
            if (col)
                pivot(*art_row, *col);
            else
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(*art_row));
        }
        const std::size_t art_col = column_of(artificial_);
        if (art_col < cols_.size())
            erase_column(art_col);
        phase_one_active_ = false;
        return std::nullopt;
    }

    RationalVector current_x() const
    {
        RationalVector x(n_, Rational(0));
        for (const auto& r : rows_)
            if (r.basic < n_)
                x[r.basic] = r.beta;
        return x;
    }

    LpOutcome phase_two()
    {
        if (auto unbounded = iterate(objective_)) {
            const auto [col, dir] = *unbounded;
            RationalVector ray(n_, Rational(0));
            for (const auto& r : rows_)
                if (r.basic < n_)
                    ray[r.basic] = dir * r.alpha[col];
            if (cols_[col] < n_)
                ray[cols_[col]] = dir;
            return LpUnbounded{current_x(), std::move(ray)};
        }
        return LpOptimal{current_x(), objective_.beta, multipliers_from(objective_)};
    }

    std::size_t n_;
    std::size_t original_rows_ = 0;
    std::size_t artificial_ = 0;
    std::vector<SlackRow> slacks_;
    std::vector<Row> rows_;
    std::vector<std::size_t> cols_;
    Row objective_;
    Row auxiliary_;
    bool phase_one_active_ = false;
};

Rational row_dot(const Matrix& m, std::size_t r, const RationalVector& x)
{
    Rational acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0)
            acc += m(r, j) * x[j];
    return acc;
}

// Sign-checks multipliers and returns the combined "<=" row (g, rho).
std::optional<std::pair<RationalVector, Rational>> combine_rows(const LpProblem& p, const RationalVector& y)
{
    const std::size_t n = p.num_variables();
    RationalVector g(n, Rational(0));
    Rational rho = 0;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        if (sgn(y[i]) == 0)
            continue;
        if (p.relations[i] != Relation::Equal && sgn(y[i]) < 0)
            return std::nullopt;
        const Rational w = p.relations[i] == Relation::GreaterEqual ? Rational(-y[i]) : y[i];
        for (std::size_t j = 0; j < n; ++j)
            g[j] += w * p.constraints(i, j);
        rho += w * p.rhs[i];
    }
    return std::pair{std::move(g), std::move(rho)};
}

// max over the bound box of coeffs . x, or nullopt if unbounded above.
std::optional<Rational> box_max(const LpProblem& p, const RationalVector& coeffs)
{
    Rational acc = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const int s = sgn(coeffs[j]);
        if (s == 0)
            continue;
        const auto& bound = s > 0 ? p.upper[j] : p.lower[j];
        if (!bound)
            return std::nullopt;
        acc += coeffs[j] * *bound;
    }
    return acc;
}

} // namespace

LpOutcome solve(const LpProblem& problem)
{
    problem.validate();
    return Dictionary(problem).run();
}

LpOutcome check_feasibility(const LpProblem& problem)
{
    LpProblem zero = problem;
    zero.objective.assign(problem.num_variables(), Rational(0));
    return solve(zero);
}

bool is_feasible_point(const LpProblem& p, const RationalVector& x)
{
    if (x.size() != p.num_variables())
        throw LpDimensionError("point length differs from variable count");
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const Rational lhs = row_dot(p.constraints, i, x);
        switch (p.relations[i]) {
            case Relation::LessEqual:
                if (lhs > p.rhs[i])
                    return false;
                break;
            case Relation::Equal:
                if (lhs != p.rhs[i])
                    return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < p.rhs[i])
                    return false;
                break;
        }
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (p.lower[j] && x[j] < *p.lower[j])
            return false;
        if (p.upper[j] && x[j] > *p.upper[j])
            return false;
    }
    return true;
}

bool verify_certificate(const LpProblem& p, const LpOutcome& outcome)
{
    p.validate();
    const std::size_t n = p.num_variables();

    if (const auto* opt = std::get_if<LpOptimal>(&outcome)) {
        if (opt->solution.size() != n || opt->dual.size() != p.num_rows())
            throw LpDimensionError("optimal certificate has wrong dimensions");
        if (!is_feasible_point(p, opt->solution) || dot(p.objective, opt->solution) != opt->value)
            return false;
        auto combined = combine_rows(p, opt->dual);
        if (!combined)
            return false;
        RationalVector residual = p.objective;
        for (std::size_t j = 0; j < n; ++j)
            residual[j] -= combined->first[j];
        const auto slack = box_max(p, residual);
        return slack && combined->second + *slack == opt->value;
    }

    if (const auto* inf = std::get_if<LpInfeasible>(&outcome)) {
        if (inf->farkas.size() != p.num_rows())
            throw LpDimensionError("Farkas certificate has wrong length");
        auto combined = combine_rows(p, inf->farkas);
        if (!combined)
            return false;
        // g.x <= rho holds on the feasible set; contradiction iff
        // min over the box of g.x exceeds rho.
        RationalVector neg = combined->first;
        for (auto& v : neg)
            v = -v;
        const auto neg_min = box_max(p, neg);
        return neg_min && -*neg_min > combined->second;
    }

    const auto& unb = std::get<LpUnbounded>(outcome);
    if (unb.point.size() != n || unb.ray.size() != n)
        throw LpDimensionError("unboundedness certificate has wrong dimensions");
    if (!is_feasible_point(p, unb.point))
        return false;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const int s = sgn(row_dot(p.constraints, i, unb.ray));
        if ((p.relations[i] == Relation::LessEqual && s > 0) || (p.relations[i] == Relation::Equal && s != 0) ||
            (p.relations[i] == Relation::GreaterEqual && s < 0))
            return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (p.lower[j] && sgn(unb.ray[j]) < 0)
            return false;
        if (p.upper[j] && sgn(unb.ray[j]) > 0)
            return false;
    }
    return sgn(dot(p.objective, unb.ray)) > 0;
}

} // namespace gptcompat

namespace gptcompat {

bool InfeasibilityWitness::verify() const
{
    return problem && verify_certificate(*problem, LpOutcome{LpInfeasible{farkas}});
}

} // namespace gptcompat
