#include "gptcompat/compatibility.hpp"

#include <algorithm>

namespace gptcompat {

namespace {

// Coefficient layout of one functional inside an LP: [constant, linear...].
RationalVector evaluation_row(const Point& v, std::size_t width, std::size_t offset)
{
    RationalVector row(width, Rational(0));
    row[offset] = 1;
    for (std::size_t k = 0; k < v.size(); ++k)
        row[offset + 1 + k] = v[k];
    return row;
}

AffineFunctional read_functional(const SpacePtr& space, const RationalVector& x, std::size_t offset)
{
    const std::size_t d = space->dimension();
    RationalVector lin(x.begin() + static_cast<std::ptrdiff_t>(offset + 1),
                       x.begin() + static_cast<std::ptrdiff_t>(offset + 1 + d));
    return AffineFunctional(space, x[offset], std::move(lin));
}

void require_same(const SpacePtr& a, const SpacePtr& b, const char* where)
{
    if (!same_space(a, b))
        throw SpaceMismatch(std::string(where) + ": inputs live on different state spaces");
}

Incompatible incompatible_from(LpProblem lp, const LpOutcome& outcome)
{
    return Incompatible{InfeasibilityWitness{std::make_shared<const LpProblem>(std::move(lp)),
                                             std::get<LpInfeasible>(outcome).farkas}};
}

JointFamily joint_2x2(const AffineFunctional& a, const AffineFunctional& b, const AffineFunctional& c)
{
    const AffineFunctional e = AffineFunctional::constant_function(a.space(), 1);
    return {{c, a - c}, {b - c, e - a - b + c}};
}

} // namespace

bool verify_joint(const JointFamily& joint, const Measurement& rows, const Measurement& cols)
{
    if (!same_space(rows.space(), cols.space()) || joint.size() != rows.size())
        return false;
    const SpacePtr& space = rows.space();
    std::vector<AffineFunctional> col_sums(cols.size(), AffineFunctional::zero(space));
    for (std::size_t k = 0; k < joint.size(); ++k) {
        if (joint[k].size() != cols.size())
            return false;
        AffineFunctional row_sum = AffineFunctional::zero(space);
        for (std::size_t j = 0; j < joint[k].size(); ++j) {
            const auto& h = joint[k][j];
            if (!same_space(h.space(), space) || !h.is_nonnegative())
                return false;
            row_sum += h;
            col_sums[j] += h;
        }
        if (!(row_sum == rows.outcomes()[k]))
            return false;
    }
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (!(col_sums[j] == cols.outcomes()[j]))
            return false;
    return true;
}

bool verify_verdict(const CompatibilityVerdict& v, const Measurement& rows, const Measurement& cols)
{
    if (const auto* c = std::get_if<Compatible>(&v))
        return verify_joint(c->joint, rows, cols);
    return std::get<Incompatible>(v).certificate.verify();
}

CompatibilityVerdict compatible_2outcome(const Effect& a, const Effect& b)
{
    require_same(a.space(), b.space(), "compatible_2outcome");
    const SpacePtr& space = a.space();
    const std::size_t width = space->dimension() + 1;

    LpProblem lp = LpProblem::with_variables(width);
    for (const auto& v : space->vertices()) {
        const Rational av = a.functional()(v);
        const Rational bv = b.functional()(v);
        const RationalVector row = evaluation_row(v, width, 0);
        lp.add_row(row, Relation::GreaterEqual, 0);
        lp.add_row(row, Relation::GreaterEqual, av + bv - 1);
        lp.add_row(row, Relation::LessEqual, av);
        lp.add_row(row, Relation::LessEqual, bv);
    }
    const LpOutcome outcome = check_feasibility(lp);
    if (!std::holds_alternative<LpOptimal>(outcome))
        return incompatible_from(std::move(lp), outcome);
    const AffineFunctional c = read_functional(space, std::get<LpOptimal>(outcome).solution, 0);
    return Compatible{joint_2x2(a.functional(), b.functional(), c)};
}

CompatibilityVerdict compatible_general(const Measurement& rows, const Measurement& cols)
{
    require_same(rows.space(), cols.space(), "compatible_general");
    const SpacePtr& space = rows.space();
    const std::size_t d = space->dimension();
    const std::size_t block = d + 1;
    const std::size_t m = rows.size();
    const std::size_t n = cols.size();
    const std::size_t width = m * n * block;
    auto offset = [&](std::size_t k, std::size_t j) { return (k * n + j) * block; };

    LpProblem lp = LpProblem::with_variables(width);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& v : space->vertices())
                lp.add_row(evaluation_row(v, width, offset(k, j)), Relation::GreaterEqual, 0);

    // Marginals, one equation per coefficient.
    auto coefficient = [](const AffineFunctional& f, std::size_t t) { return t == 0 ? f.constant() : f.linear()[t - 1]; };
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < block; ++t) {
            RationalVector row(width, Rational(0));
            for (std::size_t j = 0; j < n; ++j)
                row[offset(k, j) + t] = 1;
            lp.add_row(row, Relation::Equal, coefficient(rows.outcomes()[k], t));
        }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < block; ++t) {
            RationalVector row(width, Rational(0));
            for (std::size_t k = 0; k < m; ++k)
                row[offset(k, j) + t] = 1;
            lp.add_row(row, Relation::Equal, coefficient(cols.outcomes()[j], t));
        }

    const LpOutcome outcome = check_feasibility(lp);
    if (!std::holds_alternative<LpOptimal>(outcome))
        return incompatible_from(std::move(lp), outcome);
    const auto& x = std::get<LpOptimal>(outcome).solution;
    JointFamily joint(m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < n; ++j)
            joint[k].push_back(read_functional(space, x, offset(k, j)));
    return Compatible{std::move(joint)};
}

CompatibilityVerdict joint_from_riesz(const Measurement& a, const Measurement& b, const RieszDecomposer& decomposer)
{
    require_same(a.space(), b.space(), "joint_from_riesz");
    if (a.size() != 2 || b.size() != 2)
        throw GeometryError("joint_from_riesz: both measurements must have two outcomes");
    const auto& a1 = a.outcomes()[0];
    const auto& b1 = b.outcomes()[0];
    const auto& b2 = b.outcomes()[1];

    // a_1 <= e = b_1 + b_2
    const RieszResult split = decomposer(RieszInstance(a1, b1, b2));
    if (const auto* w = std::get_if<InfeasibilityWitness>(&split))
        return Incompatible{*w};
    const auto& dec = std::get<RieszDecomposition>(split);
    const AffineFunctional& c11 = dec.u1;
    const AffineFunctional& c12 = dec.u2;
    return Compatible{{{c11, c12}, {b1 - c11, b2 - c12}}};
}

Effect noisy_effect(const Effect& a, const Rational& lambda)
{
    if (sgn(lambda) < 0 || lambda > 1)
        throw GeometryError("noise parameter must lie in [0,1]");
    AffineFunctional out = lambda * a.functional();
    out += AffineFunctional::constant_function(a.space(), (1 - lambda) / 2);
    return Effect(std::move(out));
}

RobustnessResult incompatibility_robustness(const Effect& a, const Effect& b)
{
    require_same(a.space(), b.space(), "incompatibility_robustness");
    const SpacePtr& space = a.space();
    const std::size_t block = space->dimension() + 1;
    const std::size_t lambda = block;
    const Rational half(1, 2);

    // Variables: coefficients of c, then lambda. All four families are
    // linear in (c, lambda) once a_l, b_l are expanded.
    LpProblem lp = LpProblem::with_variables(block + 1);
    lp.objective[lambda] = 1;
    lp.lower[lambda] = Rational(0);
    lp.upper[lambda] = Rational(1);
    for (const auto& v : space->vertices()) {
        const Rational av = a.functional()(v);
        const Rational bv = b.functional()(v);
        RationalVector row = evaluation_row(v, block + 1, 0);
        lp.add_row(row, Relation::GreaterEqual, 0);
        row[lambda] = -(av + bv - 1);
        lp.add_row(row, Relation::GreaterEqual, 0);
        row[lambda] = -(av - half);
        lp.add_row(row, Relation::LessEqual, half);
        row[lambda] = -(bv - half);
        lp.add_row(row, Relation::LessEqual, half);
    }
    const LpOutcome outcome = solve(lp);
    // lambda = 0, c = 0 is always feasible and lambda is bounded.
    const auto& opt = std::get<LpOptimal>(outcome);
    const Rational lambda_star = opt.value;
    const AffineFunctional c = read_functional(space, opt.solution, 0);
    return RobustnessResult{lambda_star, joint_2x2(noisy_effect(a, lambda_star).functional(),
                                                   noisy_effect(b, lambda_star).functional(), c)};
}

bool is_orthogonal(const AffineFunctional& a, const AffineFunctional& b)
{
    require_same(a.space(), b.space(), "is_orthogonal");
    if (!a.is_nonnegative() || !b.is_nonnegative())
        throw GeometryError("is_orthogonal: inputs must be non-negative on K");
    const SpacePtr& space = a.space();
    const std::size_t width = space->dimension() + 1;

    LpProblem lp = LpProblem::with_variables(width);
    for (const auto& v : space->vertices()) {
        const RationalVector row = evaluation_row(v, width, 0);
        for (std::size_t t = 0; t < width; ++t)
            lp.objective[t] += row[t];
        lp.add_row(row, Relation::GreaterEqual, 0);
        lp.add_row(row, Relation::LessEqual, std::min(a(v), b(v)));
    }
    const LpOutcome outcome = solve(lp);
    return sgn(std::get<LpOptimal>(outcome).value) == 0;
}

std::vector<std::size_t> maximizing_face(const AffineFunctional& a)
{
    const RationalVector vals = a.vertex_values();
    const Rational top = *std::max_element(vals.begin(), vals.end());
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == top)
            face.push_back(i);
    return face;
}

bool check_ortho_lemma(const AffineFunctional& a, const AffineFunctional& b)
{
    require_same(a.space(), b.space(), "check_ortho_lemma");
    if (!a.is_nonnegative() || !b.is_nonnegative())
        throw GeometryError("check_ortho_lemma: inputs must be non-negative on K");
    if (sgn(sup_norm(a)) == 0)
        throw GeometryError("check_ortho_lemma: a must be nonzero on K");
    for (std::size_t i : maximizing_face(a))
        if (sgn(b.at_vertex(i)) != 0)
            return false;
    return true;
}

} // namespace gptcompat
