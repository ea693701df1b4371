#include "gptcompat/riesz.hpp"

namespace gptcompat {

RieszInstance::RieszInstance(AffineFunctional u, AffineFunctional v1, AffineFunctional v2)
    : u_(std::move(u)), v1_(std::move(v1)), v2_(std::move(v2))
{
    if (!same_space(u_.space(), v1_.space()) || !same_space(u_.space(), v2_.space()))
        throw SpaceMismatch("RieszInstance: u, v1, v2 must share a state space");
    if (!v1_.is_nonnegative() || !v2_.is_nonnegative() || !u_.is_nonnegative())
        throw GeometryError("RieszInstance: u, v1, v2 must be non-negative on K");
    if (!(v1_ + v2_ - u_).is_nonnegative())
        throw GeometryError("RieszInstance: u <= v1 + v2 fails at some vertex");
}

RieszResult riesz_decompose(const RieszInstance& inst)
{
    const SpacePtr& space = inst.u().space();
    const std::size_t width = space->dimension() + 1;

    LpProblem lp = LpProblem::with_variables(width);
    for (const auto& v : space->vertices()) {
        RationalVector row(width);
        row[0] = 1;
        for (std::size_t k = 0; k < v.size(); ++k)
            row[k + 1] = v[k];
        const Rational uv = inst.u()(v);
        lp.add_row(row, Relation::GreaterEqual, 0);
        lp.add_row(row, Relation::LessEqual, inst.v1()(v));
        // 0 <= u - u1 <= v2  <=>  u - v2 <= u1 <= u
        lp.add_row(row, Relation::LessEqual, uv);
        lp.add_row(row, Relation::GreaterEqual, uv - inst.v2()(v));
    }
    const LpOutcome outcome = check_feasibility(lp);
    if (const auto* inf = std::get_if<LpInfeasible>(&outcome))
        return InfeasibilityWitness{std::make_shared<const LpProblem>(std::move(lp)), inf->farkas};

    const auto& x = std::get<LpOptimal>(outcome).solution;
    AffineFunctional u1(space, x[0], RationalVector(x.begin() + 1, x.end()));
    AffineFunctional u2 = inst.u() - u1;
    return RieszDecomposition{std::move(u1), std::move(u2)};
}

bool verify_decomposition(const RieszInstance& inst, const RieszDecomposition& dec)
{
    if (!same_space(dec.u1.space(), inst.u().space()) || !same_space(dec.u2.space(), inst.u().space()))
        return false;
    if (!(dec.u1 + dec.u2 == inst.u()))
        return false;
    return dec.u1.is_nonnegative() && dec.u2.is_nonnegative() && (inst.v1() - dec.u1).is_nonnegative() &&
           (inst.v2() - dec.u2).is_nonnegative();
}

} // namespace gptcompat
