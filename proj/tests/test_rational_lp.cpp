#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gptcompat/rational_lp.hpp"

#include "lp_corpus.hpp"

#include <cstdint>
#include <functional>
#include <random>

using namespace gptcompat;
using namespace gptcompat::testing;

namespace {

RationalVector vec(std::initializer_list<Rational> xs)
{
    return RationalVector(xs);
}

const LpOptimal& optimal(const LpOutcome& o)
{
    REQUIRE(std::holds_alternative<LpOptimal>(o));
    return std::get<LpOptimal>(o);
}

} // namespace

TEST_CASE("maximize x subject to x <= 3")
{
    LpProblem p = LpProblem::with_variables(1);
    p.objective = vec({1});
    p.add_row(vec({1}), Relation::LessEqual, 3);
    const auto o = solve(p);
    const auto& opt = optimal(o);
    CHECK(opt.solution == vec({3}));
    CHECK(opt.value == 3);
    CHECK(verify_certificate(p, o));
}

TEST_CASE("x >= 1 and x <= 0 is infeasible with multipliers (1,1)")
{
    LpProblem p = LpProblem::with_variables(1);
    p.add_row(vec({1}), Relation::GreaterEqual, 1);
    p.add_row(vec({1}), Relation::LessEqual, 0);
    const auto o = solve(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(o));
    CHECK(std::get<LpInfeasible>(o).farkas == vec({1, 1}));
    CHECK(verify_certificate(p, o));
}

TEST_CASE("maximize x without constraints is unbounded along +x")
{
    LpProblem p = LpProblem::with_variables(1);
    p.objective = vec({1});
    const auto o = solve(p);
    REQUIRE(std::holds_alternative<LpUnbounded>(o));
    CHECK(std::get<LpUnbounded>(o).ray == vec({1}));
    CHECK(verify_certificate(p, o));
}

TEST_CASE("check_feasibility examples")
{
    SUBCASE("x = 1, x >= 0")
    {
        LpProblem p = LpProblem::with_variables(1);
        p.objective = vec({5});
        p.add_row(vec({1}), Relation::Equal, 1);
        p.add_row(vec({1}), Relation::GreaterEqual, 0);
        const auto o = check_feasibility(p);
        CHECK(optimal(o).solution == vec({1}));
    }
    SUBCASE("x <= -1, x >= 0")
    {
        LpProblem p = LpProblem::with_variables(1);
        p.add_row(vec({1}), Relation::LessEqual, -1);
        p.add_row(vec({1}), Relation::GreaterEqual, 0);
        const auto o = check_feasibility(p);
        REQUIRE(std::holds_alternative<LpInfeasible>(o));
        CHECK(verify_certificate(p, o));
    }
    SUBCASE("empty constraint set")
    {
        LpProblem p = LpProblem::with_variables(3);
        const auto o = check_feasibility(p);
        CHECK(optimal(o).solution == vec({0, 0, 0}));
    }
}

TEST_CASE("tampered certificates are rejected")
{
    LpProblem p = LpProblem::with_variables(2);
    p.add_row(vec({1, 1}), Relation::GreaterEqual, 3);
    p.add_row(vec({1, 0}), Relation::LessEqual, 1);
    p.add_row(vec({0, 1}), Relation::LessEqual, 1);
    auto o = solve(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(o));
    REQUIRE(verify_certificate(p, o));

    auto broken = std::get<LpInfeasible>(o);
    broken.farkas[1] += Rational(1, 7);
    CHECK_FALSE(verify_certificate(p, LpOutcome{broken}));

    auto negative = std::get<LpInfeasible>(o);
    negative.farkas[0] = -1;
    CHECK_FALSE(verify_certificate(p, LpOutcome{negative}));
}

TEST_CASE("a solution off by 1/10^6 fails verification")
{
    LpProblem p = LpProblem::with_variables(2);
    p.objective = vec({1, 1});
    p.add_row(vec({1, 2}), Relation::LessEqual, 4);
    p.add_row(vec({3, 1}), Relation::LessEqual, 6);
    p.lower = {Rational(0), Rational(0)};
    auto o = solve(p);
    auto opt = optimal(o);
    CHECK(verify_certificate(p, o));
    CHECK(opt.value == Rational(14, 5));

    opt.solution[0] += Rational(1, 1000000);
    opt.value = dot(p.objective, opt.solution);
    CHECK_FALSE(verify_certificate(p, LpOutcome{opt}));
}

TEST_CASE("optimal certificate with a lowered value is rejected")
{
    LpProblem p = LpProblem::with_variables(1);
    p.objective = vec({1});
    p.upper[0] = Rational(2);
    p.add_row(vec({1}), Relation::LessEqual, 5);
    auto o = solve(p);
    CHECK(optimal(o).value == 2);
    CHECK(verify_certificate(p, o));
    // feasible but suboptimal point: the dual bound no longer matches
    LpOptimal worse{vec({1}), 1, optimal(o).dual};
    CHECK_FALSE(verify_certificate(p, LpOutcome{worse}));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule")
{
    LpProblem p = LpProblem::with_variables(4);
    p.objective = vec({Rational(3, 4), -20, Rational(1, 2), -6});
    p.add_row(vec({Rational(1, 4), -8, -1, 9}), Relation::LessEqual, 0);
    p.add_row(vec({Rational(1, 2), -12, Rational(-1, 2), 3}), Relation::LessEqual, 0);
    p.add_row(vec({0, 0, 1, 0}), Relation::LessEqual, 1);
    for (auto& l : p.lower)
        l = Rational(0);
    const auto o = solve(p);
    CHECK(optimal(o).value == Rational(5, 4));
    CHECK(verify_certificate(p, o));
}

TEST_CASE("Kuhn's degenerate cycling example terminates")
{
    // max 2x1 + 3x2 - x3 - 12x4
    LpProblem p = LpProblem::with_variables(4);
    p.objective = vec({2, 3, -1, -12});
    p.add_row(vec({-2, -9, 1, 9}), Relation::LessEqual, 0);
    p.add_row(vec({Rational(1, 3), 1, Rational(-1, 3), -2}), Relation::LessEqual, 0);
    p.add_row(vec({2, 3, -1, -12}), Relation::LessEqual, 2);
    for (auto& l : p.lower)
        l = Rational(0);
    const auto o = solve(p);
    CHECK(optimal(o).value == 2);
    CHECK(verify_certificate(p, o));
}

TEST_CASE("equality systems: redundant and contradictory rows")
{
    SUBCASE("redundant equality row")
    {
        LpProblem p = LpProblem::with_variables(2);
        p.objective = vec({1, 0});
        p.add_row(vec({1, 1}), Relation::Equal, 2);
        p.add_row(vec({2, 2}), Relation::Equal, 4);
        p.lower = {Rational(0), Rational(0)};
        const auto o = solve(p);
        CHECK(optimal(o).value == 2);
        CHECK(verify_certificate(p, o));
    }
    SUBCASE("contradictory equalities")
    {
        LpProblem p = LpProblem::with_variables(2);
        p.add_row(vec({1, 1}), Relation::Equal, 2);
        p.add_row(vec({2, 2}), Relation::Equal, 5);
        const auto o = solve(p);
        REQUIRE(std::holds_alternative<LpInfeasible>(o));
        CHECK(verify_certificate(p, o));
    }
    SUBCASE("zero-variable problem with negative rhs")
    {
        LpProblem p = LpProblem::with_variables(0);
        p.add_row({}, Relation::GreaterEqual, 1);
        const auto o = solve(p);
        REQUIRE(std::holds_alternative<LpInfeasible>(o));
        CHECK(verify_certificate(p, o));
    }
}

TEST_CASE("unbounded with bounds and rows")
{
    LpProblem p = LpProblem::with_variables(2);
    p.objective = vec({1, 1});
    p.add_row(vec({1, -1}), Relation::LessEqual, 1);
    p.lower = {Rational(0), Rational(2)};
    const auto o = solve(p);
    REQUIRE(std::holds_alternative<LpUnbounded>(o));
    CHECK(verify_certificate(p, o));
}

TEST_CASE("dimension mismatch is reported before solving")
{
    LpProblem p = LpProblem::with_variables(2);
    CHECK_THROWS_AS(p.add_row(vec({1}), Relation::LessEqual, 0), LpDimensionError);
    p.rhs.push_back(1);
    CHECK_THROWS_AS(solve(p), LpDimensionError);

    LpProblem q = LpProblem::with_variables(1);
    q.add_row(vec({1}), Relation::LessEqual, 0);
    CHECK_THROWS_AS(verify_certificate(q, LpOutcome{LpInfeasible{vec({1, 2})}}), LpDimensionError);
}

TEST_CASE("debug dump lists one constraint per line")
{
    LpProblem p = LpProblem::with_variables(2);
    p.objective = vec({1, Rational(-1, 2)});
    p.add_row(vec({Rational(2, 3), 0}), Relation::GreaterEqual, Rational(1, 5));
    p.lower[1] = Rational(0);
    CHECK(p.dump() == "maximize 1*x0 + -1/2*x1\nr0: 2/3*x0 >= 1/5\nb1: 0 <= x1 <= +inf\n");
}

TEST_CASE("oracle agreement on 500 random bounded problems")
{
    std::mt19937_64 rng(20240611);
    int infeasible = 0;
    for (int t = 0; t < 500; ++t) {
        const LpProblem p = random_bounded_problem(rng);
        const auto o = solve(p);
        INFO(p.dump());
        REQUIRE(verify_certificate(p, o));
        const auto oracle = brute_force_optimum(p);
        if (!oracle) {
            CHECK(std::holds_alternative<LpInfeasible>(o));
            ++infeasible;
        } else {
            REQUIRE(std::holds_alternative<LpOptimal>(o));
            CHECK(std::get<LpOptimal>(o).value == *oracle);
        }
    }
    // the generator should exercise both branches
    CHECK(infeasible > 20);
    CHECK(infeasible < 480);
}

TEST_CASE("solving is deterministic")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const LpProblem p = random_bounded_problem(rng);
        const auto a = solve(p);
        const auto b = solve(p);
        REQUIRE(a.index() == b.index());
        if (const auto* x = std::get_if<LpOptimal>(&a)) {
            const auto& y = std::get<LpOptimal>(b);
            CHECK(x->solution == y.solution);
            CHECK(x->dual == y.dual);
        } else if (const auto* x = std::get_if<LpInfeasible>(&a)) {
            CHECK(x->farkas == std::get<LpInfeasible>(b).farkas);
        }
    }
}

TEST_CASE("named corpus: every outcome carries a valid certificate")
{
    for (const auto& [name, p] : named_problems()) {
        CAPTURE(name);
        const auto o = solve(p);
        CHECK(verify_certificate(p, o));
        const auto f = check_feasibility(p);
        LpProblem zero = p;
        zero.objective.assign(p.num_variables(), Rational(0));
        CHECK(verify_certificate(zero, f));
        CHECK(std::holds_alternative<LpInfeasible>(o) == std::holds_alternative<LpInfeasible>(f));
    }
}
