#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gptcompat/order_geometry.hpp"
#include "gptcompat/random.hpp"

using namespace gptcompat;

namespace {

SpacePtr space_of(std::vector<Point> pts)
{
    return canonicalize_vertices(pts);
}

SpacePtr square()
{
    return generate_space(SpaceSpec::hypercube(2));
}

SpacePtr triangle()
{
    return generate_space(SpaceSpec::simplex(2));
}

AffineFunctional fn(const SpacePtr& s, Rational c, RationalVector lin)
{
    return AffineFunctional(s, std::move(c), std::move(lin));
}

RationalVector random_weights(SeededRng& rng, std::size_t n)
{
    RationalVector w(n);
    Rational total = 0;
    for (auto& x : w) {
        x = rng.integer(0, 9);
        total += x;
    }
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    for (auto& x : w)
        x /= total;
    return w;
}

std::vector<SpacePtr> corpus()
{
    std::vector<SpacePtr> out;
    for (std::size_t n = 1; n <= 4; ++n)
        out.push_back(generate_space(SpaceSpec::simplex(n)));
    for (std::size_t n = 2; n <= 3; ++n) {
        out.push_back(generate_space(SpaceSpec::hypercube(n)));
        out.push_back(generate_space(SpaceSpec::cross_polytope(n)));
    }
    for (std::uint64_t s = 0; s < 6; ++s)
        out.push_back(generate_space(SpaceSpec::random_polytope(7, 2 + s % 2, s)));
    return out;
}

} // namespace

TEST_CASE("canonicalize_vertices: examples")
{
    auto sq = space_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {Rational(1, 2), Rational(1, 2)}});
    CHECK(sq->vertices() == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    auto seg = space_of({{0}, {1}});
    CHECK(seg->vertices() == std::vector<Point>{{0}, {1}});

    auto col = space_of({{0, 0}, {1, 0}, {2, 0}});
    CHECK(col->vertices() == std::vector<Point>{{0, 0}, {2, 0}});

    auto dup = space_of({{1, 1}, {1, 1}, {0, 0}});
    CHECK(dup->vertices() == std::vector<Point>{{0, 0}, {1, 1}});
}

TEST_CASE("canonicalize_vertices: errors")
{
    CHECK_THROWS_AS(canonicalize_vertices({}), GeometryError);
    CHECK_THROWS_AS(canonicalize_vertices({{0, 0}, {1}}), GeometryError);
}

TEST_CASE("canonicalize_vertices: hidden interior points are removed")
{
    SeededRng rng(7);
    const auto cube = generate_space(SpaceSpec::hypercube(3));
    std::vector<Point> pts = cube->vertices();
    for (int k = 0; k < 20; ++k) {
        const RationalVector w = random_weights(rng, cube->size());
        Point p(3, Rational(0));
        for (std::size_t i = 0; i < cube->size(); ++i)
            for (std::size_t j = 0; j < 3; ++j)
                p[j] += w[i] * cube->vertices()[i][j];
        pts.push_back(p);
    }
    std::reverse(pts.begin(), pts.end());
    CHECK(canonicalize_vertices(pts)->vertices() == cube->vertices());
}

TEST_CASE("canonicalize_vertices is idempotent")
{
    for (const auto& s : corpus())
        CHECK(*canonicalize_vertices(s->vertices()) == *s);
}

TEST_CASE("is_simplex: examples")
{
    CHECK(is_simplex(*triangle()));
    CHECK_FALSE(is_simplex(*square()));
    CHECK(is_simplex(*space_of({{0}, {1}})));
    CHECK(is_simplex(*space_of({{3, 4}})));
}

TEST_CASE("is_bauer_simplex agrees with is_simplex")
{
    CHECK(is_bauer_simplex(*triangle()));
    CHECK_FALSE(is_bauer_simplex(*square()));
    CHECK(is_bauer_simplex(*space_of({{Rational(1, 3), 2}})));
    for (const auto& s : corpus())
        CHECK(is_bauer_simplex(*s) == is_simplex(*s));
}

TEST_CASE("is_simplex on the generator families")
{
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(is_simplex(*generate_space(SpaceSpec::simplex(n))));
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK_FALSE(is_simplex(*generate_space(SpaceSpec::hypercube(n))));
        CHECK_FALSE(is_simplex(*generate_space(SpaceSpec::cross_polytope(n))));
    }
    CHECK(is_simplex(*generate_space(SpaceSpec::hypercube(1))));
    CHECK(is_simplex(*generate_space(SpaceSpec::cross_polytope(1))));
    CHECK(is_simplex(*generate_space(SpaceSpec::cross_polytope(0))));
}

TEST_CASE("is_simplex is invariant under invertible affine maps")
{
    SeededRng rng(11);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            // upper triangular with nonzero diagonal, plus a shift
            std::vector<RationalVector> m(n, RationalVector(n, Rational(0)));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j)
                    m[i][j] = rng.integer(-3, 3);
                m[i][i] = rng.coin() ? rng.integer(1, 4) : -rng.integer(1, 4);
            }
            RationalVector shift(n);
            for (auto& x : shift)
                x = rng.rational(-2, 2, 3);
            auto map_all = [&](const SpacePtr& s) {
                std::vector<Point> pts;
                for (const auto& v : s->vertices()) {
                    Point p = shift;
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            p[i] += m[i][j] * v[j];
                    pts.push_back(p);
                }
                return canonicalize_vertices(pts);
            };
            CHECK(is_simplex(*map_all(generate_space(SpaceSpec::simplex(n)))));
            if (n >= 2)
                CHECK_FALSE(is_simplex(*map_all(generate_space(SpaceSpec::hypercube(n)))));
        }
    }
}

TEST_CASE("is_simplex: more than d+1 vertices never form a simplex")
{
    for (const auto& s : corpus())
        if (s->size() > s->dimension() + 1)
            CHECK_FALSE(is_simplex(*s));
}

TEST_CASE("unit_effect")
{
    const auto sq = square();
    const Effect e = unit_effect(sq);
    CHECK(e.functional().constant() == 1);
    CHECK(e.functional().linear() == RationalVector{0, 0});
    for (std::size_t i = 0; i < sq->size(); ++i)
        CHECK(e.functional().at_vertex(i) == 1);
    CHECK((e.functional() + Rational(-1) * e.functional()).is_zero());
    CHECK((e.functional() + Rational(-1) * e.functional()) == AffineFunctional::zero(sq));
}

TEST_CASE("sup_norm: examples")
{
    const auto sq = square();
    CHECK(sup_norm(AffineFunctional::coordinate(sq, 0)) == 1);
    CHECK(sup_norm(AffineFunctional::zero(sq)) == 0);
    const auto seg = generate_space(SpaceSpec::simplex(1));
    CHECK(sup_norm(fn(seg, -1, {2})) == 1);
    CHECK(sup_norm(fn(sq, Rational(-5, 2), {1, 1})) == Rational(5, 2));
}

TEST_CASE("sup_norm satisfies the norm axioms")
{
    SeededRng rng(23);
    for (const auto& s : corpus()) {
        for (int k = 0; k < 20; ++k) {
            auto draw = [&] {
                RationalVector lin(s->dimension());
                for (auto& x : lin)
                    x = rng.rational(-5, 5, 4);
                return fn(s, rng.rational(-5, 5, 4), lin);
            };
            const auto f = draw();
            const auto g = draw();
            const Rational alpha = rng.rational(-4, 4, 3);
            CHECK(sup_norm(f + g) <= sup_norm(f) + sup_norm(g));
            CHECK(sup_norm(alpha * f) == abs(alpha) * sup_norm(f));
            CHECK(sup_norm(f) >= 0);
        }
        CHECK(sup_norm(AffineFunctional::zero(s)) == 0);
    }
}

TEST_CASE("sup_norm vanishes only on the zero functional of a full-dimensional space")
{
    SeededRng rng(29);
    for (const auto& s : corpus()) {
        if (s->size() <= s->dimension())
            continue;
        for (int k = 0; k < 30; ++k) {
            RationalVector lin(s->dimension());
            for (auto& x : lin)
                x = rng.coin() ? Rational(0) : rng.rational(-2, 2, 2);
            const auto f = fn(s, rng.coin() ? Rational(0) : rng.rational(-2, 2, 2), lin);
            CHECK((sup_norm(f) == 0) == f.is_zero());
        }
    }
}

TEST_CASE("validate_effect: examples")
{
    const auto sq = square();
    CHECK(validate_effect(AffineFunctional::coordinate(sq, 0)));
    CHECK_FALSE(validate_effect(fn(sq, 0, {2, 0})));
    CHECK(validate_effect(unit_effect(sq).functional()));
    CHECK_FALSE(validate_effect(fn(sq, Rational(-1, 100), {0, 0})));
    CHECK_THROWS_AS(Effect{fn(sq, 0, {2, 0})}, GeometryError);
}

TEST_CASE("validate_measurement: examples")
{
    const auto sq = square();
    const auto x = AffineFunctional::coordinate(sq, 0);
    const auto one = unit_effect(sq).functional();
    std::vector<AffineFunctional> ok{x, one - x};
    CHECK(validate_measurement(ok));

    const auto tri = triangle();
    const auto l1 = AffineFunctional::coordinate(tri, 0);
    const auto l2 = AffineFunctional::coordinate(tri, 1);
    const auto l0 = unit_effect(tri).functional() - l1 - l2;
    std::vector<AffineFunctional> bary{l0, l1, l2};
    CHECK(validate_measurement(bary));

    std::vector<AffineFunctional> bad{x, x};
    CHECK_FALSE(validate_measurement(bad));
    CHECK_THROWS_AS(Measurement{bad}, GeometryError);

    std::vector<AffineFunctional> negative{fn(sq, 0, {2, 0}), fn(sq, 1, {-2, 0})};
    CHECK_FALSE(validate_measurement(negative));

    std::vector<AffineFunctional> empty;
    CHECK_FALSE(validate_measurement(empty));
}

TEST_CASE("measurement outcomes are effects")
{
    SeededRng rng(31);
    for (const auto& s : corpus()) {
        for (int k = 0; k < 10; ++k) {
            const Effect a = sample_effect(s, rng.integer(0, 1 << 30));
            const Effect b = sample_effect(s, rng.integer(0, 1 << 30));
            // (a b, a (1-b), 1-a) is not affine in general; split a instead
            const Rational t = rng.rational(0, 1, 5);
            std::vector<AffineFunctional> outs{t * a.functional(), (1 - t) * a.functional(),
                                               a.complement().functional()};
            const Measurement m(outs);
            for (const auto& f : m.outcomes())
                CHECK(validate_effect(f));
            const Measurement two = Measurement::two_outcome(b);
            for (const auto& f : two.outcomes())
                CHECK(validate_effect(f));
        }
    }
    CHECK(Measurement::trivial(square()).size() == 1);
}

TEST_CASE("functionals act affinely on convex combinations")
{
    SeededRng rng(37);
    for (const auto& s : corpus()) {
        for (int k = 0; k < 20; ++k) {
            RationalVector lin(s->dimension());
            for (auto& x : lin)
                x = rng.rational(-6, 6, 5);
            const auto f = fn(s, rng.rational(-3, 3, 7), lin);
            const RationalVector w = random_weights(rng, s->size());
            const State psi = State::from_weights(s, w);
            Rational expected = 0;
            for (std::size_t i = 0; i < s->size(); ++i)
                expected += w[i] * f.at_vertex(i);
            CHECK(f(psi.point()) == expected);
            CHECK(psi(f) == expected);
        }
    }
}

TEST_CASE("State: construction checks")
{
    const auto tri = triangle();
    const State v = State::vertex(tri, 2);
    CHECK(v.point() == tri->vertices()[2]);
    const State c = State::from_weights(tri, {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(c.point() == Point{Rational(1, 3), Rational(1, 3)});
    CHECK(c(unit_effect(tri).functional()) == 1);
    CHECK_THROWS_AS(State::from_weights(tri, {1, 1, -1}), GeometryError);
    CHECK_THROWS_AS(State::from_weights(tri, {Rational(1, 2), Rational(1, 3), 0}), GeometryError);
    CHECK_THROWS_AS(State::from_weights(tri, {1, 0}), GeometryError);
    CHECK_THROWS(State::vertex(tri, 3));
}

TEST_CASE("AffineFunctional: arithmetic and space checks")
{
    const auto sq = square();
    const auto other = square();
    const auto x = AffineFunctional::coordinate(sq, 0);
    const auto y = AffineFunctional::coordinate(sq, 1);
    CHECK((x + y)({1, 1}) == 2);
    CHECK((x - y)({1, 0}) == 1);
    CHECK((-x)({1, 0}) == -1);
    CHECK((Rational(3, 2) * y)({0, 1}) == Rational(3, 2));
    CHECK(x.vertex_values() == RationalVector{0, 0, 1, 1});
    CHECK(x.is_nonnegative());
    CHECK_FALSE((x - y).is_nonnegative());
    CHECK_THROWS_AS(AffineFunctional(sq, 0, {1}), GeometryError);
    CHECK_THROWS_AS(AffineFunctional::coordinate(sq, 2), GeometryError);
    // equal spaces held by different pointers still combine
    CHECK(same_space(sq, other));
    CHECK_NOTHROW(x + AffineFunctional::coordinate(other, 1));
    const auto tri = triangle();
    CHECK_FALSE(same_space(sq, tri));
    CHECK_THROWS_AS(x + AffineFunctional::coordinate(tri, 0), SpaceMismatch);
}

TEST_CASE("generate_space: examples")
{
    CHECK(generate_space(SpaceSpec::simplex(2))->vertices() == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(generate_space(SpaceSpec::hypercube(2))->vertices() == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(generate_space(SpaceSpec::cross_polytope(2))->vertices() ==
          std::vector<Point>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
    const auto r1 = generate_space(SpaceSpec::random_polytope(6, 2, 42));
    const auto r2 = generate_space(SpaceSpec::random_polytope(6, 2, 42));
    CHECK(*r1 == *r2);
    CHECK(r1->size() >= 1);
    CHECK(r1->size() <= 6);
    CHECK(generate_space(SpaceSpec::simplex(0))->size() == 1);
    CHECK(generate_space(SpaceSpec::hypercube(0))->size() == 1);
}

TEST_CASE("SpaceSpec: parse and id round-trip")
{
    for (const std::string text : {"simplex:3", "hypercube:2", "cross:4", "random:6:2:42"})
        CHECK(SpaceSpec::parse(text).id() == text);
    for (const std::string bad : {"", "simplex", "simplex:x", "cube:2", "random:0:2:1", "random:4:2", "simplex:-1"})
        CHECK_THROWS_AS(SpaceSpec::parse(bad), GeometryError);
}

TEST_CASE("sample_effect: always an effect, deterministic, uses a sub-interval")
{
    const auto sq = square();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Effect e = sample_effect(sq, seed);
        CHECK(validate_effect(e.functional()));
        CHECK(sample_effect(sq, seed) == e);
        const RationalVector vals = e.functional().vertex_values();
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        CHECK(*lo >= 0);
        CHECK(*hi <= 1);
        CHECK(sup_norm(e.functional()) == *hi);
    }
    for (const auto& s : corpus())
        for (std::uint64_t seed = 0; seed < 50; ++seed)
            CHECK(validate_effect(sample_effect(s, seed).functional()));
    // the point space only admits constants
    const auto pt = generate_space(SpaceSpec::simplex(0));
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(validate_effect(sample_effect(pt, seed).functional()));
}

TEST_CASE("sample_effect: values are spread")
{
    // not a fixed interval: both narrow and full-range effects occur
    const auto sq = square();
    bool full = false, narrow = false;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const RationalVector vals = sample_effect(sq, seed).functional().vertex_values();
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        full = full || (*lo == 0 && *hi == 1);
        narrow = narrow || (*hi - *lo < Rational(1, 2));
    }
    CHECK(full);
    CHECK(narrow);
}
