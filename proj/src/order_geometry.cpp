#include "gptcompat/order_geometry.hpp"

#include "gptcompat/linalg.hpp"
#include "gptcompat/random.hpp"
#include "gptcompat/rational_lp.hpp"

#include <algorithm>
#include <sstream>

namespace gptcompat {

namespace {

// Is target a convex combination of the points other than index skip?
bool in_hull_of_others(const std::vector<Point>& pts, std::size_t skip)
{
    const std::size_t d = pts[skip].size();
    const std::size_t n = pts.size() - 1;
    LpProblem lp = LpProblem::with_variables(n);
    for (auto& l : lp.lower)
        l = Rational(0);
    lp.add_row(RationalVector(n, Rational(1)), Relation::Equal, 1);
    for (std::size_t k = 0; k < d; ++k) {
        RationalVector row;
        row.reserve(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != skip)
                row.push_back(pts[i][k]);
        lp.add_row(row, Relation::Equal, pts[skip][k]);
    }
    return std::holds_alternative<LpOptimal>(check_feasibility(lp));
}

} // namespace

SpacePtr canonicalize_vertices(const std::vector<Point>& points)
{
    if (points.empty())
        throw GeometryError("canonicalize_vertices: empty point list");
    const std::size_t d = points.front().size();
    for (const auto& p : points)
        if (p.size() != d)
            throw GeometryError("canonicalize_vertices: points of mixed dimension");

    std::vector<Point> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Point> extreme;
    if (pts.size() == 1) {
        extreme = pts;
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!in_hull_of_others(pts, i))
                extreme.push_back(pts[i]);
    }
    return SpacePtr(new StateSpace(d, std::move(extreme)));
}

bool same_space(const SpacePtr& a, const SpacePtr& b)
{
    return a == b || (a && b && *a == *b);
}

// ---- AffineFunctional

AffineFunctional::AffineFunctional(SpacePtr space, Rational constant, RationalVector linear)
    : space_(std::move(space)), constant_(std::move(constant)), linear_(std::move(linear))
{
    if (!space_)
        throw GeometryError("AffineFunctional: null state space");
    if (linear_.size() != space_->dimension())
        throw GeometryError("AffineFunctional: expected " + std::to_string(space_->dimension()) +
                            " linear coefficients, got " + std::to_string(linear_.size()));
}

AffineFunctional AffineFunctional::zero(const SpacePtr& space)
{
    return constant_function(space, 0);
}

AffineFunctional AffineFunctional::constant_function(const SpacePtr& space, const Rational& value)
{
    return AffineFunctional(space, value, RationalVector(space->dimension(), Rational(0)));
}

AffineFunctional AffineFunctional::coordinate(const SpacePtr& space, std::size_t i)
{
    if (i >= space->dimension())
        throw GeometryError("coordinate index " + std::to_string(i) + " out of range");
    RationalVector lin(space->dimension(), Rational(0));
    lin[i] = 1;
    return AffineFunctional(space, 0, std::move(lin));
}

Rational AffineFunctional::operator()(const Point& x) const
{
    return constant_ + dot(linear_, x);
}

RationalVector AffineFunctional::vertex_values() const
{
    RationalVector vals;
    vals.reserve(space_->size());
    for (const auto& v : space_->vertices())
        vals.push_back((*this)(v));
    return vals;
}

bool AffineFunctional::is_zero() const
{
    return sgn(constant_) == 0 && std::all_of(linear_.begin(), linear_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool AffineFunctional::is_nonnegative() const
{
    for (const auto& v : space_->vertices())
        if (sgn((*this)(v)) < 0)
            return false;
    return true;
}

AffineFunctional AffineFunctional::operator-() const
{
    AffineFunctional out = *this;
    out *= -1;
    return out;
}

AffineFunctional& AffineFunctional::operator+=(const AffineFunctional& other)
{
    if (!same_space(space_, other.space_))
        throw SpaceMismatch("adding functionals on different state spaces");
    constant_ += other.constant_;
    for (std::size_t i = 0; i < linear_.size(); ++i)
        linear_[i] += other.linear_[i];
    return *this;
}

AffineFunctional& AffineFunctional::operator-=(const AffineFunctional& other)
{
    if (!same_space(space_, other.space_))
        throw SpaceMismatch("subtracting functionals on different state spaces");
    constant_ -= other.constant_;
    for (std::size_t i = 0; i < linear_.size(); ++i)
        linear_[i] -= other.linear_[i];
    return *this;
}

AffineFunctional& AffineFunctional::operator*=(const Rational& s)
{
    constant_ *= s;
    for (auto& c : linear_)
        c *= s;
    return *this;
}

bool AffineFunctional::operator==(const AffineFunctional& other) const
{
    return same_space(space_, other.space_) && constant_ == other.constant_ && linear_ == other.linear_;
}

// ---- Effect, Measurement, State

Effect::Effect(AffineFunctional f) : f_(std::move(f))
{
    if (!validate_effect(f_))
        throw GeometryError("functional is not an effect (0 <= f <= 1 fails at some vertex)");
}

Effect Effect::complement() const
{
    return Effect(unit_effect(space()).functional() - f_);
}

Measurement::Measurement(std::vector<AffineFunctional> outcomes) : outcomes_(std::move(outcomes))
{
    if (!validate_measurement(outcomes_))
        throw GeometryError("not a measurement: outcomes must be non-negative and sum to the unit");
}

Measurement Measurement::two_outcome(const Effect& a)
{
    return Measurement({a.functional(), a.complement().functional()});
}

Measurement Measurement::trivial(const SpacePtr& space)
{
    return Measurement({unit_effect(space).functional()});
}

State State::from_weights(const SpacePtr& space, RationalVector weights)
{
    if (weights.size() != space->size())
        throw GeometryError("State: one weight per vertex required");
    Rational total = 0;
    for (const auto& w : weights) {
        if (sgn(w) < 0)
            throw GeometryError("State: negative convex weight");
        total += w;
    }
    if (total != 1)
        throw GeometryError("State: convex weights must sum to 1");
    Point x(space->dimension(), Rational(0));
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (std::size_t k = 0; k < x.size(); ++k)
            x[k] += weights[i] * space->vertices()[i][k];
    return State(space, std::move(x), std::move(weights));
}

State State::vertex(const SpacePtr& space, std::size_t i)
{
    RationalVector w(space->size(), Rational(0));
    w.at(i) = 1;
    return from_weights(space, std::move(w));
}

Rational State::operator()(const AffineFunctional& f) const
{
    if (!same_space(space_, f.space()))
        throw SpaceMismatch("evaluating a state on a functional of another space");
    return f(point_);
}

// ---- predicates and norms

bool is_simplex(const StateSpace& space)
{
    const auto& vs = space.vertices();
    if (vs.size() <= 1)
        return true;
    if (vs.size() - 1 > space.dimension())
        return false;
    Matrix diffs(vs.size() - 1, space.dimension());
    for (std::size_t i = 1; i < vs.size(); ++i)
        for (std::size_t k = 0; k < space.dimension(); ++k)
            diffs(i - 1, k) = vs[i][k] - vs[0][k];
    return rank(std::move(diffs)) == vs.size() - 1;
}

bool is_bauer_simplex(const StateSpace& space)
{
    return is_simplex(space);
}

Effect unit_effect(const SpacePtr& space)
{
    return Effect(AffineFunctional::constant_function(space, 1));
}

Rational sup_norm(const AffineFunctional& f)
{
    Rational best = 0;
    for (const auto& v : f.space()->vertices()) {
        Rational val = abs(f(v));
        if (val > best)
            best = std::move(val);
    }
    return best;
}

bool validate_effect(const AffineFunctional& f)
{
    for (const auto& v : f.space()->vertices()) {
        const Rational val = f(v);
        if (sgn(val) < 0 || val > 1)
            return false;
    }
    return true;
}

bool validate_measurement(std::span<const AffineFunctional> outcomes)
{
    if (outcomes.empty())
        return false;
    const SpacePtr& space = outcomes.front().space();
    AffineFunctional total = AffineFunctional::zero(space);
    for (const auto& f : outcomes) {
        if (!same_space(space, f.space()) || !f.is_nonnegative())
            return false;
        total += f;
    }
    return total == AffineFunctional::constant_function(space, 1);
}

// ---- generators

SpaceSpec SpaceSpec::parse(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');)
        parts.push_back(tok);
    auto number = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw GeometryError("bad number in space spec \"" + text + "\"");
        return std::stoull(s);
    };
    if (parts.size() == 2 && parts[0] == "simplex")
        return simplex(number(parts[1]));
    if (parts.size() == 2 && parts[0] == "hypercube")
        return hypercube(number(parts[1]));
    if (parts.size() == 2 && parts[0] == "cross")
        return cross_polytope(number(parts[1]));
    if (parts.size() == 4 && parts[0] == "random") {
        const auto pts = number(parts[1]);
        if (pts == 0)
            throw GeometryError("random polytope needs at least one point");
        return random_polytope(pts, number(parts[2]), number(parts[3]));
    }
    throw GeometryError("unrecognized space spec \"" + text +
                        "\" (expected simplex:N, hypercube:N, cross:N or random:POINTS:DIM:SEED)");
}

std::string SpaceSpec::id() const
{
    switch (kind) {
        case Kind::Simplex: return "simplex:" + std::to_string(n);
        case Kind::Hypercube: return "hypercube:" + std::to_string(n);
        case Kind::CrossPolytope: return "cross:" + std::to_string(n);
        case Kind::RandomPolytope:
            return "random:" + std::to_string(points) + ":" + std::to_string(dim) + ":" + std::to_string(seed);
    }
    return {};
}

SpacePtr generate_space(const SpaceSpec& spec)
{
    std::vector<Point> pts;
    switch (spec.kind) {
        case SpaceSpec::Kind::Simplex:
            pts.emplace_back(spec.n, Rational(0));
            for (std::size_t i = 0; i < spec.n; ++i) {
                Point e(spec.n, Rational(0));
                e[i] = 1;
                pts.push_back(std::move(e));
            }
            break;
        case SpaceSpec::Kind::Hypercube:
            for (std::size_t mask = 0; mask < (std::size_t{1} << spec.n); ++mask) {
                Point p(spec.n);
                for (std::size_t i = 0; i < spec.n; ++i)
                    p[i] = (mask >> i) & 1U;
                pts.push_back(std::move(p));
            }
            break;
        case SpaceSpec::Kind::CrossPolytope:
            if (spec.n == 0)
                pts.emplace_back();
            for (std::size_t i = 0; i < spec.n; ++i)
                for (int s : {1, -1}) {
                    Point e(spec.n, Rational(0));
                    e[i] = s;
                    pts.push_back(std::move(e));
                }
            break;
        case SpaceSpec::Kind::RandomPolytope: {
            SeededRng rng(spec.seed);
            for (std::size_t i = 0; i < spec.points; ++i) {
                Point p(spec.dim);
                for (auto& c : p)
                    c = rng.rational(-2, 2, 4);
                pts.push_back(std::move(p));
            }
            break;
        }
    }
    return canonicalize_vertices(pts);
}

Effect sample_effect(const SpacePtr& space, std::uint64_t seed)
{
    SeededRng rng(seed);
    const long den = rng.integer(1, 3);
    RationalVector lin(space->dimension());
    for (auto& c : lin)
        c = make_rational(rng.integer(-6, 6), den);
    const AffineFunctional raw(space, 0, lin);

    const RationalVector vals = raw.vertex_values();
    const Rational lo = *std::min_element(vals.begin(), vals.end());
    const Rational hi = *std::max_element(vals.begin(), vals.end());
    if (lo == hi)
        return Effect(AffineFunctional::constant_function(space, make_rational(rng.integer(0, 8), 8)));

    // Target interval [p, q] inside [0, 1]; half the draws keep the full range.
    Rational p = 0, q = 1;
    if (rng.coin()) {
        long i = rng.integer(0, 8);
        long j = rng.integer(0, 7);
        if (j >= i)
            ++j;
        else
            std::swap(i, j);
        p = make_rational(i, 8);
        q = make_rational(j, 8);
    }
    const Rational scale = (q - p) / (hi - lo);
    AffineFunctional out = scale * raw;
    out += AffineFunctional::constant_function(space, p - scale * lo);
    return Effect(std::move(out));
}

} // namespace gptcompat
