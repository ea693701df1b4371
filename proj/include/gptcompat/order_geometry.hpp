#ifndef GPTCOMPAT_ORDER_GEOMETRY_HPP
#define GPTCOMPAT_ORDER_GEOMETRY_HPP

#include "gptcompat/rational.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gptcompat {

using Point = RationalVector;

class GeometryError : public std::invalid_argument
{
  public:
    explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when two functionals live on different state spaces.
class SpaceMismatch : public GeometryError
{
  public:
    explicit SpaceMismatch(const std::string& what) : GeometryError(what) {}
};

/**
 * A polytope K in Q^d held as its irredundant vertex list in lexicographic
 * order. Instances are immutable and shared through SpacePtr; the only way to
 * construct one is canonicalize_vertices(), which establishes the invariants.
 */
class StateSpace
{
  public:
    std::size_t dimension() const { return dimension_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    bool operator==(const StateSpace&) const = default;

  private:
    friend std::shared_ptr<const StateSpace> canonicalize_vertices(const std::vector<Point>& points);
    StateSpace(std::size_t dimension, std::vector<Point> vertices)
        : dimension_(dimension), vertices_(std::move(vertices))
    {
    }

    std::size_t dimension_;
    std::vector<Point> vertices_;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

/// Drops duplicates and non-extreme points (LP membership test) and sorts
/// the survivors lexicographically. Throws GeometryError on an empty list or
/// mixed point dimensions.
SpacePtr canonicalize_vertices(const std::vector<Point>& points);

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// f(x) = constant + linear . x, an element of A(K).
class AffineFunctional
{
  public:
    AffineFunctional(SpacePtr space, Rational constant, RationalVector linear);

    static AffineFunctional zero(const SpacePtr& space);
    static AffineFunctional constant_function(const SpacePtr& space, const Rational& value);
    /// f(x) = x_i
    static AffineFunctional coordinate(const SpacePtr& space, std::size_t i);

    const SpacePtr& space() const { return space_; }
    const Rational& constant() const { return constant_; }
    const RationalVector& linear() const { return linear_; }

    Rational operator()(const Point& x) const;
    Rational at_vertex(std::size_t i) const { return (*this)(space_->vertices()[i]); }
    RationalVector vertex_values() const;

    bool is_zero() const;
    bool is_nonnegative() const;

    AffineFunctional operator-() const;
    AffineFunctional& operator+=(const AffineFunctional& other);
    AffineFunctional& operator-=(const AffineFunctional& other);
    AffineFunctional& operator*=(const Rational& s);

    friend AffineFunctional operator+(AffineFunctional a, const AffineFunctional& b) { return a += b; }
    friend AffineFunctional operator-(AffineFunctional a, const AffineFunctional& b) { return a -= b; }
    friend AffineFunctional operator*(const Rational& s, AffineFunctional a) { return a *= s; }

    /// Coefficient equality on the same space.
    bool operator==(const AffineFunctional& other) const;

  private:
    SpacePtr space_;
    Rational constant_;
    RationalVector linear_;
};

/// An AffineFunctional with 0 <= f <= 1 on K.
class Effect
{
  public:
    /// Throws GeometryError unless validate_effect(f).
    explicit Effect(AffineFunctional f);

    const AffineFunctional& functional() const { return f_; }
    const SpacePtr& space() const { return f_.space(); }
    Effect complement() const;

    bool operator==(const Effect&) const = default;

  private:
    AffineFunctional f_;
};

/// Non-negative outcomes summing exactly (as coefficients) to 1_K.
class Measurement
{
  public:
    /// Throws GeometryError unless validate_measurement(outcomes).
    explicit Measurement(std::vector<AffineFunctional> outcomes);

    /// (a, e - a)
    static Measurement two_outcome(const Effect& a);
    /// The 1-outcome measurement (e).
    static Measurement trivial(const SpacePtr& space);

    const std::vector<AffineFunctional>& outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }
    const SpacePtr& space() const { return outcomes_.front().space(); }

  private:
    std::vector<AffineFunctional> outcomes_;
};

/// A point of K together with convex weights over the vertices reproducing
/// it; the evaluation functional at this point is a state on A(K).
class State
{
  public:
    /// Throws GeometryError if weights are negative, do not sum to one, or
    /// have the wrong length.
    static State from_weights(const SpacePtr& space, RationalVector weights);
    static State vertex(const SpacePtr& space, std::size_t i);

    const Point& point() const { return point_; }
    const RationalVector& weights() const { return weights_; }
    const SpacePtr& space() const { return space_; }

    Rational operator()(const AffineFunctional& f) const;

  private:
    State(SpacePtr space, Point point, RationalVector weights)
        : space_(std::move(space)), point_(std::move(point)), weights_(std::move(weights))
    {
    }

    SpacePtr space_;
    Point point_;
    RationalVector weights_;
};

/// Affine independence of the vertices (exact rank of the difference vectors).
bool is_simplex(const StateSpace& space);

/// For polytopes the extreme-point set is finite and hence closed, so the
/// Bauer and Choquet notions coincide; this is is_simplex under another name.
bool is_bauer_simplex(const StateSpace& space);

Effect unit_effect(const SpacePtr& space);

/// max over vertices of |f(v)|, the order-unit norm of f.
Rational sup_norm(const AffineFunctional& f);

bool validate_effect(const AffineFunctional& f);
bool validate_measurement(std::span<const AffineFunctional> outcomes);

struct SpaceSpec
{
    enum class Kind { Simplex, Hypercube, CrossPolytope, RandomPolytope };

    Kind kind = Kind::Simplex;
    std::size_t n = 0;
    std::size_t points = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;

    static SpaceSpec simplex(std::size_t n) { return {Kind::Simplex, n, 0, 0, 0}; }
    static SpaceSpec hypercube(std::size_t n) { return {Kind::Hypercube, n, 0, 0, 0}; }
    static SpaceSpec cross_polytope(std::size_t n) { return {Kind::CrossPolytope, n, 0, 0, 0}; }
    static SpaceSpec random_polytope(std::size_t points, std::size_t dim, std::uint64_t seed)
    {
        return {Kind::RandomPolytope, 0, points, dim, seed};
    }

    /// "simplex:3", "hypercube:2", "cross:3", "random:<points>:<dim>:<seed>".
    /// Throws GeometryError on anything else.
    static SpaceSpec parse(const std::string& text);
    std::string id() const;
};

/// cross_polytope(0) is taken to be the single point of R^0.
SpacePtr generate_space(const SpaceSpec& spec);

/// Random affine functional rescaled so that its vertex range lands inside
/// a random sub-interval of [0,1]. Deterministic per seed.
Effect sample_effect(const SpacePtr& space, std::uint64_t seed);

} // namespace gptcompat

#endif
