#ifndef GPTCOMPAT_COMPATIBILITY_HPP
#define GPTCOMPAT_COMPATIBILITY_HPP

#include "gptcompat/order_geometry.hpp"
#include "gptcompat/rational_lp.hpp"
#include "gptcompat/riesz.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace gptcompat {

/// joint[k][j] = h_{k,j}
using JointFamily = std::vector<std::vector<AffineFunctional>>;

struct Compatible
{
    JointFamily joint;
};

struct Incompatible
{
    InfeasibilityWitness certificate;
};

using CompatibilityVerdict = std::variant<Compatible, Incompatible>;

inline bool is_compatible(const CompatibilityVerdict& v)
{
    return std::holds_alternative<Compatible>(v);
}

/// Positivity of every h_{k,j} at every vertex plus exact row/column sums.
bool verify_joint(const JointFamily& joint, const Measurement& rows, const Measurement& cols);

/// Compatible: verify_joint. Incompatible: the Farkas multipliers verify
/// against the stored LP.
bool verify_verdict(const CompatibilityVerdict& v, const Measurement& rows, const Measurement& cols);

/**
 * Effects a, b are compatible iff some affine c satisfies
 * max(0, a+b-1) <= c <= min(a, b) on K. Solved as an LP over the d+1
 * coefficients of c with four constraints per vertex. joint[k][j] pairs
 * outcome k of (a, 1-a) with outcome j of (b, 1-b):
 *   [[c, a-c], [b-c, 1-a-b+c]].
 * Throws SpaceMismatch if a and b live on different spaces.
 */
CompatibilityVerdict compatible_2outcome(const Effect& a, const Effect& b);

/// Joint measurability of an m-outcome and an n-outcome measurement: an LP
/// over the m*n*(d+1) coefficients of h_{k,j}, positivity at the vertices and
/// marginals as exact coefficient equations.
CompatibilityVerdict compatible_general(const Measurement& rows, const Measurement& cols);

using RieszDecomposer = std::function<RieszResult(const RieszInstance&)>;

/// Joint measurement built by splitting a_1 <= b_1 + b_2 = e:
/// a_1 = c_{1,1} + c_{1,2} with 0 <= c_{1,j} <= b_j, then c_{2,j} = b_j - c_{1,j}.
/// Both measurements must have two outcomes.
CompatibilityVerdict joint_from_riesz(const Measurement& a, const Measurement& b,
                                      const RieszDecomposer& decomposer = riesz_decompose);

/// Largest lambda in [0,1] for which the noisy effects
///   a_l = l*a + (1-l)/2 * e,   b_l = l*b + (1-l)/2 * e
/// are compatible, with a joint at that lambda. This is a diagnostic
/// extension, not part of the compatibility notion itself.
struct RobustnessResult
{
    Rational lambda_star;
    JointFamily witness_joint;
};

RobustnessResult incompatibility_robustness(const Effect& a, const Effect& b);

/// a_l as used by incompatibility_robustness; lambda must lie in [0,1].
Effect noisy_effect(const Effect& a, const Rational& lambda);

/// a, b >= 0 are orthogonal iff 0 <= c <= a, b forces c = 0. Decided by
/// maximizing sum_v c(v). Throws GeometryError on a negative input.
bool is_orthogonal(const AffineFunctional& a, const AffineFunctional& b);

/// Indices of the vertices where a attains max_v a(v).
std::vector<std::size_t> maximizing_face(const AffineFunctional& a);

/// True iff b vanishes at every vertex maximizing a (hence at every state
/// psi with psi(a) = ||a||). Throws GeometryError if a vanishes on K or
/// either input is negative at a vertex.
bool check_ortho_lemma(const AffineFunctional& a, const AffineFunctional& b);

} // namespace gptcompat

#endif
