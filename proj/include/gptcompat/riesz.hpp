#ifndef GPTCOMPAT_RIESZ_HPP
#define GPTCOMPAT_RIESZ_HPP

#include "gptcompat/order_geometry.hpp"
#include "gptcompat/rational_lp.hpp"

#include <variant>

namespace gptcompat {

/// u, v1, v2 on a common space with 0 <= u <= v1 + v2 and v1, v2 >= 0.
class RieszInstance
{
  public:
    /// Throws GeometryError (SpaceMismatch for differing spaces) when the
    /// order conditions fail at some vertex.
    RieszInstance(AffineFunctional u, AffineFunctional v1, AffineFunctional v2);

    const AffineFunctional& u() const { return u_; }
    const AffineFunctional& v1() const { return v1_; }
    const AffineFunctional& v2() const { return v2_; }

  private:
    AffineFunctional u_;
    AffineFunctional v1_;
    AffineFunctional v2_;
};

/// u = u1 + u2 with 0 <= u_j <= v_j.
struct RieszDecomposition
{
    AffineFunctional u1;
    AffineFunctional u2;
};

using RieszResult = std::variant<RieszDecomposition, InfeasibilityWitness>;

/// LP over the coefficients of u1 (u2 := u - u1) with
/// 0 <= u1(v) <= v1(v) and 0 <= u(v) - u1(v) <= v2(v) at every vertex.
RieszResult riesz_decompose(const RieszInstance& inst);

/// Vertex-wise re-check of a decomposition, without any LP.
bool verify_decomposition(const RieszInstance& inst, const RieszDecomposition& dec);

} // namespace gptcompat

#endif
