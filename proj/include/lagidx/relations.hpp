#pragma once

#include "lagidx/lagrangian.hpp"

namespace lagidx {

/// A Lagrangian plane read as a self-adjoint linear relation
/// L = {(x, Lx + y) : x in dom L, y in mul L}, mul L = (dom L)^perp.
///
/// The operator part is stored as the n x n matrix P L P supported on
/// Ran P, so its negative count equals that of the operator on dom L while its
/// zero count is padded by mul_dim.
struct RelationParts {
  HermitianMatrix dom_projector;
  HermitianMatrix operator_part;
  int mul_dim = 0;

  /// Inertia of the operator part on dom L only (padding removed).
  Inertia operator_inertia(const TolerancePolicy& tol = {}) const;
};

RelationParts decompose(const LagrangianPlane& l, const TolerancePolicy& tol = {});

/// Rebuilds the plane {(x, Lx + y)} from its parts.
LagrangianPlane recompose(const RelationParts& parts, const TolerancePolicy& tol = {});

/// L - M = {(u, v_L - v_M) : (u, v_L) in L, (u, v_M) in M}.
/// Throws RankDeficient if the constructed span does not have dimension n.
LagrangianPlane difference(const LagrangianPlane& l, const LagrangianPlane& m,
                           const TolerancePolicy& tol = {});

/// L^{-1} = {(v, u) : (u, v) in L}.
LagrangianPlane inverse(const LagrangianPlane& l);

/// P A P, the compression of A to Ran P written on the whole space.
HermitianMatrix compress(const HermitianMatrix& a, const HermitianMatrix& p,
                         const TolerancePolicy& tol = {});

}  // namespace lagidx
