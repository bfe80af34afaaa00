#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lagidx/hermitian.hpp"
#include "lagidx/symplectic.hpp"

namespace lagidx {

/// An n-dimensional Lagrangian subspace of C^n + C^n, stored as a 2n x n
/// frame Z = (X; Y) with orthonormal columns.
///
/// Construction always validates injectivity and the Lagrangian condition
/// X*Y = Y*X, then orthonormalizes. Frames that are already orthonormal to
/// rounding are kept bit-for-bit, so a plane written out and read back
/// reproduces the same frame.
class LagrangianPlane {
 public:
  /// Throws NotInjective or NotLagrangian.
  static LagrangianPlane from_frame(const Matrix& x, const Matrix& y, const TolerancePolicy& tol = {});
  static LagrangianPlane from_stacked(const Matrix& z, const TolerancePolicy& tol = {});

  /// G_A = {(x, Ax)}.
  static LagrangianPlane graph(const HermitianMatrix& a);
  /// G_0 = C^n + 0.
  static LagrangianPlane horizontal(Index n);
  /// G_inf = 0 + C^n.
  static LagrangianPlane vertical(Index n);

  Index n() const { return z_.cols(); }
  const Matrix& frame() const { return z_; }
  Matrix x() const { return z_.topRows(n()); }
  Matrix y() const { return z_.bottomRows(n()); }

  LagrangianPlane transformed(const SymplecticMap& s, const TolerancePolicy& tol = {}) const;
  LagrangianPlane transformed(const AntiSymplecticMap& a, const TolerancePolicy& tol = {}) const;

  /// [[X, -Y], [Y, X]]: a unitary symplectic map sending G_0 onto this plane.
  SymplecticMap unitary_chart() const;

 private:
  explicit LagrangianPlane(Matrix z) : z_(std::move(z)) {}
  Matrix z_;
};

/// X1* Y2 - Y1* X2, the frame matrix of omega restricted to L1 x L2.
Matrix pairing(const LagrangianPlane& l1, const LagrangianPlane& l2);

/// dim(L1 ∩ L2), computed as the nullity of pairing(L1, L2).
int intersection_dim(const LagrangianPlane& l1, const LagrangianPlane& l2,
                     const TolerancePolicy& tol = {});

/// True iff the two planes span the same subspace.
bool same_plane(const LagrangianPlane& l1, const LagrangianPlane& l2, const TolerancePolicy& tol = {});

/// Frame-level direct sum under the embedding of direct_sum_permutation.
LagrangianPlane direct_sum(const LagrangianPlane& l, const LagrangianPlane& m);

/// Y X^{-1} for a plane transversal to G_inf; throws NotInvertible otherwise.
HermitianMatrix graph_matrix(const LagrangianPlane& l, const TolerancePolicy& tol = {});

struct RobinMap {
  double epsilon = 0.0;
  HermitianMatrix r;
};

/// R = Y (X + eps Y)^{-1}; throws SingularEpsilon if cond(X + eps Y) exceeds
/// 1 / rank_rel_tol.
RobinMap robin_map(const LagrangianPlane& l, double epsilon, const TolerancePolicy& tol = {});

/// Condition number of X + eps Y.
double robin_condition(const LagrangianPlane& l, double epsilon);

/// Picks eps > 0 with cond(X + eps Y) <= 1 / rank_rel_tol for every plane.
///
/// Candidates are 1, 1/2, 1/3, ... each scaled by a seeded factor in
/// [0.9, 1.1]. The first candidate that is comfortably conditioned wins; if
/// none is, the best admissible one is returned. `exclude` skips candidates
/// within 0.1% of a previously used value.
double epsilon_select(const std::vector<LagrangianPlane>& planes, const TolerancePolicy& tol,
                      std::uint64_t seed, std::optional<double> exclude = std::nullopt);

/// Like epsilon_select, then halves eps until eps^{-1} I - R is positive
/// semidefinite for every plane (the small-eps regime).
double epsilon_select_small(const std::vector<LagrangianPlane>& planes, const TolerancePolicy& tol,
                            std::uint64_t seed);

/// S * G_0 for a seeded random symplectic S, followed by the swap map with
/// probability 1/2.
LagrangianPlane random_plane(Index n, std::uint64_t seed);

/// Random plane {(x, Lx + y) : x in D, y in D^perp} whose multivalued part
/// D^perp has dimension `mul_dim`.
LagrangianPlane random_relation_plane(Index n, Index mul_dim, std::uint64_t seed);

/// A graph plane (or its swap) transversal to every plane in the list.
/// Throws SelectionFailed after a bounded number of draws.
LagrangianPlane transversal_companion(const std::vector<LagrangianPlane>& planes,
                                      const TolerancePolicy& tol, std::uint64_t seed);

/// Symplectic S with S*la = G_0 and S*l4 = G_inf, built from the omega-dual
/// basis of l4 against la. Throws DualBasisFailure when the two planes are not
/// numerically transversal.
SymplecticMap normalizing_map(const LagrangianPlane& la, const LagrangianPlane& l4,
                              const TolerancePolicy& tol = {});

}  // namespace lagidx
