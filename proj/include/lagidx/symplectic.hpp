#pragma once

#include <cstdint>

#include "lagidx/hermitian.hpp"

namespace lagidx {

/// C^n + C^n with the form omega(u, v) = u* J v, J = [[0, I], [-I, 0]].
/// The inner product on C^n is conjugate-linear in its first argument.
struct SymplecticSpace {
  Index half_dim = 1;

  explicit SymplecticSpace(Index n);
  Index dim() const { return 2 * half_dim; }
};

/// The 2n x 2n matrix J representing omega.
Matrix standard_j(Index n);

/// omega(u, v) = <x1, y2> - <x2, y1> for u = (x1, x2), v = (y1, y2).
Complex omega(const Vector& u, const Vector& v);

/// True iff ||S* J S - J|| <= residual_tol * ||J||. Throws on non-square or
/// odd-sized input.
bool is_symplectic(const Matrix& s, const TolerancePolicy& tol = {});

/// True iff ||S* J S + J|| <= residual_tol * ||J||.
bool is_antisymplectic(const Matrix& s, const TolerancePolicy& tol = {});

/// Linear map on C^2n preserving omega.
class SymplecticMap {
 public:
  /// Validates the invariant; throws NotSymplectic otherwise.
  explicit SymplecticMap(Matrix m, const TolerancePolicy& tol = {});

  static SymplecticMap identity(Index n);
  /// [[I, 0], [A, I]]: sends G_0 to G_A and fixes G_inf.
  static SymplecticMap shear(const HermitianMatrix& a);
  /// [[U, 0], [0, U]] for unitary U.
  static SymplecticMap block_unitary(const Matrix& u, const TolerancePolicy& tol = {});

  Index half_dim() const { return m_.rows() / 2; }
  const Matrix& matrix() const { return m_; }

  /// Inverse computed as -J S* J, exact for symplectic S.
  SymplecticMap inverse() const;
  SymplecticMap compose(const SymplecticMap& rhs) const;  // this * rhs

 private:
  struct Trusted {};
  SymplecticMap(Trusted, Matrix m) : m_(std::move(m)) {}
  friend SymplecticMap random_symplectic(Index, std::uint64_t, double);
  friend SymplecticMap direct_sum(const SymplecticMap&, const SymplecticMap&);

  Matrix m_;
};

/// Linear bijection with omega(Ax, Ay) = -omega(x, y).
class AntiSymplecticMap {
 public:
  explicit AntiSymplecticMap(Matrix m, const TolerancePolicy& tol = {});
  Index half_dim() const { return m_.rows() / 2; }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// exp(J H) for a seeded random Hermitian H of Frobenius scale `scale`.
SymplecticMap random_symplectic(Index n, std::uint64_t seed, double scale = 0.6);

/// exp(J H) for the given Hermitian 2n x 2n matrix H.
SymplecticMap symplectic_exp(const HermitianMatrix& h);

/// (x, y) -> (y, x).
AntiSymplecticMap swap_map(Index n);

/// Embedding permutation for C^{2a} + C^{2b} -> C^{2(a+b)}:
/// (x_a, y_a) + (x_b, y_b) -> (x_a, x_b, y_a, y_b). Entry k of the result is
/// the position in the concatenated vector (x_a, y_a, x_b, y_b) that lands in
/// slot k.
std::vector<Index> direct_sum_permutation(Index a, Index b);

/// Rearranges the concatenation of a C^{2a} vector and a C^{2b} vector into
/// C^{2(a+b)} using the permutation above.
Vector embed_direct_sum(const Vector& u, const Vector& v);

SymplecticMap direct_sum(const SymplecticMap& s1, const SymplecticMap& s2);

/// Block-diagonal sum of two arbitrary 2a x 2a and 2b x 2b matrices under
/// the same embedding.
Matrix direct_sum_matrix(const Matrix& m1, const Matrix& m2);

}  // namespace lagidx
