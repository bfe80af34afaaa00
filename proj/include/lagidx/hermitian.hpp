#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lagidx/error.hpp"

namespace lagidx {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every rank and sign decision in the library.
///
/// `rank_rel_tol` is the relative cutoff below which an eigenvalue or singular
/// value is treated as zero; the absolute cutoff is
/// `rank_rel_tol * max(1, norm)` so that zero matrices are handled.
/// `residual_tol` bounds residuals in consistency checks (Lagrangian condition,
/// Penrose identities, factorizations).
struct TolerancePolicy {
  double rank_rel_tol = 1e-9;
  double residual_tol = 1e-8;

  /// Throws InvalidArgument unless both values lie in (0, 1).
  void validate() const;

  double cutoff(double norm) const { return rank_rel_tol * std::max(1.0, norm); }
};

/// Triple of eigenvalue counts of a Hermitian form.
struct Inertia {
  int minus = 0;
  int zero = 0;
  int plus = 0;

  int dim() const { return minus + zero + plus; }
  int signature() const { return plus - minus; }
  /// Inertia of the negated form.
  Inertia negated() const { return {plus, zero, minus}; }

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

std::string to_string(const Inertia& in);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

/// FNV-1a digest of the raw entries; used to tag diagnostics.
std::uint64_t matrix_hash(const Matrix& m);

/// Dense complex square matrix with exact conjugate symmetry.
///
/// Construction from an arbitrary matrix symmetrizes it as (H + H*)/2 after
/// checking that the asymmetry is within the tolerance policy. Sums,
/// differences and real multiples of Hermitian matrices stay exactly Hermitian
/// in floating point, so the arithmetic operators below skip the check.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m, const TolerancePolicy& tol = {});

  static HermitianMatrix zero(Index n);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  /// Symmetrizes without the asymmetry check. For callers that know the
  /// input is Hermitian up to rounding.
  static HermitianMatrix symmetrize(const Matrix& m);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  HermitianMatrix operator-() const { return HermitianMatrix(Raw{}, -m_); }
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(Raw{}, s * a.m_);
  }

  /// S* H S, which is Hermitian for any square S of matching size.
  HermitianMatrix congruence(const Matrix& s) const;

 private:
  struct Raw {};
  HermitianMatrix(Raw, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

/// Real eigenvalues (ascending) and orthonormal eigenvectors.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

HermitianEigen eigen_decompose(const HermitianMatrix& h);

Inertia inertia(const HermitianMatrix& h, const TolerancePolicy& tol = {});

/// Numerical rank from singular values with the shared cutoff.
Index numerical_rank(const Matrix& m, const TolerancePolicy& tol = {});

/// Columns form an orthonormal basis of ker M (possibly zero columns).
Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol = {});

/// Columns form an orthonormal basis of Ran M.
Matrix range_basis(const Matrix& m, const TolerancePolicy& tol = {});

HermitianMatrix pseudoinverse(const HermitianMatrix& h, const TolerancePolicy& tol = {});

/// Moore-Penrose pseudoinverse of a general rectangular matrix.
Matrix pseudoinverse(const Matrix& m, const TolerancePolicy& tol = {});

/// Orthogonal projector onto Ran H.
HermitianMatrix range_projector(const HermitianMatrix& h, const TolerancePolicy& tol = {});

/// Orthogonal projector onto Ran M for a general matrix.
HermitianMatrix range_projector(const Matrix& m, const TolerancePolicy& tol = {});

/// Spectral-norm condition number; infinity for singular input.
double condition_number(const Matrix& m);

/// Condition number measured against a known scale: max(scale, s_max) / s_min.
/// Blocks of orthonormal frames have norm at most one, so a uniformly tiny
/// block counts as ill-conditioned even though its plain ratio is 1.
double condition_number(const Matrix& m, double scale);

double spectral_norm(const Matrix& m);

}  // namespace lagidx
