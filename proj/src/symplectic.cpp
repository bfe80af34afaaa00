#include "lagidx/symplectic.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "lagidx/random.hpp"

namespace lagidx {

namespace {

void require_even_square(const Matrix& s, const char* what) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a non-empty 2n x 2n matrix, got " << s.rows() << "x" << s.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

double form_residual(const Matrix& s, double sign) {
  const Matrix j = standard_j(s.rows() / 2);
  return spectral_norm(s.adjoint() * j * s - sign * j);
}

}  // namespace

SymplecticSpace::SymplecticSpace(Index n) : half_dim(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "symplectic space needs half_dim >= 1");
}

Matrix standard_j(Index n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

Complex omega(const Vector& u, const Vector& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "omega needs two vectors of equal even length");
  }
  const Index n = u.size() / 2;
  return u.head(n).dot(v.tail(n)) - u.tail(n).dot(v.head(n));
}

bool is_symplectic(const Matrix& s, const TolerancePolicy& tol) {
  require_even_square(s, "symplectic candidate");
  require_finite(s, "symplectic candidate");
  return form_residual(s, 1.0) <= tol.residual_tol;
}

bool is_antisymplectic(const Matrix& s, const TolerancePolicy& tol) {
  require_even_square(s, "anti-symplectic candidate");
  require_finite(s, "anti-symplectic candidate");
  return form_residual(s, -1.0) <= tol.residual_tol;
}


SymplecticMap::SymplecticMap(Matrix m, const TolerancePolicy& tol) : m_(std::move(m)) {
  if (!is_symplectic(m_, tol)) {
    std::ostringstream os;
    os << "||S*JS - J|| = " << form_residual(m_, 1.0) << " exceeds " << tol.residual_tol;
    throw Error(ErrorKind::NotSymplectic, os.str());
  }
}

SymplecticMap SymplecticMap::identity(Index n) {
  return SymplecticMap(Trusted{}, Matrix::Identity(2 * n, 2 * n));
}

SymplecticMap SymplecticMap::shear(const HermitianMatrix& a) {
  const Index n = a.dim();
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  m.bottomLeftCorner(n, n) = a.matrix();
  return SymplecticMap(Trusted{}, std::move(m));
}

SymplecticMap SymplecticMap::block_unitary(const Matrix& u, const TolerancePolicy& tol) {
  const Index n = u.rows();
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = u;
  m.bottomRightCorner(n, n) = u;
  return SymplecticMap(std::move(m), tol);
}

SymplecticMap SymplecticMap::inverse() const {
  const Matrix j = standard_j(half_dim());
  return SymplecticMap(Trusted{}, -j * m_.adjoint() * j);
}

SymplecticMap SymplecticMap::compose(const SymplecticMap& rhs) const {
  if (rhs.half_dim() != half_dim()) throw Error(ErrorKind::DimensionMismatch, "compose");
  return SymplecticMap(Trusted{}, m_ * rhs.m_);
}

AntiSymplecticMap::AntiSymplecticMap(Matrix m, const TolerancePolicy& tol) : m_(std::move(m)) {
  if (!is_antisymplectic(m_, tol)) {
    throw Error(ErrorKind::NotSymplectic, "matrix is not anti-symplectic");
  }
}


SymplecticMap symplectic_exp(const HermitianMatrix& h) {
  if (h.dim() % 2 != 0 || h.dim() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "generator must be 2n x 2n");
  }
  const Matrix jh = standard_j(h.dim() / 2) * h.matrix();
  return SymplecticMap(Matrix(jh.exp()));
}

SymplecticMap random_symplectic(Index n, std::uint64_t seed, double scale) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "random_symplectic needs n >= 1");
  Rng rng(seed);
  const HermitianMatrix h = random_hermitian(2 * n, rng, scale / std::sqrt(2.0 * n));
  const Matrix jh = standard_j(n) * h.matrix();
  return SymplecticMap(SymplecticMap::Trusted{}, jh.exp());
}

AntiSymplecticMap swap_map(Index n) {
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n).setIdentity();
  m.bottomLeftCorner(n, n).setIdentity();
  return AntiSymplecticMap(std::move(m));
}

std::vector<Index> direct_sum_permutation(Index a, Index b) {
  // Concatenated layout: x_a at [0, a), y_a at [a, 2a), x_b at [2a, 2a+b), y_b at [2a+b, 2a+2b).
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(2 * (a + b)));
  for (Index i = 0; i < a; ++i) perm.push_back(i);
  for (Index i = 0; i < b; ++i) perm.push_back(2 * a + i);
  for (Index i = 0; i < a; ++i) perm.push_back(a + i);
  for (Index i = 0; i < b; ++i) perm.push_back(2 * a + b + i);
  return perm;
}

Vector embed_direct_sum(const Vector& u, const Vector& v) {
  if (u.size() % 2 != 0 || v.size() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "embed_direct_sum needs even-length vectors");
  }
  Vector cat(u.size() + v.size());
  cat << u, v;
  const auto perm = direct_sum_permutation(u.size() / 2, v.size() / 2);
  Vector out(cat.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out(static_cast<Index>(k)) = cat(perm[k]);
  return out;
}

Matrix direct_sum_matrix(const Matrix& m1, const Matrix& m2) {
  const Index a = m1.rows() / 2;
  const Index b = m2.rows() / 2;
  Matrix block = Matrix::Zero(2 * (a + b), 2 * (a + b));
  block.topLeftCorner(2 * a, 2 * a) = m1;
  block.bottomRightCorner(2 * b, 2 * b) = m2;
  const auto perm = direct_sum_permutation(a, b);
  Matrix out(block.rows(), block.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = 0; j < perm.size(); ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = block(perm[i], perm[j]);
    }
  }
  return out;
}

SymplecticMap direct_sum(const SymplecticMap& s1, const SymplecticMap& s2) {
  return SymplecticMap(SymplecticMap::Trusted{}, direct_sum_matrix(s1.matrix(), s2.matrix()));
}

}  // namespace lagidx
