#include "lagidx/hermitian.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/SVD>

namespace lagidx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::SelectionFailed: return "SelectionFailed";
    case ErrorKind::SingularEpsilon: return "SingularEpsilon";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::EpsilonDisagreement: return "EpsilonDisagreement";
    case ErrorKind::DualBasisFailure: return "DualBasisFailure";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InclusionViolated: return "InclusionViolated";
    case ErrorKind::TransversalityViolated: return "TransversalityViolated";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::DegenerateCrossing: return "DegenerateCrossing";
    case ErrorKind::UnresolvedCluster: return "UnresolvedCluster";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  auto ok = [](double v) { return v > 0.0 && v < 1.0; };
  if (!ok(rank_rel_tol) || !ok(residual_tol)) {
    std::ostringstream os;
    os << "tolerances must lie in (0, 1); got rank_rel_tol=" << rank_rel_tol
       << " residual_tol=" << residual_tol;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

std::string to_string(const Inertia& in) {
  std::ostringstream os;
  os << "(" << in.minus << "," << in.zero << "," << in.plus << ")";
  return os.str();
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

std::uint64_t matrix_hash(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::int64_t dims[2] = {static_cast<std::int64_t>(m.rows()),
                                static_cast<std::int64_t>(m.cols())};
  mix(dims, sizeof(dims));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      mix(parts, sizeof(parts));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const Matrix& m, const TolerancePolicy& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square");
  }
  require_finite(m, "Hermitian matrix");
  const double asym = (m - m.adjoint()).norm();
  const double scale = std::max(1.0, m.norm());
  if (asym > tol.residual_tol * scale) {
    std::ostringstream os;
    os << "asymmetry " << asym << " exceeds " << tol.residual_tol * scale;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index n) { return HermitianMatrix(Raw{}, Matrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(Raw{}, Matrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return HermitianMatrix(Raw{}, std::move(m));
}

HermitianMatrix HermitianMatrix::symmetrize(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square");
  }
  require_finite(m, "Hermitian matrix");
  return HermitianMatrix(Raw{}, 0.5 * (m + m.adjoint()));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "Hermitian sum");
  return HermitianMatrix(HermitianMatrix::Raw{}, a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "Hermitian difference");
  return HermitianMatrix(HermitianMatrix::Raw{}, a.m_ - b.m_);
}

HermitianMatrix HermitianMatrix::congruence(const Matrix& s) const {
  if (s.rows() != dim()) throw Error(ErrorKind::DimensionMismatch, "congruence");
  return symmetrize(s.adjoint() * m_ * s);
}

// ---------------------------------------------------------------------------
// Decompositions

HermitianEigen eigen_decompose(const HermitianMatrix& h) {
  if (h.dim() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigensolve failed (dim " << h.dim() << ", hash 0x" << std::hex
       << matrix_hash(h.matrix()) << ")";
    throw Error(ErrorKind::DecompositionFailure, os.str());
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Inertia inertia(const HermitianMatrix& h, const TolerancePolicy& tol) {
  Inertia in;
  if (h.dim() == 0) return in;
  const HermitianEigen eig = eigen_decompose(h);
  const double cut = tol.cutoff(eig.values.cwiseAbs().maxCoeff());
  for (Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -cut) {
      ++in.minus;
    } else if (v > cut) {
      ++in.plus;
    } else {
      ++in.zero;
    }
  }
  return in;
}

namespace {

struct Svd {
  RealVector values;
  Matrix u;
  Matrix v;
  double cutoff = 0.0;
  Index rank = 0;
};

Svd full_svd(const Matrix& m, const TolerancePolicy& tol) {
  require_finite(m, "matrix");
  Svd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.values = RealVector(0);
    out.u = Matrix::Identity(m.rows(), m.rows());
    out.v = Matrix::Identity(m.cols(), m.cols());
    out.cutoff = tol.cutoff(0.0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.values = svd.singularValues();
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.cutoff = tol.cutoff(out.values(0));
  for (Index i = 0; i < out.values.size(); ++i) {
    if (out.values(i) > out.cutoff) ++out.rank;
  }
  return out;
}

}  // namespace

Index numerical_rank(const Matrix& m, const TolerancePolicy& tol) { return full_svd(m, tol).rank; }

Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol) {
  const Svd s = full_svd(m, tol);
  return s.v.rightCols(m.cols() - s.rank);
}

Matrix range_basis(const Matrix& m, const TolerancePolicy& tol) {
  const Svd s = full_svd(m, tol);
  return s.u.leftCols(s.rank);
}

HermitianMatrix pseudoinverse(const HermitianMatrix& h, const TolerancePolicy& tol) {
  if (h.dim() == 0) return h;
  const HermitianEigen eig = eigen_decompose(h);
  const double cut = tol.cutoff(eig.values.cwiseAbs().maxCoeff());
  RealVector inv = RealVector::Zero(eig.values.size());
  for (Index i = 0; i < inv.size(); ++i) {
    if (std::abs(eig.values(i)) > cut) inv(i) = 1.0 / eig.values(i);
  }
  return HermitianMatrix::symmetrize(eig.vectors * inv.asDiagonal() * eig.vectors.adjoint());
}

Matrix pseudoinverse(const Matrix& m, const TolerancePolicy& tol) {
  const Svd s = full_svd(m, tol);
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  for (Index i = 0; i < s.rank; ++i) {
    out += s.v.col(i) * (1.0 / s.values(i)) * s.u.col(i).adjoint();
  }
  return out;
}

HermitianMatrix range_projector(const HermitianMatrix& h, const TolerancePolicy& tol) {
  if (h.dim() == 0) return h;
  const HermitianEigen eig = eigen_decompose(h);
  const double cut = tol.cutoff(eig.values.cwiseAbs().maxCoeff());
  Matrix p = Matrix::Zero(h.dim(), h.dim());
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i)) > cut) p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  return HermitianMatrix::symmetrize(p);
}

HermitianMatrix range_projector(const Matrix& m, const TolerancePolicy& tol) {
  const Matrix b = range_basis(m, tol);
  return HermitianMatrix::symmetrize(b * b.adjoint());
}

double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double condition_number(const Matrix& m, double scale) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(scale, s(0)) / smin;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace lagidx
