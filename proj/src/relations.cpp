#include "lagidx/relations.hpp"

#include <sstream>

#include <Eigen/SVD>

namespace lagidx {

Inertia RelationParts::operator_inertia(const TolerancePolicy& tol) const {
  Inertia in = inertia(operator_part, tol);
  in.zero -= mul_dim;
  return in;
}

RelationParts decompose(const LagrangianPlane& l, const TolerancePolicy& tol) {
  const Index n = l.n();
  const Matrix x = l.x();
  const Matrix dom = range_basis(x, tol);
  const Matrix p = dom * dom.adjoint();
  const Matrix op = p * l.y() * pseudoinverse(x, tol) * p;
  RelationParts parts{HermitianMatrix::symmetrize(p), HermitianMatrix::symmetrize(op),
                      static_cast<int>(n - dom.cols())};
  return parts;
}

LagrangianPlane recompose(const RelationParts& parts, const TolerancePolicy& tol) {
  const Index n = parts.dom_projector.dim();
  const HermitianEigen eig = eigen_decompose(parts.dom_projector);
  // Eigenvalues of a projector are 0 or 1, ascending: kernel first.
  const Index mul = parts.mul_dim;
  const Matrix ker = eig.vectors.leftCols(mul);
  const Matrix dom = eig.vectors.rightCols(n - mul);
  Matrix x = Matrix::Zero(n, n);
  Matrix y = Matrix::Zero(n, n);
  x.leftCols(n - mul) = dom;
  y.leftCols(n - mul) = parts.operator_part.matrix() * dom;
  y.rightCols(mul) = ker;
  return LagrangianPlane::from_frame(x, y, tol);
}

LagrangianPlane difference(const LagrangianPlane& l, const LagrangianPlane& m, const TolerancePolicy& tol) {
  if (l.n() != m.n()) throw Error(ErrorKind::DimensionMismatch, "difference of planes of different size");
  const Index n = l.n();
  // Pairs (s, t) with X_L s = X_M t.
  Matrix stacked(n, 2 * n);
  stacked << l.x(), -m.x();
  const Matrix pairs = kernel_basis(stacked, tol);
  const Matrix s = pairs.topRows(n);
  const Matrix t = pairs.bottomRows(n);
  Matrix image(2 * n, pairs.cols());
  image << l.x() * s, l.y() * s - m.y() * t;

  Eigen::JacobiSVD<Matrix> svd(image, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double cut = tol.cutoff(sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  if (rank != n) {
    std::ostringstream os;
    os << "difference spans dimension " << rank << ", expected " << n;
    throw Error(ErrorKind::RankDeficient, os.str());
  }
  return LagrangianPlane::from_stacked(svd.matrixU().leftCols(n), tol);
}

LagrangianPlane inverse(const LagrangianPlane& l) { return l.transformed(swap_map(l.n())); }

HermitianMatrix compress(const HermitianMatrix& a, const HermitianMatrix& p, const TolerancePolicy& tol) {
  if (a.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "compress");
  const Matrix& pm = p.matrix();
  if ((pm * pm - pm).norm() > tol.residual_tol * std::max(1.0, pm.norm())) {
    throw Error(ErrorKind::InvalidArgument, "compress needs an orthogonal projector");
  }
  return a.congruence(pm);
}

}  // namespace lagidx
