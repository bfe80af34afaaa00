#include "lagidx/lagrangian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "lagidx/random.hpp"

namespace lagidx {

namespace {

// Candidate eps values whose Robin denominators stay below this condition
// number are taken immediately; worse ones are only a fallback.
constexpr double kComfortableCondition = 1e4;
constexpr int kEpsilonCandidates = 64;
// Singular-value floor on the omega-pairing for a companion plane to count
// as transversal with room to spare.
constexpr double kTransversalMargin = 1e-3;
constexpr int kCompanionDraws = 64;

bool is_orthonormal(const Matrix& z) {
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max<double>(1.0, z.cols());
  const Matrix g = z.adjoint() * z - Matrix::Identity(z.cols(), z.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

LagrangianPlane LagrangianPlane::from_stacked(const Matrix& z, const TolerancePolicy& tol) {
  if (z.rows() != 2 * z.cols() || z.cols() < 1) {
    std::ostringstream os;
    os << "frame must be 2n x n with n >= 1, got " << z.rows() << "x" << z.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  require_finite(z, "frame");
  const Index n = z.cols();
  if (numerical_rank(z, tol) != n) {
    throw Error(ErrorKind::NotInjective, "frame (X; Y) has numerical rank below n");
  }
  const Matrix x = z.topRows(n);
  const Matrix y = z.bottomRows(n);
  const double residual = spectral_norm(x.adjoint() * y - y.adjoint() * x);
  const double bound = tol.residual_tol * (spectral_norm(x) * spectral_norm(y) + 1.0);
  if (residual > bound) {
    std::ostringstream os;
    os << "||X*Y - Y*X|| = " << residual << " exceeds " << bound;
    throw Error(ErrorKind::NotLagrangian, os.str());
  }
  if (is_orthonormal(z)) return LagrangianPlane(z);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(2 * n, n);
  return LagrangianPlane(std::move(q));
}

LagrangianPlane LagrangianPlane::from_frame(const Matrix& x, const Matrix& y, const TolerancePolicy& tol) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "X and Y must be square of the same size");
  }
  Matrix z(2 * x.rows(), x.cols());
  z << x, y;
  return from_stacked(z, tol);
}

LagrangianPlane LagrangianPlane::graph(const HermitianMatrix& a) {
  const Index n = a.dim();
  return from_frame(Matrix::Identity(n, n), a.matrix());
}

LagrangianPlane LagrangianPlane::horizontal(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "plane dimension must be >= 1");
  Matrix z = Matrix::Zero(2 * n, n);
  z.topRows(n).setIdentity();
  return LagrangianPlane(std::move(z));
}

LagrangianPlane LagrangianPlane::vertical(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "plane dimension must be >= 1");
  Matrix z = Matrix::Zero(2 * n, n);
  z.bottomRows(n).setIdentity();
  return LagrangianPlane(std::move(z));
}

LagrangianPlane LagrangianPlane::transformed(const SymplecticMap& s, const TolerancePolicy& tol) const {
  if (s.half_dim() != n()) throw Error(ErrorKind::DimensionMismatch, "symplectic action");
  return from_stacked(s.matrix() * z_, tol);
}

LagrangianPlane LagrangianPlane::transformed(const AntiSymplecticMap& a, const TolerancePolicy& tol) const {
  if (a.half_dim() != n()) throw Error(ErrorKind::DimensionMismatch, "anti-symplectic action");
  return from_stacked(a.matrix() * z_, tol);
}

SymplecticMap LagrangianPlane::unitary_chart() const {
  const Index k = n();
  Matrix u(2 * k, 2 * k);
  u << x(), -y(), y(), x();
  return SymplecticMap(std::move(u));
}

// ---------------------------------------------------------------------------

Matrix pairing(const LagrangianPlane& l1, const LagrangianPlane& l2) {
  if (l1.n() != l2.n()) throw Error(ErrorKind::DimensionMismatch, "planes of different size");
  return l1.x().adjoint() * l2.y() - l1.y().adjoint() * l2.x();
}

int intersection_dim(const LagrangianPlane& l1, const LagrangianPlane& l2, const TolerancePolicy& tol) {
  const Matrix p = pairing(l1, l2);
  return static_cast<int>(p.cols() - numerical_rank(p, tol));
}

bool same_plane(const LagrangianPlane& l1, const LagrangianPlane& l2, const TolerancePolicy& tol) {
  return l1.n() == l2.n() && intersection_dim(l1, l2, tol) == l1.n();
}

LagrangianPlane direct_sum(const LagrangianPlane& l, const LagrangianPlane& m) {
  const Index a = l.n();
  const Index b = m.n();
  Matrix x = Matrix::Zero(a + b, a + b);
  Matrix y = Matrix::Zero(a + b, a + b);
  x.topLeftCorner(a, a) = l.x();
  x.bottomRightCorner(b, b) = m.x();
  y.topLeftCorner(a, a) = l.y();
  y.bottomRightCorner(b, b) = m.y();
  return LagrangianPlane::from_frame(x, y);
}

HermitianMatrix graph_matrix(const LagrangianPlane& l, const TolerancePolicy& tol) {
  const Matrix x = l.x();
  if (condition_number(x, 1.0) * tol.rank_rel_tol > 1.0) {
    throw Error(ErrorKind::NotInvertible, "plane is not transversal to the vertical plane");
  }
  const Matrix a = x.transpose().partialPivLu().solve(l.y().transpose()).transpose();
  return HermitianMatrix(a, tol);
}

double robin_condition(const LagrangianPlane& l, double epsilon) {
  return condition_number(l.x() + epsilon * l.y(), std::hypot(1.0, epsilon));
}

RobinMap robin_map(const LagrangianPlane& l, double epsilon, const TolerancePolicy& tol) {
  const Matrix d = l.x() + epsilon * l.y();
  const double cond = condition_number(d, std::hypot(1.0, epsilon));
  if (!(cond * tol.rank_rel_tol <= 1.0)) {
    std::ostringstream os;
    os << "cond(X + eps Y) = " << cond << " at eps = " << epsilon;
    throw Error(ErrorKind::SingularEpsilon, os.str());
  }
  // R d = Y  <=>  d^T R^T = Y^T
  const Matrix r = d.transpose().partialPivLu().solve(l.y().transpose()).transpose();
  return {epsilon, HermitianMatrix(r, tol)};
}

double epsilon_select(const std::vector<LagrangianPlane>& planes, const TolerancePolicy& tol,
                      std::uint64_t seed, std::optional<double> exclude) {
  if (planes.empty()) throw Error(ErrorKind::InvalidArgument, "epsilon_select needs planes");
  Rng rng(seed);
  double best_eps = 0.0;
  double best_cond = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kEpsilonCandidates; ++k) {
    const double eps = uniform(rng, 0.9, 1.1) / k;
    if (exclude && std::abs(eps - *exclude) <= 1e-3 * std::abs(*exclude)) continue;
    double worst = 0.0;
    for (const auto& l : planes) worst = std::max(worst, robin_condition(l, eps));
    if (worst <= kComfortableCondition) return eps;
    if (worst < best_cond) {
      best_cond = worst;
      best_eps = eps;
    }
  }
  if (best_cond * tol.rank_rel_tol <= 1.0) return best_eps;
  throw Error(ErrorKind::SelectionFailed, "no admissible eps among the candidate schedule");
}

double epsilon_select_small(const std::vector<LagrangianPlane>& planes, const TolerancePolicy& tol,
                            std::uint64_t seed) {
  double eps = epsilon_select(planes, tol, seed);
  for (int halving = 0; halving < 60; ++halving, eps *= 0.5) {
    bool ok = true;
    for (const auto& l : planes) {
      if (robin_condition(l, eps) * tol.rank_rel_tol > 1.0) {
        ok = false;
        break;
      }
      const RobinMap rm = robin_map(l, eps, tol);
      const HermitianMatrix gap = (1.0 / eps) * HermitianMatrix::identity(l.n()) - rm.r;
      if (inertia(gap, tol).minus != 0) {
        ok = false;
        break;
      }
    }
    if (ok) return eps;
  }
  throw Error(ErrorKind::SelectionFailed, "small-eps regime not reached");
}

LagrangianPlane random_plane(Index n, std::uint64_t seed) {
  const SymplecticMap s = random_symplectic(n, split_seed(seed, 1));
  LagrangianPlane l = LagrangianPlane::horizontal(n).transformed(s);
  Rng rng(split_seed(seed, 2));
  if (uniform(rng, 0.0, 1.0) < 0.5) l = l.transformed(swap_map(n));
  return l;
}

LagrangianPlane random_relation_plane(Index n, Index mul_dim, std::uint64_t seed) {
  if (mul_dim < 0 || mul_dim > n) throw Error(ErrorKind::InvalidArgument, "mul_dim out of range");
  Rng rng(seed);
  const Matrix u = random_unitary(n, rng);
  const Index d = n - mul_dim;
  const Matrix dom = u.leftCols(d);
  const Matrix mul = u.rightCols(mul_dim);
  const HermitianMatrix h = random_hermitian(d, rng);
  Matrix x = Matrix::Zero(n, n);
  Matrix y = Matrix::Zero(n, n);
  x.leftCols(d) = dom;
  y.leftCols(d) = dom * h.matrix();
  y.rightCols(mul_dim) = mul;
  return LagrangianPlane::from_frame(x, y);
}

LagrangianPlane transversal_companion(const std::vector<LagrangianPlane>& planes,
                                      const TolerancePolicy& tol, std::uint64_t seed) {
  if (planes.empty()) throw Error(ErrorKind::InvalidArgument, "transversal_companion needs planes");
  const Index n = planes.front().n();
  Rng rng(seed);
  for (int draw = 0; draw < kCompanionDraws; ++draw) {
    LagrangianPlane cand = LagrangianPlane::graph(random_hermitian(n, rng));
    if (uniform(rng, 0.0, 1.0) < 0.5) cand = cand.transformed(swap_map(n));
    bool ok = true;
    for (const auto& l : planes) {
      const double smin = smallest_singular_value(pairing(l, cand));
      if (smin < kTransversalMargin || intersection_dim(l, cand, tol) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  throw Error(ErrorKind::SelectionFailed, "no transversal companion found");
}

SymplecticMap normalizing_map(const LagrangianPlane& la, const LagrangianPlane& l4,
                              const TolerancePolicy& tol) {
  const Index n = la.n();
  const Matrix p = pairing(la, l4);
  const double cond = condition_number(p, 1.0);
  if (!(cond * tol.rank_rel_tol <= 1.0)) {
    std::ostringstream os;
    os << "omega-pairing between the planes has condition number " << cond;
    throw Error(ErrorKind::DualBasisFailure, os.str());
  }
  // Columns of la's frame and the omega-dual columns of l4 form a symplectic basis.
  Matrix t(2 * n, 2 * n);
  t.leftCols(n) = la.frame();
  t.rightCols(n) = l4.frame() * p.inverse();
  const Matrix j = standard_j(n);
  return SymplecticMap(-j * t.adjoint() * j, tol);
}

}  // namespace lagidx
