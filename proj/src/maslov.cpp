#include "lagidx/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "lagidx/random.hpp"

namespace lagidx {

namespace {

constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kGolden = 0.6180339887498949;
constexpr int kSubGrid = 64;
constexpr double kCoarseGap = 0.05;
constexpr double kFineGap = 0.005;

Matrix stack(const FramePoint& f) {
  Matrix z(f.x.rows() + f.y.rows(), f.x.cols());
  z << f.x, f.y;
  return z;
}

FramePoint split(const Matrix& z) {
  const Index n = z.cols();
  return {z.topRows(n), z.bottomRows(n)};
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

void require_projector(const HermitianMatrix& q, const TolerancePolicy& tol) {
  const Matrix& m = q.matrix();
  if ((m * m - m).norm() > tol.residual_tol * std::max(1.0, m.norm())) {
    throw Error(ErrorKind::InvalidArgument, "expected an orthogonal projector");
  }
}

/// Sampled-path helper: unitary W = (X + iY)(X - iY)^{-1} of a plane.
Matrix unitary_of(const LagrangianPlane& l) {
  const Complex i(0.0, 1.0);
  const Matrix num = l.x() + i * l.y();
  const Matrix den = l.x() - i * l.y();
  return den.transpose().partialPivLu().solve(num.transpose()).transpose();
}

FramePoint frame_of_unitary(const Matrix& w) {
  const Complex i(0.0, 1.0);
  const Index n = w.rows();
  return {0.5 * (w + identity(n)), -0.5 * i * (w - identity(n))};
}

/// Kernel of X_M* Y - Y_M* X for the moving frame.
Matrix meet_matrix(const LagrangianPlane& m, const FramePoint& f) {
  return m.x().adjoint() * f.y - m.y().adjoint() * f.x;
}

struct Sample {
  double t;
  double sigma;
  Matrix q;
};

/// Smallest singular value of the meet matrix after orthonormalizing the
/// moving frame. It depends only on the plane L(t) and vanishes exactly at
/// crossings.
struct Sigma {
  const RegularPath& path;
  const LagrangianPlane& m;

  Sample at(double t) const {
    const Matrix z = stack(path.frame_at(t));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(z.rows(), z.cols());
    const Matrix f = meet_matrix(m, split(q));
    // The Hermitian dilation [[0, F], [F*, 0]] has eigenvalues ±σ_i(F) and is
    // much cheaper to diagonalize than a complex SVD at the same accuracy.
    const Index n = f.rows();
    Matrix dilation = Matrix::Zero(2 * n, 2 * n);
    dilation.topRightCorner(n, n) = f;
    dilation.bottomLeftCorner(n, n) = f.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(dilation, Eigen::EigenvaluesOnly);
    return {t, eig.eigenvalues().cwiseAbs().minCoeff(), std::move(q)};
  }
  double operator()(double t) const { return at(t).sigma; }
};

/// Gap distance (sine of the largest principal angle) between the spans of
/// two orthonormal frames.
double gap(const Matrix& qa, const Matrix& qb) {
  const Matrix c = qa.adjoint() * qb;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(c.adjoint() * c, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, 1.0 - eig.eigenvalues()(0)));
}

struct Minimum {
  double t;
  double width;
};

/// Golden-section search for the minimum of a unimodal function on [a, b],
/// carried down to a few ulps of t so that fast-moving paths still resolve
/// their zeros.
Minimum golden_minimize(const Sigma& sigma, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIterations = 200;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = sigma(c);
  double fd = sigma(d);
  for (int it = 0; it < kMaxIterations; ++it) {
    if (b - a <= std::max(4.0 * eps * std::max(std::abs(a), std::abs(b)), 1e-18)) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = sigma(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = sigma(d);
    }
  }
  return {fc <= fd ? c : d, b - a};
}

/// Rate of change of the plane L(t) in the gap metric near t.
double local_speed(const Sigma& sigma, double t) {
  constexpr double kDelta = 1e-9;
  const double lo = std::max(0.0, t - kDelta);
  const double hi = std::min(1.0, t + kDelta);
  return gap(sigma.at(lo).q, sigma.at(hi).q) / (hi - lo);
}

/// Raw-frame coefficients of an orthonormal basis of L(t) ∩ M. Singular
/// values of the normalized meet matrix up to `threshold` count as zero.
Matrix meet_kernel(const RegularPath& path, const LagrangianPlane& m, double t, double threshold) {
  const Matrix z = stack(path.frame_at(t));
  const Index n = z.cols();
  Eigen::HouseholderQR<Matrix> qr(z);
  const Matrix q = qr.householderQ() * Matrix::Identity(z.rows(), n);
  const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Matrix> svd(meet_matrix(m, split(q)), Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  Index d = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold) ++d;
  }
  const Matrix kq = svd.matrixV().rightCols(d);
  return r.triangularView<Eigen::Upper>().solve(kq);
}

void refine(const Sigma& sigma, const Sample& a, const Sample& b, double max_gap, double min_width,
            std::vector<Sample>& out) {
  if (b.t - a.t <= min_width || gap(a.q, b.q) <= max_gap) return;
  Sample mid = sigma.at(0.5 * (a.t + b.t));
  refine(sigma, a, mid, max_gap, min_width, out);
  out.push_back(mid);
  refine(sigma, out.back(), b, max_gap, min_width, out);
}

/// Uniform grid on [lo, hi], bisected wherever neighbouring planes are more
/// than max_gap apart. Paths that sweep most of their angle in a short time
/// window are thereby sampled evenly along the Grassmannian.
std::vector<Sample> adaptive_samples(const Sigma& sigma, double lo, double hi, int points, double max_gap,
                                     double min_width) {
  std::vector<Sample> out;
  out.push_back(sigma.at(lo));
  for (int k = 1; k <= points; ++k) {
    const double t = k == points ? hi : lo + (hi - lo) * static_cast<double>(k) / points;
    Sample right = sigma.at(t);
    const Sample left = out.back();
    refine(sigma, left, right, max_gap, min_width, out);
    out.push_back(std::move(right));
  }
  return out;
}

struct Candidate {
  double lo;
  double hi;
};

/// Brackets around sampled local minima of sigma that could hide a zero.
/// sigma changes by at most sqrt(2) times the gap between planes, so a sample
/// farther than twice its neighbouring gaps from zero cannot border a
/// crossing. Runs of equal values (plateaus) collapse into one bracket.
std::vector<Candidate> local_minima(const std::vector<Sample>& s, double cut) {
  const std::size_t count = s.size();
  std::vector<double> gaps(count, 0.0);
  for (std::size_t i = 0; i + 1 < count; ++i) gaps[i] = gap(s[i].q, s[i + 1].q);

  std::vector<Candidate> out;
  std::size_t i = 0;
  while (i < count) {
    const bool left_ok = i == 0 || s[i].sigma <= s[i - 1].sigma;
    if (!left_ok) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < count && s[j + 1].sigma == s[j].sigma) ++j;
    const bool right_ok = j + 1 == count || s[j].sigma <= s[j + 1].sigma;
    const double reach = std::max(i > 0 ? gaps[i - 1] : 0.0, gaps[j]);
    if (right_ok && s[i].sigma <= 2.0 * reach + cut) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = j + 1 == count ? j : j + 1;
      out.push_back({s[lo].t, s[hi].t});
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

RegularPath RegularPath::graph_segment(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "graph segment endpoints");
  const Index n = a.dim();
  const Matrix am = a.matrix();
  const Matrix delta = b.matrix() - a.matrix();
  FrameFn frame = [n, am, delta](double t) { return FramePoint{identity(n), am + t * delta}; };
  FrameFn deriv = [n, delta](double) { return FramePoint{Matrix::Zero(n, n), delta}; };
  return RegularPath(Kind::graph_segment, n, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::scaled_projector(const HermitianMatrix& q, const TolerancePolicy& tol) {
  require_projector(q, tol);
  const Index n = q.dim();
  const Matrix qm = q.matrix();
  FrameFn frame = [n, qm](double t) { return FramePoint{identity(n), t * qm}; };
  FrameFn deriv = [n, qm](double) { return FramePoint{Matrix::Zero(n, n), qm}; };
  return RegularPath(Kind::scaled_projector, n, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::custom(Index n, FrameFn frame, std::optional<FrameFn> derivative) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "path dimension must be positive");
  return RegularPath(Kind::custom, n, std::move(frame), std::move(derivative));
}

RegularPath RegularPath::sampled(const std::vector<double>& grid, const std::vector<LagrangianPlane>& planes) {
  if (grid.size() < 2 || grid.size() != planes.size()) {
    throw Error(ErrorKind::InvalidArgument, "sampled path needs matching grid and planes, at least two");
  }
  if (grid.front() != 0.0 || grid.back() != 1.0) {
    throw Error(ErrorKind::InvalidArgument, "sampled path grid must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i + 1] > grid[i])) throw Error(ErrorKind::InvalidArgument, "sampled path grid must increase");
  }
  const Index n = planes.front().n();
  std::vector<Matrix> w;
  std::vector<Matrix> k;
  for (const auto& p : planes) {
    if (p.n() != n) throw Error(ErrorKind::DimensionMismatch, "sampled path planes");
    w.push_back(unitary_of(p));
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Matrix step = w[i].adjoint() * w[i + 1];
    // Principal logarithm of a unitary: skew-Hermitian up to rounding.
    const Matrix log = step.log();
    k.push_back(0.5 * (log - log.adjoint()));
  }
  auto locate = [grid](double t) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
    return std::min(i, grid.size() - 2);
  };
  FrameFn frame = [grid, w, k, locate](double t) {
    const std::size_t i = locate(t);
    const double s = (t - grid[i]) / (grid[i + 1] - grid[i]);
    const Matrix wt = w[i] * (s * k[i]).exp();
    return frame_of_unitary(wt);
  };
  FrameFn deriv = [grid, w, k, locate](double t) {
    const std::size_t i = locate(t);
    const double dt = grid[i + 1] - grid[i];
    const double s = (t - grid[i]) / dt;
    const Matrix dw = w[i] * (s * k[i]).exp() * k[i] / dt;
    const Complex im(0.0, 1.0);
    return FramePoint{0.5 * dw, -0.5 * im * dw};
  };
  return RegularPath(Kind::custom, n, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::rotation_loop(const LagrangianPlane& l, const HermitianMatrix& p) {
  if (p.dim() != l.n()) throw Error(ErrorKind::DimensionMismatch, "rotation loop projector");
  require_projector(p, TolerancePolicy{});
  const Index n = l.n();
  const Matrix chart = l.unitary_chart().matrix();
  const Matrix pm = p.matrix();
  const Matrix rest = identity(n) - pm;
  constexpr double pi = std::numbers::pi;
  FrameFn frame = [n, chart, pm, rest](double t) {
    Matrix z(2 * n, n);
    z << rest + std::cos(pi * t) * pm, std::sin(pi * t) * pm;
    return split(chart * z);
  };
  FrameFn deriv = [n, chart, pm](double t) {
    Matrix z(2 * n, n);
    z << -pi * std::sin(pi * t) * pm, pi * std::cos(pi * t) * pm;
    return split(chart * z);
  };
  return RegularPath(Kind::custom, n, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::concatenate(const RegularPath& first, const RegularPath& second, double split_at) {
  if (first.n() != second.n()) throw Error(ErrorKind::DimensionMismatch, "concatenated paths");
  if (!(split_at > 0.0 && split_at < 1.0)) throw Error(ErrorKind::InvalidArgument, "split point must lie in (0, 1)");
  FrameFn frame = [first, second, split_at](double t) {
    return t <= split_at ? first.frame_at(t / split_at) : second.frame_at((t - split_at) / (1.0 - split_at));
  };
  FrameFn deriv = [first, second, split_at](double t) {
    if (t <= split_at) {
      FramePoint d = first.derivative_at(t / split_at);
      return FramePoint{d.x / split_at, d.y / split_at};
    }
    FramePoint d = second.derivative_at((t - split_at) / (1.0 - split_at));
    return FramePoint{d.x / (1.0 - split_at), d.y / (1.0 - split_at)};
  };
  return RegularPath(Kind::custom, first.n(), std::move(frame), std::move(deriv));
}

RegularPath RegularPath::transformed(const SymplecticMap& s) const {
  if (s.half_dim() != n_) throw Error(ErrorKind::DimensionMismatch, "path transform");
  const Matrix sm = s.matrix();
  const RegularPath self = *this;
  FrameFn frame = [self, sm](double t) { return split(sm * stack(self.frame_at(t))); };
  FrameFn deriv = [self, sm](double t) { return split(sm * stack(self.derivative_at(t))); };
  return RegularPath(Kind::custom, n_, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::reparametrized(std::function<double(double)> phi, std::function<double(double)> dphi) const {
  const RegularPath self = *this;
  FrameFn frame = [self, phi](double t) { return self.frame_at(clamp01(phi(t))); };
  FrameFn deriv = [self, phi, dphi](double t) {
    FramePoint d = self.derivative_at(clamp01(phi(t)));
    const double g = dphi(t);
    return FramePoint{g * d.x, g * d.y};
  };
  return RegularPath(Kind::custom, n_, std::move(frame), std::move(deriv));
}

RegularPath RegularPath::reversed() const {
  return reparametrized([](double t) { return 1.0 - t; }, [](double) { return -1.0; });
}

FramePoint RegularPath::derivative_at(double t) const {
  if (derivative_) return (*derivative_)(t);
  const double lo = std::max(0.0, t - kFiniteDifferenceStep);
  const double hi = std::min(1.0, t + kFiniteDifferenceStep);
  const FramePoint a = frame_(lo);
  const FramePoint b = frame_(hi);
  return {(b.x - a.x) / (hi - lo), (b.y - a.y) / (hi - lo)};
}

LagrangianPlane RegularPath::plane_at(double t, const TolerancePolicy& tol) const {
  const FramePoint f = frame_at(t);
  return LagrangianPlane::from_frame(f.x, f.y, tol);
}

HermitianMatrix RegularPath::full_crossing_form(double t) const {
  const FramePoint f = frame_at(t);
  const FramePoint d = derivative_at(t);
  return HermitianMatrix::symmetrize(f.x.adjoint() * d.y - f.y.adjoint() * d.x);
}

HermitianMatrix crossing_form(const RegularPath& path, double t0, const LagrangianPlane& m,
                              const TolerancePolicy& tol) {
  if (path.n() != m.n()) throw Error(ErrorKind::DimensionMismatch, "crossing form");
  const Matrix k = meet_kernel(path, m, t0, tol.cutoff(1.0));
  if (k.cols() == 0) {
    std::ostringstream os;
    os << "no crossing at t = " << t0;
    throw Error(ErrorKind::NoCrossing, os.str());
  }
  // Kernel vectors are coefficient vectors in the moving frame; the form is
  // expressed in the orthonormal basis Z(t0) k of L(t0) ∩ M.
  return path.full_crossing_form(t0).congruence(k);
}

std::vector<Crossing> find_crossings(const RegularPath& path, const LagrangianPlane& m, const TolerancePolicy& tol,
                                     const CrossingSearch& search) {
  if (path.n() != m.n()) throw Error(ErrorKind::DimensionMismatch, "crossing search");
  if (search.grid < 2) throw Error(ErrorKind::InvalidArgument, "crossing search grid too small");
  const Sigma sigma{path, m};
  const double cut = tol.cutoff(1.0);

  const std::vector<Sample> coarse =
      adaptive_samples(sigma, 0.0, 1.0, search.grid, kCoarseGap, search.time_resolution);

  struct Found {
    double t;
    double threshold;
  };
  std::vector<Found> found;
  for (const Candidate& c : local_minima(coarse, cut)) {
    const std::vector<Sample> fine =
        adaptive_samples(sigma, c.lo, c.hi, kSubGrid, kFineGap, search.time_resolution);
    for (const Candidate& sc : local_minima(fine, cut)) {
      const Minimum best = golden_minimize(sigma, sc.lo, sc.hi);
      double t = best.t;
      double value = sigma(t);
      // A zero inside the final bracket leaves at most speed * width behind.
      const double threshold = cut + 2.0 * local_speed(sigma, t) * best.width;
      // Crossings at the ends of the path are pinned to the exact endpoint so
      // that the endpoint conventions apply.
      for (double end : {0.0, 1.0}) {
        if (std::abs(t - end) <= search.cluster_width && sigma(end) <= cut) {
          t = end;
          value = sigma(end);
        }
      }
      if (value <= threshold) found.push_back({t, std::max(threshold, cut)});
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.t < b.t; });

  std::vector<Found> distinct;
  for (const Found& f : found) {
    if (!distinct.empty()) {
      const double gap_t = f.t - distinct.back().t;
      if (gap_t <= search.time_resolution * 10.0) continue;
      if (gap_t <= search.cluster_width) {
        std::ostringstream os;
        os << "crossings at t = " << distinct.back().t << " and t = " << f.t << " cannot be separated";
        throw Error(ErrorKind::UnresolvedCluster, os.str());
      }
    }
    distinct.push_back(f);
  }

  std::vector<Crossing> out;
  for (const Found& f : distinct) {
    const Matrix k = meet_kernel(path, m, f.t, f.threshold);
    if (k.cols() == 0) continue;
    const HermitianMatrix form = path.full_crossing_form(f.t).congruence(k);
    const Inertia in = inertia(form, tol);
    if (in.zero > 0) {
      std::ostringstream os;
      os << "crossing form at t = " << f.t << " has inertia " << to_string(in);
      throw DegenerateCrossingError(f.t, os.str());
    }
    out.push_back({f.t, static_cast<int>(k.cols()), in});
  }
  return out;
}

int maslov_from_crossings(const std::vector<Crossing>& crossings) {
  int total = 0;
  for (const Crossing& c : crossings) {
    if (c.t < 1.0) total += c.form_inertia.plus;
    if (c.t > 0.0) total -= c.form_inertia.minus;
  }
  return total;
}

int maslov_index(const RegularPath& path, const LagrangianPlane& m, const TolerancePolicy& tol,
                 const CrossingSearch& search) {
  return maslov_from_crossings(find_crossings(path, m, tol, search));
}

bool is_nondecreasing(const RegularPath& path, const TolerancePolicy& tol, int grid) {
  for (int k = 0; k <= grid; ++k) {
    const double t = static_cast<double>(k) / grid;
    const FramePoint f = path.frame_at(t);
    // Normalize by the frame Gram matrix so the check sees the form on the
    // plane rather than on possibly badly scaled coordinates.
    const Matrix z = stack(f);
    const Eigen::LLT<Matrix> gram(z.adjoint() * z);
    const Matrix inv_r = gram.matrixU().solve(identity(path.n()));
    const HermitianMatrix form = path.full_crossing_form(t).congruence(inv_r);
    if (inertia(form, tol).minus > 0) return false;
  }
  return true;
}

RegularPath minimal_path(const LagrangianPlane& l0, const LagrangianPlane& l1, const TolerancePolicy& tol,
                         std::uint64_t seed) {
  if (l0.n() != l1.n()) throw Error(ErrorKind::DimensionMismatch, "minimal path endpoints");
  const Index n = l0.n();
  const LagrangianPlane l4 = transversal_companion({l0, l1}, tol, seed);
  const SymplecticMap s = normalizing_map(l0, l4, tol);
  const HermitianMatrix b = graph_matrix(l1.transformed(s, tol), tol);
  const HermitianEigen eig = eigen_decompose(b);
  const SymplecticMap rotate = SymplecticMap::block_unitary(eig.vectors.adjoint(), tol);

  // Per eigenvalue, [[a, c], [0, 1/a]] fixes G_0 and sends G_lambda to G_1
  // when lambda != 0.
  const double cut = tol.cutoff(eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0);
  Matrix straighten = Matrix::Zero(2 * n, 2 * n);
  Matrix q = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double lambda = eig.values(i);
    double a = 1.0;
    double c = 0.0;
    if (lambda > cut) {
      a = std::sqrt(lambda);
      q(i, i) = 1.0;
    } else if (lambda < -cut) {
      c = 1.0 - 1.0 / lambda;
      q(i, i) = 1.0;
    }
    straighten(i, i) = a;
    straighten(i, n + i) = c;
    straighten(n + i, n + i) = 1.0 / a;
  }
  const SymplecticMap total = SymplecticMap(straighten, tol).compose(rotate).compose(s);
  const Matrix back = total.inverse().matrix();
  RegularPath::FrameFn frame_fn = [n, back, q](double t) {
    Matrix z(2 * n, n);
    z << identity(n), t * q;
    return split(back * z);
  };
  RegularPath::FrameFn deriv_fn = [n, back, q](double) {
    Matrix z(2 * n, n);
    z << Matrix::Zero(n, n), q;
    return split(back * z);
  };
  return RegularPath::custom(n, std::move(frame_fn), std::move(deriv_fn));
}

VerificationRecord zwz_check(const RegularPath& path, const LagrangianPlane& m1, const LagrangianPlane& m2,
                             const TolerancePolicy& tol) {
  const LagrangianPlane l0 = path.plane_at(0.0, tol);
  const LagrangianPlane l1 = path.plane_at(1.0, tol);
  const int mas1 = maslov_index(path, m1, tol);
  const int mas2 = maslov_index(path, m2, tol);
  const int a1 = duistermaat_omega(l0, l1, m1, tol).value;
  const int a2 = duistermaat_omega(l0, l1, m2, tol).value;
  const int b1 = duistermaat_omega(l0, m1, m2, tol).value;
  const int b2 = duistermaat_omega(l1, m1, m2, tol).value;
  VerificationRecord rec;
  rec.identity = "maslov-reference-change";
  rec.sides = {{"Mas(L,M1)-Mas(L,M2)", mas1 - mas2},
               {"iD(L0,L1,M1)-iD(L0,L1,M2)", a1 - a2},
               {"iD(L1,M1,M2)-iD(L0,M1,M2)", b2 - b1}};
  rec.terms = {{"Mas(L,M1)", mas1}, {"Mas(L,M2)", mas2}, {"iD(L0,L1,M1)", a1},
               {"iD(L0,L1,M2)", a2}, {"iD(L0,M1,M2)", b1}, {"iD(L1,M1,M2)", b2}};
  return rec;
}

bool ExtremalReport::holds() const {
  if (minimal_maslov != duistermaat) return false;
  return std::all_of(sample_maslov.begin(), sample_maslov.end(), [this](int v) { return v >= duistermaat; });
}

ExtremalReport extremal_check(const LagrangianPlane& l0, const LagrangianPlane& l1, const LagrangianPlane& m,
                              int trials, const TolerancePolicy& tol, std::uint64_t seed) {
  ExtremalReport report;
  report.duistermaat = duistermaat_omega(l0, l1, m, tol).value;
  const RegularPath base = minimal_path(l0, l1, tol, split_seed(seed, 1));
  report.minimal_maslov = maslov_index(base, m, tol);

  const Index n = l0.n();
  for (int trial = 1; trial < trials; ++trial) {
    Rng rng(split_seed(seed, 2, static_cast<std::uint64_t>(trial)));
    RegularPath candidate = base;
    switch (trial % 3) {
      case 0: {
        const double c = uniform(rng, -0.9, 0.9);
        constexpr double two_pi = 2.0 * std::numbers::pi;
        candidate = base.reparametrized([c](double t) { return t + c * std::sin(two_pi * t) / two_pi; },
                                        [c](double t) { return 1.0 + c * std::cos(two_pi * t); });
        break;
      }
      case 1: {
        const int rank = uniform_int(rng, 1, static_cast<int>(n));
        const HermitianMatrix p = random_projector(n, rank, rng);
        candidate = RegularPath::concatenate(base, RegularPath::rotation_loop(l1, p), uniform(rng, 0.3, 0.7));
        break;
      }
      default: {
        const int rank = uniform_int(rng, 1, static_cast<int>(n));
        const HermitianMatrix p = random_projector(n, rank, rng);
        candidate = RegularPath::concatenate(RegularPath::rotation_loop(l0, p), base, uniform(rng, 0.3, 0.7));
        break;
      }
    }
    try {
      report.sample_maslov.push_back(maslov_index(candidate, m, tol));
    } catch (const DegenerateCrossingError&) {
      ++report.skipped_degenerate;
    }
  }
  return report;
}

}  // namespace lagidx
