#include "lagidx/random.hpp"

#include <Eigen/QR>

namespace lagidx {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

std::uint64_t label_stream(const char* label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = label; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ULL;
  }
  return h;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Matrix random_complex(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

HermitianMatrix random_hermitian(Index n, Rng& rng, double scale) {
  const Matrix g = random_complex(n, n, rng);
  return HermitianMatrix::symmetrize(scale * 0.5 * (g + g.adjoint()));
}

Matrix random_unitary(Index n, Rng& rng) {
  const Matrix g = random_complex(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution does not depend on Householder sign choices.
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_hermitian_with_nullity(Index n, Index nullity, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) {
    if (i < nullity) {
      d(i) = 0.0;
    } else {
      // Bounded away from zero so the kernel dimension is unambiguous.
      const double mag = uniform(rng, 0.3, 2.0);
      d(i) = uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
    }
  }
  return HermitianMatrix::symmetrize(u * d.asDiagonal() * u.adjoint());
}

HermitianMatrix random_projector(Index n, Index rank, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix b = u.leftCols(rank);
  return HermitianMatrix::symmetrize(b * b.adjoint());
}

}  // namespace lagidx
