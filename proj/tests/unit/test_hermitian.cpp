#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lagidx/coboundary.hpp"
#include "lagidx/random.hpp"

using namespace lagidx;
using lagidx::testing::diag;
using lagidx::testing::real_matrix;

TEST(Inertia, DiagonalEntriesAreCounted) {
  EXPECT_EQ(inertia(diag({1, -1, 0})), (Inertia{1, 1, 1}));
  EXPECT_EQ(inertia(HermitianMatrix::identity(4)), (Inertia{0, 0, 4}));
}

TEST(Inertia, OffDiagonalSwap) {
  const HermitianMatrix h(real_matrix(2, 2, {0, 1, 1, 0}));
  EXPECT_EQ(inertia(h), (Inertia{1, 0, 1}));
}

TEST(Inertia, ComplexHermitian) {
  Matrix m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, -1), 1.0;
  // Eigenvalues 0 and 2.
  EXPECT_EQ(inertia(HermitianMatrix(m)), (Inertia{0, 1, 1}));
}

TEST(Inertia, ZeroCutoffScalesWithNorm) {
  EXPECT_EQ(inertia(diag({1e6, 1e-2})), (Inertia{0, 0, 2}));
  EXPECT_EQ(inertia(diag({1e6, 1e-4})), (Inertia{0, 1, 1}));
  EXPECT_EQ(inertia(diag({1e-10})), (Inertia{0, 1, 0}));
}

TEST(Inertia, InvariantUnderCongruence) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const HermitianMatrix h = random_hermitian_with_nullity(n, trial % n, rng);
    Matrix s = random_complex(n, n, rng);
    ASSERT_LT(condition_number(s), 1e4);
    EXPECT_EQ(inertia(h.congruence(s)), inertia(h));
  }
}

TEST(Inertia, NegatedSwapsCounts) {
  const Inertia in{2, 1, 3};
  EXPECT_EQ(in.negated(), (Inertia{3, 1, 2}));
  EXPECT_EQ(in.signature(), 1);
  EXPECT_EQ(in.dim(), 6);
}

TEST(HermitianMatrix, RejectsAsymmetricInput) {
  try {
    HermitianMatrix h(real_matrix(2, 2, {0, 1, 0, 0}));
    FAIL() << "accepted an asymmetric matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(HermitianMatrix, RejectsNonFiniteAndNonSquare) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianMatrix{m}, Error);
  EXPECT_THROW(HermitianMatrix{Matrix::Zero(2, 3)}, Error);
}

TEST(HermitianMatrix, SymmetrizesRoundingNoise) {
  Matrix m = real_matrix(2, 2, {1, 2, 2, 3});
  m(0, 1) += 1e-14;
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(KernelBasis, ZeroMatrixHasFullKernel) {
  const Matrix k = kernel_basis(Matrix::Zero(2, 2));
  ASSERT_EQ(k.cols(), 2);
  EXPECT_LT((k.adjoint() * k - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(KernelBasis, IdentityHasEmptyKernel) { EXPECT_EQ(kernel_basis(Matrix::Identity(3, 3)).cols(), 0); }

TEST(KernelBasis, RankOneAllOnes) {
  const Matrix k = kernel_basis(real_matrix(2, 2, {1, 1, 1, 1}));
  ASSERT_EQ(k.cols(), 1);
  EXPECT_NEAR(std::abs(k(0, 0) + k(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(k(0, 0)), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(RangeBasis, ComplementsKernel) {
  Rng rng(3);
  const Matrix m = random_complex(5, 2, rng) * random_complex(2, 4, rng);
  EXPECT_EQ(range_basis(m).cols(), 2);
  EXPECT_EQ(kernel_basis(m).cols(), 2);
  EXPECT_EQ(numerical_rank(m), 2);
}

TEST(Pseudoinverse, DiagonalWithZero) {
  const HermitianMatrix p = pseudoinverse(diag({2, 0}));
  EXPECT_LT((p.matrix() - diag({0.5, 0}).matrix()).norm(), 1e-14);
}

TEST(Pseudoinverse, IdentityIsFixed) {
  for (Index n = 1; n <= 4; ++n) {
    EXPECT_LT((pseudoinverse(HermitianMatrix::identity(n)).matrix() - Matrix::Identity(n, n)).norm(), 1e-14);
  }
}

TEST(Pseudoinverse, RankOneOuterProduct) {
  Vector v(3);
  v << Complex(1, 1), Complex(0, -1), Complex(1, 0);
  v *= 2.0 / v.norm();
  const HermitianMatrix h(v * v.adjoint());
  const HermitianMatrix p = pseudoinverse(h);
  EXPECT_LT((p.matrix() - v * v.adjoint() / 16.0).norm(), 1e-13);
  EXPECT_LT((h.matrix() * p.matrix() * h.matrix() - h.matrix()).norm(), 1e-12);
}

TEST(Pseudoinverse, PenroseIdentitiesOnRandomMatrices) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_complex(4, 2, rng) * random_complex(2, 3, rng);
    const Matrix p = pseudoinverse(a);
    EXPECT_LT((a * p * a - a).norm(), 1e-10);
    EXPECT_LT((p * a * p - p).norm(), 1e-10);
    EXPECT_LT(((a * p).adjoint() - a * p).norm(), 1e-10);
    EXPECT_LT(((p * a).adjoint() - p * a).norm(), 1e-10);
  }
}

TEST(RangeProjector, Examples) {
  EXPECT_LT((range_projector(diag({3, 0})).matrix() - diag({1, 0}).matrix()).norm(), 1e-14);
  EXPECT_LT(range_projector(HermitianMatrix::zero(3)).matrix().norm(), 1e-14);
  Vector v(2);
  v << 1.0, 1.0;
  v /= std::sqrt(2.0);
  const HermitianMatrix vv(v * v.adjoint());
  EXPECT_LT((range_projector(vv).matrix() - vv.matrix()).norm(), 1e-14);
}

TEST(ConditionNumber, SingularIsInfinite) {
  EXPECT_TRUE(std::isinf(condition_number(diag({1, 0}).matrix())));
  EXPECT_NEAR(condition_number(diag({4, -2}).matrix()), 2.0, 1e-14);
}

TEST(Tolerance, ValidateRejectsOutOfRange) {
  EXPECT_NO_THROW((TolerancePolicy{1e-9, 1e-8}.validate()));
  EXPECT_THROW((TolerancePolicy{0.0, 1e-8}.validate()), Error);
  EXPECT_THROW((TolerancePolicy{1e-9, 1.5}.validate()), Error);
}

TEST(RandomHermitian, NullityIsExact) {
  Rng rng(17);
  for (Index n = 1; n <= 6; ++n) {
    for (Index k = 0; k <= n; ++k) {
      EXPECT_EQ(inertia(random_hermitian_with_nullity(n, k, rng)).zero, k);
    }
  }
}

TEST(RandomProjector, IsProjectorOfRequestedRank) {
  Rng rng(19);
  const HermitianMatrix p = random_projector(5, 2, rng);
  EXPECT_LT((p.matrix() * p.matrix() - p.matrix()).norm(), 1e-12);
  EXPECT_EQ(inertia(p), (Inertia{0, 3, 2}));
}

TEST(SplitSeed, DeterministicAndDistinct) {
  EXPECT_EQ(split_seed(7, 1, 2), split_seed(7, 1, 2));
  EXPECT_NE(split_seed(7, 1, 2), split_seed(7, 1, 3));
  EXPECT_NE(split_seed(7, 1, 2), split_seed(7, 2, 2));
  EXPECT_NE(label_stream("axioms"), label_stream("graphs"));
}

TEST(Coboundary, SignConvention) {
  // For phi(x1, x2) = x1 the coboundary on (a, b, c) is
  // phi(b, c) - phi(a, c) + phi(a, b) = b - a + a = b.
  const int args[] = {5, 7, 11};
  const long d = coboundary<int>(std::span<const int>(args), [](std::span<const int> r) { return r[0]; });
  EXPECT_EQ(d, 7);
}

TEST(Coboundary, SquareVanishes) {
  const int args[] = {3, 1, 4, 1, 5};
  auto phi = [](std::span<const int> r) { return r[0] * r[1] - 2 * r[2] + r[0] * r[2]; };
  auto dphi = [&](std::span<const int> r) { return coboundary<int>(r, phi); };
  EXPECT_EQ(coboundary<int>(std::span<const int>(args), dphi), 0);
}
