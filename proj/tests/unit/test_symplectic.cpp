#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lagidx/random.hpp"
#include "lagidx/symplectic.hpp"

using namespace lagidx;
using lagidx::testing::diag;
using lagidx::testing::real_matrix;

namespace {

Vector unit(Index dim, Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST(Omega, BasisPairs) {
  EXPECT_EQ(omega(unit(2, 0), unit(2, 1)), Complex(1.0, 0.0));
  EXPECT_EQ(omega(unit(2, 1), unit(2, 0)), Complex(-1.0, 0.0));
}

TEST(Omega, SelfPairingIsImaginary) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector u = random_complex(6, 1, rng);
    EXPECT_NEAR(omega(u, u).real(), 0.0, 1e-12);
    const Vector r = u.real().cast<Complex>();
    EXPECT_EQ(omega(r, r), Complex(0.0, 0.0));
  }
}

TEST(Omega, SkewHermitian) {
  Rng rng(2);
  const Vector u = random_complex(4, 1, rng);
  const Vector v = random_complex(4, 1, rng);
  EXPECT_LT(std::abs(omega(u, v) + std::conj(omega(v, u))), 1e-12);
  EXPECT_LT(std::abs(omega(u, v) - u.dot(standard_j(2) * v)), 1e-12);
}

TEST(IsSymplectic, Examples) {
  EXPECT_TRUE(is_symplectic(Matrix::Identity(4, 4)));
  EXPECT_TRUE(is_symplectic(SymplecticMap::shear(diag({1, -2})).matrix()));
  EXPECT_FALSE(is_symplectic(real_matrix(2, 2, {2, 0, 0, 1})));
  EXPECT_THROW(is_symplectic(Matrix::Identity(3, 3)), Error);
}

TEST(SymplecticMap, ConstructorValidates) {
  try {
    SymplecticMap s(real_matrix(2, 2, {2, 0, 0, 1}));
    FAIL() << "accepted a non-symplectic matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSymplectic);
  }
}

TEST(SymplecticExp, ZeroGivesIdentity) {
  EXPECT_LT((symplectic_exp(HermitianMatrix::zero(4)).matrix() - Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(RandomSymplectic, ValidAndUnimodular) {
  for (Index n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SymplecticMap s = random_symplectic(n, seed);
      EXPECT_TRUE(is_symplectic(s.matrix()));
      EXPECT_NEAR(std::abs(s.matrix().determinant()), 1.0, 1e-9);
    }
  }
}

TEST(RandomSymplectic, Reproducible) {
  EXPECT_EQ(random_symplectic(3, 42).matrix(), random_symplectic(3, 42).matrix());
  EXPECT_NE(random_symplectic(3, 42).matrix(), random_symplectic(3, 43).matrix());
}

TEST(SymplecticMap, InverseAndCompose) {
  const SymplecticMap s = random_symplectic(3, 9);
  const SymplecticMap t = random_symplectic(3, 10);
  EXPECT_LT((s.compose(s.inverse()).matrix() - Matrix::Identity(6, 6)).norm(), 1e-12);
  EXPECT_LT((s.compose(t).matrix() - s.matrix() * t.matrix()).norm(), 1e-14);
}

TEST(SymplecticMap, BlockUnitary) {
  Rng rng(4);
  EXPECT_TRUE(is_symplectic(SymplecticMap::block_unitary(random_unitary(3, rng)).matrix()));
  EXPECT_THROW(SymplecticMap::block_unitary(2.0 * Matrix::Identity(2, 2)), Error);
}

TEST(SwapMap, AntiSymplecticInvolution) {
  const AntiSymplecticMap a = swap_map(3);
  EXPECT_TRUE(is_antisymplectic(a.matrix()));
  EXPECT_FALSE(is_symplectic(a.matrix()));
  EXPECT_EQ(a.matrix() * a.matrix(), Matrix::Identity(6, 6));
}

TEST(DirectSum, IdentityAndSwap) {
  const SymplecticMap id = direct_sum(SymplecticMap::identity(2), SymplecticMap::identity(1));
  EXPECT_EQ(id.matrix(), Matrix::Identity(6, 6));
  const Matrix swaps = direct_sum_matrix(swap_map(2).matrix(), swap_map(1).matrix());
  EXPECT_EQ(swaps, swap_map(3).matrix());
}

TEST(DirectSum, RandomSummandsStaySymplectic) {
  for (Index a = 1; a <= 3; ++a) {
    for (Index b = 1; b <= 3; ++b) {
      const SymplecticMap s = direct_sum(random_symplectic(a, a), random_symplectic(b, 10 + b));
      EXPECT_TRUE(is_symplectic(s.matrix()));
    }
  }
}

TEST(DirectSum, EmbeddingMatchesBlockAction) {
  const SymplecticMap s1 = random_symplectic(2, 1);
  const SymplecticMap s2 = random_symplectic(1, 2);
  Rng rng(6);
  const Vector u = random_complex(4, 1, rng);
  const Vector v = random_complex(2, 1, rng);
  const Vector lhs = direct_sum(s1, s2).matrix() * embed_direct_sum(u, v);
  const Vector rhs = embed_direct_sum(s1.matrix() * u, s2.matrix() * v);
  EXPECT_LT((lhs - rhs).norm(), 1e-12);
}

TEST(DirectSum, PermutationLayout) {
  // (x_a, y_a, x_b, y_b) with a = 2, b = 1 occupies positions 0..5; the sum
  // orders them as (x_a, x_b, y_a, y_b).
  const std::vector<Index> expected{0, 1, 4, 2, 3, 5};
  EXPECT_EQ(direct_sum_permutation(2, 1), expected);
}
