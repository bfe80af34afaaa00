#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lagidx/random.hpp"
#include "lagidx/relations.hpp"

using namespace lagidx;
using lagidx::testing::diag;
using lagidx::testing::graph;
using lagidx::testing::real_matrix;

TEST(Decompose, GraphPlane) {
  const HermitianMatrix a = diag({2, -1});
  const RelationParts parts = decompose(LagrangianPlane::graph(a));
  EXPECT_LT((parts.dom_projector.matrix() - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((parts.operator_part.matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_EQ(parts.mul_dim, 0);
}

TEST(Decompose, VerticalPlane) {
  const RelationParts parts = decompose(LagrangianPlane::vertical(3));
  EXPECT_LT(parts.dom_projector.matrix().norm(), 1e-12);
  EXPECT_LT(parts.operator_part.matrix().norm(), 1e-12);
  EXPECT_EQ(parts.mul_dim, 3);
}

TEST(Decompose, PartiallyMultivalued) {
  // span{(e1, c e1), (0, e2)} with c = -3.
  const LagrangianPlane l = LagrangianPlane::from_frame(diag({1, 0}).matrix(), diag({-3, 1}).matrix());
  const RelationParts parts = decompose(l);
  EXPECT_LT((parts.dom_projector.matrix() - diag({1, 0}).matrix()).norm(), 1e-12);
  EXPECT_LT((parts.operator_part.matrix() - diag({-3, 0}).matrix()).norm(), 1e-12);
  EXPECT_EQ(parts.mul_dim, 1);
  EXPECT_EQ(parts.operator_inertia(), (Inertia{1, 0, 0}));
}

TEST(Decompose, RecomposeRoundTrip) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Index n = 1 + seed % 6;
    const LagrangianPlane l = random_relation_plane(n, seed % (n + 1), seed);
    const RelationParts parts = decompose(l);
    EXPECT_EQ(parts.mul_dim, static_cast<int>(seed % (n + 1)));
    EXPECT_TRUE(same_plane(recompose(parts), l));
  }
}

TEST(Difference, GraphsSubtract) {
  const HermitianMatrix a = diag({1, 4});
  const HermitianMatrix b(real_matrix(2, 2, {0, 1, 1, 2}));
  EXPECT_TRUE(same_plane(difference(LagrangianPlane::graph(a), LagrangianPlane::graph(b)),
                         LagrangianPlane::graph(a - b)));
}

TEST(Difference, HorizontalIsNeutral) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + seed % 4;
    const LagrangianPlane l = random_relation_plane(n, seed % (n + 1), seed);
    EXPECT_TRUE(same_plane(difference(l, LagrangianPlane::horizontal(n)), l));
  }
}

TEST(Difference, VerticalAbsorbs) {
  EXPECT_TRUE(same_plane(difference(LagrangianPlane::vertical(2), graph({1, 2})), LagrangianPlane::vertical(2)));
}

TEST(Difference, ShearAgreesWithGraphSubtraction) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 5;
    const LagrangianPlane l = random_relation_plane(n, trial % (n + 1), 100 + trial);
    const HermitianMatrix a = random_hermitian(n, rng);
    const LagrangianPlane sheared = l.transformed(SymplecticMap::shear(-a));
    EXPECT_TRUE(same_plane(difference(l, LagrangianPlane::graph(a)), sheared));
  }
}

TEST(Difference, DimensionMismatch) {
  EXPECT_THROW(difference(graph({1}), graph({1, 2})), Error);
}

TEST(Inverse, InvertibleGraph) {
  const HermitianMatrix a = diag({2, -4});
  EXPECT_TRUE(same_plane(inverse(LagrangianPlane::graph(a)), graph({0.5, -0.25})));
}

TEST(Inverse, HorizontalBecomesVertical) {
  EXPECT_TRUE(same_plane(inverse(LagrangianPlane::horizontal(3)), LagrangianPlane::vertical(3)));
}

TEST(Inverse, SingularGraphUsesPseudoinverseOnDomain) {
  // G_A for A = diag(2, 0) is span{(e1, 2 e1), (e2, 0)}, so the inverse has
  // domain span e1 with operator 1/2 and multivalued part span e2.
  const RelationParts parts = decompose(inverse(graph({2, 0})));
  EXPECT_EQ(parts.mul_dim, 1);
  EXPECT_LT((parts.operator_part.matrix() - diag({0.5, 0}).matrix()).norm(), 1e-12);
}

TEST(Inverse, Involution) {
  const LagrangianPlane l = random_relation_plane(4, 2, 9);
  EXPECT_TRUE(same_plane(inverse(inverse(l)), l));
}

TEST(Compress, Examples) {
  const HermitianMatrix a(real_matrix(2, 2, {1, 1, 1, 1}));
  EXPECT_LT((compress(a, HermitianMatrix::identity(2)).matrix() - a.matrix()).norm(), 1e-14);
  EXPECT_LT(compress(a, HermitianMatrix::zero(2)).matrix().norm(), 1e-14);
  EXPECT_LT((compress(a, diag({1, 0})).matrix() - diag({1, 0}).matrix()).norm(), 1e-14);
}

TEST(Compress, RejectsNonProjector) {
  EXPECT_THROW(compress(diag({1, 1}), diag({2, 0})), Error);
}
