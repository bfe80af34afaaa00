#include <cmath>
#include <tuple>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lagidx/coboundary.hpp"
#include "lagidx/indices.hpp"
#include "lagidx/random.hpp"

using namespace lagidx;
using lagidx::testing::diag;
using lagidx::testing::graph;
using lagidx::testing::scalar;
using lagidx::testing::real_matrix;

namespace {

const IndexMethod kAllMethods[] = {IndexMethod::robin, IndexMethod::omega, IndexMethod::reduce,
                                   IndexMethod::closed_form};
const IndexMethod kPlaneMethods[] = {IndexMethod::robin, IndexMethod::omega, IndexMethod::reduce};

int index_of(IndexMethod m, const LagrangianPlane& a, const LagrangianPlane& b, const LagrangianPlane& c,
             std::uint64_t seed = 0) {
  return duistermaat(m, a, b, c, {}, seed).value;
}

LagrangianPlane random_case_plane(Index n, std::uint64_t seed) {
  // Mixes generic planes with planes that have a multivalued part.
  if (seed % 3 == 0) return random_relation_plane(n, seed % (n + 1), seed);
  return random_plane(n, seed);
}

}  // namespace

// Scalar triples in n = 1, one row per ordering of (A, B, C) over {0, 1, 2}.
class ScalarTruthTable : public ::testing::TestWithParam<std::tuple<double, double, double, int>> {};

TEST_P(ScalarTruthTable, AllMethodsAgree) {
  const auto [a, b, c, expected] = GetParam();
  const LagrangianPlane la = graph({a});
  const LagrangianPlane lb = graph({b});
  const LagrangianPlane lc = graph({c});
  for (IndexMethod m : kAllMethods) {
    EXPECT_EQ(index_of(m, la, lb, lc), expected) << to_string(m);
  }
  EXPECT_EQ(duistermaat_graphs(scalar(a), scalar(b), scalar(c)), expected);
}

INSTANTIATE_TEST_SUITE_P(Orderings, ScalarTruthTable,
                         ::testing::Values(std::make_tuple(0.0, 1.0, 2.0, 0),  // A <= B <= C
                                           std::make_tuple(2.0, 0.0, 1.0, 0),  // B <= C < A
                                           std::make_tuple(1.0, 2.0, 0.0, 0),  // C < A <= B
                                           std::make_tuple(0.0, 2.0, 1.0, 1),  // A <= C < B
                                           std::make_tuple(1.0, 0.0, 2.0, 1),  // B < A <= C
                                           std::make_tuple(2.0, 1.0, 0.0, 1),  // C < B < A
                                           std::make_tuple(1.0, 1.0, 0.0, 0),  // A = B > C
                                           std::make_tuple(1.0, 1.0, 2.0, 0)   // A = B < C
                                           ));

TEST(Duistermaat, NormalizationExamples) {
  const LagrangianPlane g0 = LagrangianPlane::horizontal(2);
  const LagrangianPlane ginf = LagrangianPlane::vertical(2);
  for (IndexMethod m : kPlaneMethods) {
    EXPECT_EQ(index_of(m, g0, graph({-2, 3}), ginf), 1) << to_string(m);
    EXPECT_EQ(index_of(m, g0, graph({-2, -3}), ginf), 2) << to_string(m);
    EXPECT_EQ(index_of(m, g0, graph({2, 3}), ginf), 0) << to_string(m);
  }
  EXPECT_EQ(index_of(IndexMethod::omega, graph({0}), graph({-1}), LagrangianPlane::vertical(1)), 1);
}

TEST(Duistermaat, NormalizationRandom) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 6;
    const HermitianMatrix a = random_hermitian_with_nullity(n, trial % 2, rng);
    const int expected = inertia(a).minus;
    for (IndexMethod m : kPlaneMethods) {
      EXPECT_EQ(index_of(m, LagrangianPlane::horizontal(n), LagrangianPlane::graph(a), LagrangianPlane::vertical(n),
                         trial),
                expected)
          << to_string(m);
    }
  }
}

TEST(Duistermaat, OmegaFormForHorizontalUnitVertical) {
  // With unit frames (1, 0), (1, 1)/sqrt 2 and (0, 1), W has zero diagonal,
  // off-diagonal entries r, -1, r (r = 1/sqrt 2), trace 0 and determinant -1,
  // hence exactly one negative eigenvalue.
  const double r = 1.0 / std::sqrt(2.0);
  const LagrangianPlane diagonal_line = LagrangianPlane::from_frame(real_matrix(1, 1, {r}), real_matrix(1, 1, {r}));
  const OmegaForm w = omega_form(graph({0}), diagonal_line, LagrangianPlane::vertical(1));
  Matrix expected(3, 3);
  expected << 0, r, -1, r, 0, r, -1, r, 0;
  EXPECT_LT((w.w.matrix() - expected).norm(), 1e-12);
  EXPECT_EQ(inertia(w.w), (Inertia{1, 0, 2}));
  const IndexReport rep = duistermaat_omega(graph({0}), graph({1}), LagrangianPlane::vertical(1));
  EXPECT_EQ(rep.value, 0);
  EXPECT_EQ(rep.method, IndexMethod::omega);
  EXPECT_FALSE(rep.epsilon_used.has_value());
}

TEST(Duistermaat, SpecialValues) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + seed % 5;
    const LagrangianPlane l = random_case_plane(n, seed);
    const LagrangianPlane m = random_case_plane(n, seed + 1000);
    const int nd = static_cast<int>(n) - intersection_dim(l, m);
    for (IndexMethod method : kPlaneMethods) {
      EXPECT_EQ(index_of(method, l, l, m, seed), 0);
      EXPECT_EQ(index_of(method, m, l, l, seed), 0);
      EXPECT_EQ(index_of(method, l, m, l, seed), nd);
    }
  }
}

TEST(Duistermaat, SpecialValuesWithSharedIntersection) {
  const LagrangianPlane l = graph({1, 2, 3});
  const LagrangianPlane m = graph({1, 5, 3});
  EXPECT_EQ(index_of(IndexMethod::omega, l, m, l), 1);
  EXPECT_EQ(index_of(IndexMethod::reduce, l, m, l), 1);
  EXPECT_EQ(index_of(IndexMethod::robin, l, m, l), 1);
}

TEST(Duistermaat, MethodsAgreeOnRandomTriples) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Index n = 1 + seed % 6;
    const LagrangianPlane a = random_case_plane(n, 3 * seed);
    const LagrangianPlane b = random_case_plane(n, 3 * seed + 1);
    const LagrangianPlane c = random_case_plane(n, 3 * seed + 2);
    const int omega_value = index_of(IndexMethod::omega, a, b, c);
    EXPECT_GE(omega_value, 0);
    EXPECT_LE(omega_value, n);
    EXPECT_EQ(index_of(IndexMethod::robin, a, b, c, seed), omega_value);
    EXPECT_EQ(index_of(IndexMethod::reduce, a, b, c, seed), omega_value);
  }
}

TEST(Duistermaat, SymplecticInvariance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + seed % 4;
    const LagrangianPlane a = random_case_plane(n, seed);
    const LagrangianPlane b = random_case_plane(n, seed + 50);
    const LagrangianPlane c = random_case_plane(n, seed + 100);
    const SymplecticMap s = random_symplectic(n, seed + 7);
    EXPECT_EQ(index_of(IndexMethod::omega, a.transformed(s), b.transformed(s), c.transformed(s)),
              index_of(IndexMethod::omega, a, b, c));
  }
}

TEST(Duistermaat, AntiSymplecticReversesOrder) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + seed % 4;
    const LagrangianPlane a = random_case_plane(n, seed);
    const LagrangianPlane b = random_case_plane(n, seed + 50);
    const LagrangianPlane c = random_case_plane(n, seed + 100);
    const AntiSymplecticMap t = swap_map(n);
    EXPECT_EQ(index_of(IndexMethod::omega, a.transformed(t), b.transformed(t), c.transformed(t)),
              index_of(IndexMethod::omega, c, b, a));
  }
}

TEST(Duistermaat, CocycleOnQuadruples) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + seed % 5;
    std::vector<LagrangianPlane> quad;
    for (int k = 0; k < 4; ++k) quad.push_back(random_case_plane(n, 10 * seed + k));
    for (IndexMethod m : kPlaneMethods) {
      const long d = coboundary<LagrangianPlane>(std::span<const LagrangianPlane>(quad),
                                                 [&](std::span<const LagrangianPlane> r) {
                                                   return index_of(m, r[0], r[1], r[2], seed);
                                                 });
      EXPECT_EQ(d, 0) << to_string(m);
    }
  }
}

TEST(Duistermaat, ReduceReportsTerms) {
  const IndexReport rep = duistermaat_reduce(graph({2}), graph({1}), graph({0}));
  EXPECT_EQ(rep.value, 1);
  EXPECT_EQ(rep.method, IndexMethod::reduce);
  EXPECT_EQ(rep.diagnostics.size(), 4u);
}

TEST(Duistermaat, RobinForcedEpsilonIsUsed) {
  const IndexReport rep = duistermaat_robin(graph({0}), graph({2}), graph({1}), {}, 0, 0.37);
  EXPECT_EQ(rep.value, 1);
  ASSERT_TRUE(rep.epsilon_used.has_value());
  EXPECT_EQ(*rep.epsilon_used, 0.37);
  ASSERT_EQ(rep.diagnostics.size(), 1u);
  EXPECT_NE(rep.diagnostics[0].second, 0.37);
}

TEST(Duistermaat, RobinIndexAtAnyAdmissibleEpsilon) {
  const LagrangianPlane a = random_plane(3, 1);
  const LagrangianPlane b = random_relation_plane(3, 1, 2);
  const LagrangianPlane c = LagrangianPlane::vertical(3);
  const int expected = index_of(IndexMethod::omega, a, b, c);
  for (double eps : {0.13, 0.5, 0.91}) {
    if (robin_condition(a, eps) > 1e6 || robin_condition(b, eps) > 1e6) continue;
    EXPECT_EQ(robin_index_at(a, b, c, eps), expected) << eps;
  }
}

TEST(Duistermaat, ClosedFormNeedsGraphs) {
  try {
    duistermaat(IndexMethod::closed_form, graph({1}), graph({2}), LagrangianPlane::vertical(1));
    FAIL() << "closed form accepted a non-graph";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(Duistermaat, DimensionMismatch) {
  EXPECT_THROW(duistermaat_omega(graph({1}), graph({1, 2}), graph({3})), Error);
  EXPECT_THROW(duistermaat_graphs(scalar(1), diag({1, 2}), scalar(3)), Error);
}

TEST(DuistermaatGraphs, Examples) {
  EXPECT_EQ(duistermaat_graphs(scalar(0), scalar(1), scalar(2)), 0);
  EXPECT_EQ(duistermaat_graphs(scalar(0), scalar(2), scalar(1)), 1);
  Rng rng(3);
  const HermitianMatrix a = random_hermitian(4, rng);
  EXPECT_EQ(duistermaat_graphs(a, a, random_hermitian(4, rng)), 0);
}

TEST(IndexMethodNames, RoundTrip) {
  for (IndexMethod m : kAllMethods) EXPECT_EQ(parse_index_method(to_string(m)), m);
  EXPECT_EQ(parse_index_method("closed_form"), IndexMethod::closed_form);
  EXPECT_THROW(parse_index_method("fast"), Error);
}

TEST(Kashiwara, Examples) {
  EXPECT_EQ(kashiwara(graph({0}), graph({1}), graph({2})), 1);
  const LagrangianPlane l = random_plane(3, 4);
  EXPECT_EQ(kashiwara(l, l, random_plane(3, 5)), 0);
}

TEST(Kashiwara, RelationsWithDuistermaat) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + seed % 6;
    const int ni = static_cast<int>(n);
    const LagrangianPlane a = random_case_plane(n, 3 * seed);
    const LagrangianPlane b = random_case_plane(n, 3 * seed + 1);
    const LagrangianPlane c = random_case_plane(n, 3 * seed + 2);
    const int s = kashiwara(a, b, c);
    const int d12 = intersection_dim(a, b);
    const int d13 = intersection_dim(a, c);
    const int d23 = intersection_dim(b, c);
    EXPECT_LE(std::abs(s), 3 * ni);
    EXPECT_EQ(s, index_of(IndexMethod::omega, b, a, c) - index_of(IndexMethod::omega, c, a, b));
    EXPECT_EQ(2 * index_of(IndexMethod::omega, a, b, c), ni - d12 + d13 - d23 - s);
    EXPECT_EQ(inertia(omega_form(a, b, c).w).zero, d12 + d13 + d23);
  }
}

TEST(FactorizationResidual, SmallOnRandomTriples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + seed % 6;
    const LagrangianPlane a = random_case_plane(n, seed);
    const LagrangianPlane b = random_case_plane(n, seed + 40);
    const LagrangianPlane c = random_case_plane(n, seed + 80);
    const double eps = epsilon_select({a, b, c}, {}, seed);
    EXPECT_LE(factorization_residual(a, b, c, eps), 1e-8);
  }
}

TEST(FactorizationResidual, EqualPlanes) {
  const LagrangianPlane l = random_plane(4, 6);
  EXPECT_LE(factorization_residual(l, l, l, epsilon_select({l}, {}, 0)), 1e-8);
}

TEST(RelationVertical, GraphPlane) {
  const HermitianMatrix a = diag({1, 0});
  const HermitianMatrix b = diag({0, 3});
  EXPECT_EQ(duistermaat_relation_vertical(a, LagrangianPlane::graph(b), VerticalOrder::graph_first),
            inertia(b - a).minus);
  EXPECT_EQ(duistermaat_relation_vertical(a, LagrangianPlane::graph(b), VerticalOrder::plane_first),
            inertia(a - b).minus);
}

TEST(RelationVertical, VerticalPlane) {
  const HermitianMatrix a = diag({1, -2, 3});
  const LagrangianPlane v = LagrangianPlane::vertical(3);
  EXPECT_EQ(duistermaat_relation_vertical(a, v, VerticalOrder::graph_first), 0);
  EXPECT_EQ(duistermaat_relation_vertical(a, v, VerticalOrder::plane_first), 3);
}

TEST(RelationVertical, PartialDomain) {
  // dom L = span e1, operator part diag(c, 0) with c < 0, A = 0.
  const LagrangianPlane l = LagrangianPlane::from_frame(diag({1, 0}).matrix(), diag({-0.5, 1}).matrix());
  EXPECT_EQ(duistermaat_relation_vertical(HermitianMatrix::zero(2), l, VerticalOrder::graph_first), 1);
  EXPECT_EQ(duistermaat_relation_vertical(HermitianMatrix::zero(2), l, VerticalOrder::plane_first), 1);
}

TEST(RelationVertical, MatchesOmegaMethod) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + seed % 5;
    const LagrangianPlane l = random_relation_plane(n, seed % (n + 1), seed);
    const HermitianMatrix a = random_hermitian(n, rng);
    const LagrangianPlane ga = LagrangianPlane::graph(a);
    const LagrangianPlane v = LagrangianPlane::vertical(n);
    EXPECT_EQ(duistermaat_relation_vertical(a, l, VerticalOrder::graph_first), index_of(IndexMethod::omega, ga, l, v));
    EXPECT_EQ(duistermaat_relation_vertical(a, l, VerticalOrder::plane_first), index_of(IndexMethod::omega, l, ga, v));
  }
}

TEST(MorseDifference, Examples) {
  const VerificationRecord r1 = morse_difference_invertible(diag({1, -1}), diag({2, 1}));
  ASSERT_TRUE(r1.holds()) << r1.describe();
  EXPECT_EQ(r1.sides[0].second, 1);

  const VerificationRecord r2 = morse_difference_invertible(scalar(1), scalar(-1));
  ASSERT_TRUE(r2.holds()) << r2.describe();
  EXPECT_EQ(r2.sides[0].second, -1);

  const VerificationRecord r3 = morse_difference_invertible(diag({3, -1}), diag({3, -1}));
  ASSERT_TRUE(r3.holds());
  EXPECT_EQ(r3.sides[0].second, 0);
}

TEST(MorseDifference, SingularInputRejected) {
  try {
    morse_difference_invertible(diag({1, 0}), diag({1, 1}));
    FAIL() << "accepted a singular A";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(MorseDifference, KernelCaseExample) {
  const VerificationRecord r = morse_difference_kernel(diag({1, 0}), diag({-1, 0}), KernelCase::kerA_in_kerB);
  ASSERT_TRUE(r.holds()) << r.describe();
  EXPECT_EQ(r.sides[0].second, 0);
}

TEST(MorseDifference, KernelCasesReduceToInvertible) {
  const HermitianMatrix a = diag({1, -1});
  const HermitianMatrix b = diag({2, 1});
  // A - B = diag(-1, -2).
  const long expected = 2;
  for (KernelCase kc : {KernelCase::kerA_in_kerB, KernelCase::kerB_in_kerA}) {
    const VerificationRecord r = morse_difference_kernel(a, b, kc);
    EXPECT_TRUE(r.holds()) << r.describe();
    EXPECT_EQ(r.sides[0].second, expected);
  }
}

TEST(MorseDifference, EqualSingularMatrices) {
  for (KernelCase kc : {KernelCase::kerA_in_kerB, KernelCase::kerB_in_kerA}) {
    const VerificationRecord r = morse_difference_kernel(diag({2, 0, -1}), diag({2, 0, -1}), kc);
    EXPECT_TRUE(r.holds()) << r.describe();
    EXPECT_EQ(r.sides[0].second, 0);
  }
}

TEST(MorseDifference, KernelCasesOnSharedKernels) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 6;
    const Index k = trial % n;
    const Matrix u = random_unitary(n, rng);
    const Matrix basis = u.leftCols(n - k);
    const HermitianMatrix a = random_hermitian_with_nullity(n - k, 0, rng).congruence(basis.adjoint());
    const HermitianMatrix b = random_hermitian_with_nullity(n - k, 0, rng).congruence(basis.adjoint());
    for (KernelCase kc : {KernelCase::kerA_in_kerB, KernelCase::kerB_in_kerA}) {
      const VerificationRecord r = morse_difference_kernel(a, b, kc);
      EXPECT_TRUE(r.holds()) << r.describe();
    }
  }
}

TEST(MorseDifference, InclusionViolation) {
  try {
    morse_difference_kernel(diag({1, 0}), diag({0, 1}), KernelCase::kerA_in_kerB);
    FAIL() << "accepted ker A outside ker B";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InclusionViolated);
  }
}

TEST(MorseSum, Examples) {
  const VerificationRecord r1 = morse_sum_invertible(HermitianMatrix::identity(2), HermitianMatrix::identity(2));
  ASSERT_TRUE(r1.holds());
  EXPECT_EQ(r1.sides[0].second, 0);

  const VerificationRecord r2 = morse_sum_invertible(scalar(1), scalar(-1));
  ASSERT_TRUE(r2.holds()) << r2.describe();
  EXPECT_EQ(r2.sides[0].second, 1);

  const VerificationRecord r3 = morse_sum_invertible(diag({1, 2}), diag({-3, 1}));
  ASSERT_TRUE(r3.holds()) << r3.describe();
  EXPECT_EQ(r3.sides[0].second, 1);
}

TEST(MorseSum, RandomPairs) {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 6;
    const VerificationRecord r = morse_sum_invertible(random_hermitian(n, rng), random_hermitian(n, rng));
    EXPECT_TRUE(r.holds()) << r.describe();
  }
}

TEST(ResolventDifference, Examples) {
  EXPECT_EQ(index_via_resolvent_difference(graph({2}), graph({1}), graph({0})), 1);
  const LagrangianPlane l = graph({3, -1});
  EXPECT_EQ(index_via_resolvent_difference(l, l, graph({0.5, 0.5})), 0);
}

TEST(ResolventDifference, MatchesOmegaMethod) {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 6;
    const HermitianMatrix c = random_hermitian(n, rng);
    const LagrangianPlane l3 = LagrangianPlane::graph(c);
    const LagrangianPlane l1 = random_case_plane(n, 2 * trial);
    const LagrangianPlane l2 = random_case_plane(n, 2 * trial + 1);
    if (intersection_dim(l1, l3) != 0 || intersection_dim(l2, l3) != 0) continue;
    EXPECT_EQ(index_via_resolvent_difference(l1, l2, l3), index_of(IndexMethod::omega, l1, l2, l3));
  }
}

TEST(ResolventDifference, RequiresTransversality) {
  try {
    index_via_resolvent_difference(graph({1}), graph({2}), graph({1}));
    FAIL() << "accepted L3 = L1";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TransversalityViolated);
  }
}

TEST(Haynsworth, Examples) {
  const VerificationRecord r1 = haynsworth_check(HermitianMatrix::identity(3), HermitianMatrix::identity(3));
  ASSERT_TRUE(r1.holds());
  EXPECT_EQ(r1.sides[0].second, 0);
  const VerificationRecord r2 = haynsworth_check(scalar(1), scalar(2));
  ASSERT_TRUE(r2.holds()) << r2.describe();
  EXPECT_EQ(r2.sides[0].second, 1);
}

TEST(Haynsworth, RandomPairsRederiveDifferenceFormula) {
  Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 6;
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    EXPECT_TRUE(haynsworth_check(a, b).holds());
    EXPECT_TRUE(morse_difference_invertible(a, b).holds());
  }
}

TEST(VerificationRecord, HoldsAndDescribe) {
  const VerificationRecord ok{"x", {{"a", 2}, {"b", 2}}, {{"t", 1}}};
  const VerificationRecord bad{"x", {{"a", 2}, {"b", 3}}, {}};
  EXPECT_TRUE(ok.holds());
  EXPECT_FALSE(bad.holds());
  EXPECT_EQ(ok.describe(), "x: a=2 b=2 [t=1]");
}
