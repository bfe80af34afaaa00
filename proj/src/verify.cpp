#include "lagidx/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lagidx/coboundary.hpp"
#include "lagidx/maslov.hpp"
#include "lagidx/random.hpp"
#include "lagidx/relations.hpp"

namespace lagidx {

namespace {

using Planes = std::vector<LagrangianPlane>;
using Sides = std::vector<std::pair<std::string, long>>;

constexpr int kDegenerateRetries = 5;
constexpr int kResampleAttempts = 32;
constexpr std::size_t kMinimizedFailures = 5;

/// Per-trial state: dimension, seeded generator and the result being filled.
struct Trial {
  Index n;
  std::uint64_t seed;
  const TolerancePolicy& tol;
  TrialResult& out;
  Rng rng;
  std::uint64_t counter = 0;

  Trial(Index n_, std::uint64_t seed_, const TolerancePolicy& tol_, TrialResult& out_)
      : n(n_), seed(seed_), tol(tol_), out(out_), rng(split_seed(seed_, 0)) {}

  std::uint64_t next_seed() { return split_seed(seed, 1, counter++); }
  int pick(int lo, int hi) { return uniform_int(rng, lo, hi); }

  void input(const std::string& name, const Matrix& m) { out.inputs.push_back({name, m}); }
  void input(const std::string& name, const HermitianMatrix& h) { input(name, h.matrix()); }
  void input(const std::string& name, const LagrangianPlane& l) { input(name, l.frame()); }
  void inputs(const std::string& prefix, const Planes& planes) {
    for (std::size_t i = 0; i < planes.size(); ++i) input(prefix + std::to_string(i + 1), planes[i]);
  }

  void check(std::string identity, Sides sides, Sides terms = {}) {
    out.records.push_back({std::move(identity), std::move(sides), std::move(terms)});
  }
  void check(VerificationRecord rec) { out.records.push_back(std::move(rec)); }

  int id(const LagrangianPlane& a, const LagrangianPlane& b, const LagrangianPlane& c) const {
    return duistermaat_omega(a, b, c, tol).value;
  }
  int dim(const LagrangianPlane& a, const LagrangianPlane& b) const { return intersection_dim(a, b, tol); }
};

HermitianMatrix random_positive(Index n, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = uniform(rng, 0.3, 2.0);
  return HermitianMatrix::symmetrize(u * d.asDiagonal() * u.adjoint());
}

/// Draws `count` planes in one of three regimes: independent random planes,
/// a family S G_{A + N_i} whose members meet in prescribed dimensions, or
/// relation planes with random multivalued parts.
Planes sample_planes(Trial& t, int count, Index n) {
  Planes out;
  switch (t.pick(0, 2)) {
    case 0:
      for (int i = 0; i < count; ++i) out.push_back(random_plane(n, t.next_seed()));
      break;
    case 1: {
      const SymplecticMap s = random_symplectic(n, t.next_seed());
      const bool swap = t.pick(0, 1) == 1;
      const HermitianMatrix base = random_hermitian(n, t.rng);
      for (int i = 0; i < count; ++i) {
        HermitianMatrix a = base;
        if (i > 0) a = base + random_hermitian_with_nullity(n, t.pick(0, static_cast<int>(n)), t.rng);
        LagrangianPlane p = LagrangianPlane::graph(a).transformed(s, t.tol);
        if (swap) p = p.transformed(swap_map(n), t.tol);
        out.push_back(p);
      }
      break;
    }
    default:
      for (int i = 0; i < count; ++i) {
        out.push_back(random_relation_plane(n, t.pick(0, static_cast<int>(n)), t.next_seed()));
      }
      break;
  }
  return out;
}

void suite_axioms(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);

  const HermitianMatrix a =
      t.pick(0, 2) == 0 ? random_hermitian_with_nullity(n, t.pick(1, ni), t.rng) : random_hermitian(n, t.rng, 2.0);
  t.input("A", a);
  const LagrangianPlane g0 = LagrangianPlane::horizontal(n);
  const LagrangianPlane ga = LagrangianPlane::graph(a);
  const LagrangianPlane ginf = LagrangianPlane::vertical(n);
  t.check("normalization", {{"n_-(A)", inertia(a, t.tol).minus},
                            {"omega", t.id(g0, ga, ginf)},
                            {"robin", duistermaat_robin(g0, ga, ginf, t.tol, t.next_seed()).value},
                            {"reduce", duistermaat_reduce(g0, ga, ginf, t.tol, t.next_seed()).value}});

  const Planes l = sample_planes(t, 3, n);
  t.inputs("L", l);
  const SymplecticMap s = random_symplectic(n, t.next_seed());
  t.input("S", s.matrix());
  Planes sl;
  for (const auto& p : l) sl.push_back(p.transformed(s, t.tol));
  const int base = t.id(l[0], l[1], l[2]);
  t.check("symplectic-invariance", {{"iD(L1,L2,L3)", base},
                                    {"iD(SL1,SL2,SL3)", t.id(sl[0], sl[1], sl[2])},
                                    {"robin iD(SL1,SL2,SL3)",
                                     duistermaat_robin(sl[0], sl[1], sl[2], t.tol, t.next_seed()).value}});
  t.check("bounds", {{"iD", base}, {"clamp(iD,0,n)", std::clamp(base, 0, ni)}});

  const Planes q = sample_planes(t, 4, n);
  t.inputs("Q", q);
  const std::uint64_t reduce_seed = t.next_seed();
  const long cob_omega = coboundary<LagrangianPlane>(q, [&t](std::span<const LagrangianPlane> x) {
    return t.id(x[0], x[1], x[2]);
  });
  const long cob_reduce = coboundary<LagrangianPlane>(q, [&t, reduce_seed](std::span<const LagrangianPlane> x) {
    return duistermaat_reduce(x[0], x[1], x[2], t.tol, reduce_seed).value;
  });
  t.check("cocycle", {{"0", 0}, {"coboundary omega", cob_omega}, {"coboundary reduce", cob_reduce}});

  const SymplecticMap s2 = random_symplectic(n, t.next_seed());
  const AntiSymplecticMap anti(swap_map(n).matrix() * s2.matrix(), t.tol);
  t.input("A_anti", anti.matrix());
  t.check("antisymplectic",
          {{"iD(AL1,AL2,AL3)", t.id(l[0].transformed(anti, t.tol), l[1].transformed(anti, t.tol),
                                    l[2].transformed(anti, t.tol))},
           {"iD(L3,L2,L1)", t.id(l[2], l[1], l[0])}});
}

void suite_permutations(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);
  const Planes l = sample_planes(t, 3, n);
  t.inputs("L", l);
  const auto& [l1, l2, l3] = std::tie(l[0], l[1], l[2]);
  const int d12 = t.dim(l1, l2);
  const int d13 = t.dim(l1, l3);
  const int d23 = t.dim(l2, l3);
  const int i123 = t.id(l1, l2, l3);
  const Sides dims{{"d12", d12}, {"d13", d13}, {"d23", d23}, {"iD(L1,L2,L3)", i123}};

  t.check("special-values-zero", {{"0", 0}, {"iD(L1,L1,L2)", t.id(l1, l1, l2)}, {"iD(L2,L1,L1)", t.id(l2, l1, l1)}},
          dims);
  t.check("special-values-middle", {{"iD(L1,L2,L1)", t.id(l1, l2, l1)}, {"n-d12", ni - d12}}, dims);
  t.check("swap12", {{"iD(L1,L2,L3)+iD(L2,L1,L3)", i123 + t.id(l2, l1, l3)}, {"n-d12", ni - d12}}, dims);
  t.check("swap23", {{"iD(L1,L2,L3)+iD(L1,L3,L2)", i123 + t.id(l1, l3, l2)}, {"n-d23", ni - d23}}, dims);
  t.check("swap13",
          {{"iD(L1,L2,L3)+iD(L3,L2,L1)", i123 + t.id(l3, l2, l1)}, {"n-d12-d23+d13", ni - d12 - d23 + d13}}, dims);
  t.check("cyclic-shift", {{"iD(L1,L2,L3)-d13", i123 - d13},
                           {"iD(L3,L1,L2)-d23", t.id(l3, l1, l2) - d23},
                           {"iD(L2,L3,L1)-d12", t.id(l2, l3, l1) - d12}},
          dims);

  const Index a = t.pick(1, 3);
  const Index b = t.pick(1, 3);
  const Planes pa = sample_planes(t, 3, a);
  const Planes pb = sample_planes(t, 3, b);
  t.inputs("P", pa);
  t.inputs("M", pb);
  const int sum = t.id(direct_sum(pa[0], pb[0]), direct_sum(pa[1], pb[1]), direct_sum(pa[2], pb[2]));
  t.check("additivity", {{"iD(P+M)", sum}, {"iD(P)+iD(M)", t.id(pa[0], pa[1], pa[2]) + t.id(pb[0], pb[1], pb[2])}},
          {{"dim P", a}, {"dim M", b}});
}

void suite_relations(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);
  Planes l;
  for (int i = 0; i < 3; ++i) l.push_back(random_relation_plane(n, t.pick(i == 0 ? 1 : 0, ni), t.next_seed()));
  if (t.pick(0, 1) == 1) l[2] = random_plane(n, t.next_seed());
  t.inputs("L", l);
  const HermitianMatrix a = random_hermitian(n, t.rng);
  t.input("A", a);
  const LagrangianPlane ga = LagrangianPlane::graph(a);
  const LagrangianPlane ginf = LagrangianPlane::vertical(n);
  const int base = t.id(l[0], l[1], l[2]);

  t.check("subtraction", {{"iD(L1,L2,L3)", base},
                          {"iD(L1-GA,L2-GA,L3-GA)", t.id(difference(l[0], ga, t.tol), difference(l[1], ga, t.tol),
                                                         difference(l[2], ga, t.tol))}});
  t.check("inversion",
          {{"iD(L1,L2,L3)", base}, {"iD(L3^-1,L2^-1,L1^-1)", t.id(inverse(l[2]), inverse(l[1]), inverse(l[0]))}});

  const SymplecticMap shift = SymplecticMap::shear(-a);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const std::string tag = "L" + std::to_string(i + 1);
    const int mul = decompose(l[i], t.tol).mul_dim;
    t.check("graph-first-vertical", {{"n_-(L-A_dom)", duistermaat_relation_vertical(a, l[i], VerticalOrder::graph_first,
                                                                                     t.tol)},
                                     {"iD(GA," + tag + ",Ginf)", t.id(ga, l[i], ginf)}},
            {{"mul_dim", mul}});
    t.check("plane-first-vertical", {{"n_-(A_dom-L)+mul", duistermaat_relation_vertical(a, l[i],
                                                                                         VerticalOrder::plane_first,
                                                                                         t.tol)},
                                     {"iD(" + tag + ",GA,Ginf)", t.id(l[i], ga, ginf)}},
            {{"mul_dim", mul}});
    t.check("multivalued-part", {{"mul_dim", mul}, {"dim(L^Ginf)", t.dim(l[i], ginf)}});
    t.check("difference-as-shear",
            {{"dim((L-GA)^(shear L))", t.dim(difference(l[i], ga, t.tol), l[i].transformed(shift, t.tol))},
             {"n", ni}});
  }
}

void suite_kashiwara(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);
  const Planes l = sample_planes(t, 3, n);
  t.inputs("L", l);
  const int d12 = t.dim(l[0], l[1]);
  const int d13 = t.dim(l[0], l[2]);
  const int d23 = t.dim(l[1], l[2]);
  const int s = kashiwara(l[0], l[1], l[2], t.tol);
  const int i123 = t.id(l[0], l[1], l[2]);
  const Sides terms{{"s", s}, {"d12", d12}, {"d13", d13}, {"d23", d23}};
  t.check("kashiwara-from-duistermaat", {{"s", s}, {"iD(L2,L1,L3)-iD(L3,L1,L2)", t.id(l[1], l[0], l[2]) -
                                                                                   t.id(l[2], l[0], l[1])}},
          terms);
  t.check("duistermaat-via-kashiwara", {{"2 iD", 2 * i123}, {"n-d12+d13-d23-s", ni - d12 + d13 - d23 - s}}, terms);
  const OmegaForm w = omega_form(l[0], l[1], l[2], t.tol);
  t.check("omega-kernel", {{"n_0(W)", inertia(w.w, t.tol).zero}, {"d12+d13+d23", d12 + d13 + d23}});
}

void suite_graphs(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);
  const HermitianMatrix a = random_hermitian(n, t.rng);
  HermitianMatrix b = random_hermitian(n, t.rng);
  HermitianMatrix c = random_hermitian(n, t.rng);
  if (t.pick(0, 1) == 1) b = a + random_hermitian_with_nullity(n, t.pick(1, ni), t.rng);
  if (t.pick(0, 1) == 1) c = b + random_hermitian_with_nullity(n, t.pick(1, ni), t.rng);
  t.input("A", a);
  t.input("B", b);
  t.input("C", c);
  const LagrangianPlane ga = LagrangianPlane::graph(a);
  const LagrangianPlane gb = LagrangianPlane::graph(b);
  const LagrangianPlane gc = LagrangianPlane::graph(c);
  t.check("graph-closed-form",
          {{"n_-(B-A)-n_-(C-A)+n_-(C-B)", duistermaat_graphs(a, b, c, t.tol)},
           {"omega", t.id(ga, gb, gc)},
           {"closed-form method", duistermaat(IndexMethod::closed_form, ga, gb, gc, t.tol).value},
           {"robin", duistermaat_robin(ga, gb, gc, t.tol, t.next_seed()).value},
           {"reduce", duistermaat_reduce(ga, gb, gc, t.tol, t.next_seed()).value}});
}

void suite_morse(Trial& t) {
  const Index n = t.n;
  const int ni = static_cast<int>(n);
  const HermitianMatrix a = random_hermitian_with_nullity(n, 0, t.rng);
  const HermitianMatrix b = random_hermitian_with_nullity(n, 0, t.rng);
  t.input("A", a);
  t.input("B", b);
  t.check(morse_difference_invertible(a, b, t.tol));
  t.check(morse_sum_invertible(a, b, t.tol));
  t.check(haynsworth_check(a, b, t.tol));

  // Singular pair with a shared kernel K: the smaller-kernel matrix is
  // invertible on K^perp, the other one may vanish on more of it.
  const Index k = t.pick(0, ni - 1);
  const Matrix u = random_unitary(n, t.rng);
  const Matrix perp = u.rightCols(n - k);
  const HermitianMatrix small_core = random_hermitian_with_nullity(n - k, 0, t.rng);
  const HermitianMatrix big_core = random_hermitian_with_nullity(n - k, t.pick(0, static_cast<int>(n - k)), t.rng);
  const HermitianMatrix small = HermitianMatrix::symmetrize(perp * small_core.matrix() * perp.adjoint());
  const HermitianMatrix big = HermitianMatrix::symmetrize(perp * big_core.matrix() * perp.adjoint());
  t.input("A_small_kernel", small);
  t.input("B_big_kernel", big);
  t.check(morse_difference_kernel(small, big, KernelCase::kerA_in_kerB, t.tol));
  t.check(morse_difference_kernel(big, small, KernelCase::kerB_in_kerA, t.tol));

  const Planes l = sample_planes(t, 2, n);
  const HermitianMatrix c = random_hermitian(n, t.rng);
  t.inputs("L", l);
  t.input("C", c);
  const LagrangianPlane gc = LagrangianPlane::graph(c);
  t.check("resolvent-difference",
          {{"n_-(op(L1-GC)^-1 - op(L2-GC)^-1)", index_via_resolvent_difference(l[0], l[1], gc, t.tol)},
           {"iD(L1,L2,GC)", t.id(l[0], l[1], gc)}});
}

void suite_maslov(Trial& t) {
  const Index n = t.n;
  const HermitianMatrix a = random_hermitian(n, t.rng);
  const HermitianMatrix d = random_positive(n, t.rng);
  const HermitianMatrix b = a + d;
  t.input("A", a);
  t.input("B", b);
  const RegularPath path = RegularPath::graph_segment(a, b);
  const LagrangianPlane m1 = random_plane(n, t.next_seed());
  const LagrangianPlane m2 = random_plane(n, t.next_seed());
  t.input("M1", m1);
  t.input("M2", m2);

  VerificationRecord zwz = zwz_check(path, m1, m2, t.tol);
  t.check(zwz);
  VerificationRecord at_ends = zwz_check(path, LagrangianPlane::graph(a), LagrangianPlane::graph(b), t.tol);
  at_ends.identity = "maslov-reference-change-at-endpoints";
  t.check(at_ends);

  const SymplecticMap s = random_symplectic(n, t.next_seed());
  t.input("S", s.matrix());
  VerificationRecord moved = zwz_check(path.transformed(s), m1, m2, t.tol);
  moved.identity = "maslov-reference-change-transformed";
  t.check(moved);

  // Eigenvalue counting for A + t D against G_C; C = A puts a crossing at t = 0.
  const HermitianMatrix c = t.pick(0, 3) == 0 ? a : a + 0.5 * (d + random_hermitian(n, t.rng, 0.5));
  t.input("C", c);
  const auto closed = [&t](const HermitianMatrix& h) {
    const Inertia in = inertia(h, t.tol);
    return in.minus + in.zero;
  };
  const int oracle = closed(a - c) - closed(b - c);
  const LagrangianPlane gc = LagrangianPlane::graph(c);
  const int mas = maslov_index(path, gc, t.tol);
  t.check("graph-segment-eigenvalue-count", {{"Mas", mas}, {"eigenvalue count", oracle}});

  const int forward = maslov_index(path, m1, t.tol);
  t.check("reversal", {{"Mas(reversed)", maslov_index(path.reversed(), m1, t.tol)}, {"-Mas", -forward}});

  const double split = uniform(t.rng, 0.2, 0.8);
  const HermitianMatrix mid = a + split * d;
  t.check("concatenation", {{"Mas", forward},
                            {"Mas(first)+Mas(second)", maslov_index(RegularPath::graph_segment(a, mid), m1, t.tol) +
                                                           maslov_index(RegularPath::graph_segment(mid, b), m1, t.tol)}});

  const Planes ends = sample_planes(t, 2, n);
  const LagrangianPlane m = random_plane(n, t.next_seed());
  t.inputs("E", ends);
  t.input("M", m);
  const RegularPath minimal = minimal_path(ends[0], ends[1], t.tol, t.next_seed());
  t.check("minimal-path", {{"Mas(minimal)", maslov_index(minimal, m, t.tol)}, {"iD(L0,L1,M)", t.id(ends[0], ends[1], m)}});
}

void suite_extremal(Trial& t) {
  const Index n = t.n;
  Planes ends = sample_planes(t, 2, n);
  if (t.pick(0, 5) == 0) ends[1] = ends[0];
  const LagrangianPlane m = random_plane(n, t.next_seed());
  t.inputs("E", ends);
  t.input("M", m);
  const std::uint64_t seed = t.next_seed();
  const ExtremalReport report = extremal_check(ends[0], ends[1], m, 4, t.tol, seed);
  const long below = std::count_if(report.sample_maslov.begin(), report.sample_maslov.end(),
                                   [&report](int v) { return v < report.duistermaat; });
  Sides terms{{"iD", report.duistermaat}, {"skipped", report.skipped_degenerate}};
  for (std::size_t i = 0; i < report.sample_maslov.size(); ++i) {
    terms.push_back({"Mas(sample " + std::to_string(i + 1) + ")", report.sample_maslov[i]});
  }
  t.check("extremal-minimal", {{"Mas(minimal)", report.minimal_maslov}, {"iD(L0,L1,M)", report.duistermaat}}, terms);
  t.check("extremal-lower-bound", {{"samples below iD", below}, {"0", 0}}, terms);
  const RegularPath minimal = minimal_path(ends[0], ends[1], t.tol, split_seed(seed, 1));
  t.check("minimal-path-nondecreasing", {{"nondecreasing", is_nondecreasing(minimal, t.tol, 32) ? 1 : 0}, {"1", 1}});
}

void suite_factorization(Trial& t) {
  const Index n = t.n;
  const Planes l = sample_planes(t, 3, n);
  t.inputs("L", l);
  const double eps = epsilon_select(l, t.tol, t.next_seed());
  const double residual = factorization_residual(l[0], l[1], l[2], eps, t.tol);
  t.check("factorization", {{"residual<=tol", residual <= t.tol.residual_tol ? 1 : 0}, {"1", 1}},
          {{"residual*1e15", static_cast<long>(residual * 1e15)}});

  const int omega = t.id(l[0], l[1], l[2]);
  t.check("method-agreement", {{"omega", omega},
                               {"robin", duistermaat_robin(l[0], l[1], l[2], t.tol, t.next_seed()).value},
                               {"reduce", duistermaat_reduce(l[0], l[1], l[2], t.tol, t.next_seed()).value}});

  // n~(j, k) = n_-(R_k - R_j) at one eps: its coboundary is the index and
  // the coboundary of that vanishes.
  const Planes q = sample_planes(t, 4, n);
  t.inputs("Q", q);
  const double eq = epsilon_select(q, t.tol, t.next_seed());
  std::vector<HermitianMatrix> r;
  for (const auto& p : q) r.push_back(robin_map(p, eq, t.tol).r);
  const auto ntilde = [&r, &t](std::span<const int> x) { return inertia(r[x[1]] - r[x[0]], t.tol).minus; };
  const auto first = [&ntilde](std::span<const int> x) { return coboundary<int>(x, ntilde); };
  const std::vector<int> all{0, 1, 2, 3};
  const std::vector<int> head{0, 1, 2};
  t.check("coboundary-squared", {{"0", 0}, {"d(d n~)", coboundary<int>(all, first)}});
  t.check("coboundary-is-index", {{"d n~(Q1,Q2,Q3)", first(head)}, {"iD(Q1,Q2,Q3)", t.id(q[0], q[1], q[2])}});
}

using SuiteFn = void (*)(Trial&);

const std::map<std::string, SuiteFn, std::less<>>& suite_table() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"axioms", suite_axioms},         {"permutations", suite_permutations},
      {"relations", suite_relations},   {"kashiwara", suite_kashiwara},
      {"graphs", suite_graphs},         {"morse-formulas", suite_morse},
      {"maslov-zwz", suite_maslov},     {"extremal", suite_extremal},
      {"factorization", suite_factorization},
  };
  return table;
}

SuiteFn lookup(std::string_view suite) {
  const auto& table = suite_table();
  const auto it = table.find(suite);
  if (it == table.end()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  return it->second;
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      f(i);
    }
  };
  if (threads <= 1 || count <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < std::min<std::size_t>(threads, count); ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

Counterexample minimize(std::string_view suite, const Counterexample& failure, const TolerancePolicy& tol) {
  Counterexample best = failure;
  int n = failure.n;
  while (n > 1) {
    n /= 2;
    bool found = false;
    for (int attempt = 0; attempt < kResampleAttempts && !found; ++attempt) {
      const std::uint64_t s = split_seed(failure.trial_seed, 0x5eed, static_cast<std::uint64_t>(n * 64 + attempt));
      TrialResult r = run_trial(suite, n, s, tol);
      if (!r.passed()) {
        best = Counterexample{n, s, failure.original_n, std::move(r)};
        found = true;
      }
    }
    if (!found) break;
  }
  return best;
}

nlohmann::ordered_json encode(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json encode(const std::vector<std::pair<std::string, long>>& values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values) j[k] = v;
  return j;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms",         "permutations", "relations",
                                              "kashiwara",      "graphs",       "morse-formulas",
                                              "maslov-zwz",     "extremal",     "factorization"};
  return names;
}

bool TrialResult::passed() const {
  if (error) return false;
  return std::all_of(records.begin(), records.end(), [](const VerificationRecord& r) { return r.holds(); });
}

TrialResult run_trial(std::string_view suite, int n, std::uint64_t seed, const TolerancePolicy& tol) {
  const SuiteFn fn = lookup(suite);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "trial dimension must be positive");
  for (int attempt = 0;; ++attempt) {
    TrialResult out;
    out.retries = attempt;
    const std::uint64_t s = attempt == 0 ? seed : split_seed(seed, 0xde9e, static_cast<std::uint64_t>(attempt));
    try {
      Trial t(n, s, tol, out);
      fn(t);
      return out;
    } catch (const DegenerateCrossingError& e) {
      if (attempt >= kDegenerateRetries) {
        out.error = e.what();
        return out;
      }
    } catch (const Error& e) {
      out.error = e.what();
      return out;
    } catch (const std::exception& e) {
      out.error = e.what();
      return out;
    }
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, int n, int k) {
  const std::string label(suite);
  const std::uint64_t index = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(k);
  return split_seed(master, label_stream(label.c_str()), index);
}

VerifyReport run_verify(const VerifyOptions& options) {
  options.tol.validate();
  if (options.n_min < 1 || options.n_max < options.n_min) {
    throw Error(ErrorKind::InvalidArgument, "dimension range must satisfy 1 <= min <= max");
  }
  if (options.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be positive");

  std::vector<std::string> selected;
  if (options.suites.empty() ||
      std::find(options.suites.begin(), options.suites.end(), "all") != options.suites.end()) {
    selected = suite_names();
  } else {
    for (const auto& s : options.suites) {
      lookup(s);
      selected.push_back(s);
    }
  }
  const unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;

  VerifyReport report;
  for (const auto& suite : selected) {
    struct Task {
      int n;
      int k;
    };
    std::vector<Task> tasks;
    for (int n = options.n_min; n <= options.n_max; ++n) {
      for (int k = 0; k < options.trials; ++k) tasks.push_back({n, k});
    }
    std::vector<TrialResult> results(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
      results[i] = run_trial(suite, tasks[i].n, trial_seed(options.seed, suite, tasks[i].n, tasks[i].k), options.tol);
    });

    SuiteReport sr;
    sr.suite = suite;
    sr.seed = options.seed;
    sr.trials = static_cast<long>(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      sr.checks += static_cast<long>(results[i].records.size());
      sr.retries += results[i].retries;
      if (results[i].passed()) continue;
      const int n = tasks[i].n;
      Counterexample ce{n, trial_seed(options.seed, suite, n, tasks[i].k), n, std::move(results[i])};
      if (options.minimize && sr.failures.size() < kMinimizedFailures) ce = minimize(suite, ce, options.tol);
      sr.failures.push_back(std::move(ce));
    }
    report.suites.push_back(std::move(sr));
  }
  return report;
}

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.failures.empty(); });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << s.suite << ": " << s.trials << " trials, " << s.checks << " checks, " << s.failures.size()
       << " failures, " << s.retries << " retries (seed " << s.seed << ")\n";
    for (std::size_t i = 0; i < s.failures.size() && i < kMinimizedFailures; ++i) {
      const Counterexample& ce = s.failures[i];
      os << "  counterexample n=" << ce.n << " (from n=" << ce.original_n << ") trial seed " << ce.trial_seed << "\n";
      if (ce.result.error) os << "    error: " << *ce.result.error << "\n";
      for (const auto& rec : ce.result.records) {
        if (!rec.holds()) os << "    " << rec.describe() << "\n";
      }
      for (const auto& in : ce.result.inputs) os << "    " << in.name << " = " << encode(in.value).dump() << "\n";
    }
    if (s.failures.size() > kMinimizedFailures) {
      os << "  ... " << s.failures.size() - kMinimizedFailures << " more failing trials\n";
    }
  }
  os << (ok() ? "OK" : "FAILED") << "\n";
  return os.str();
}

std::string VerifyReport::machine() const {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  root["ok"] = ok();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json js = nlohmann::ordered_json::object();
    js["suite"] = s.suite;
    js["seed"] = s.seed;
    js["trials"] = s.trials;
    js["checks"] = s.checks;
    js["retries"] = s.retries;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& ce : s.failures) {
      nlohmann::ordered_json jf = nlohmann::ordered_json::object();
      jf["n"] = ce.n;
      jf["original_n"] = ce.original_n;
      jf["trial_seed"] = ce.trial_seed;
      if (ce.result.error) jf["error"] = *ce.result.error;
      nlohmann::ordered_json records = nlohmann::ordered_json::array();
      for (const auto& rec : ce.result.records) {
        if (rec.holds()) continue;
        records.push_back({{"identity", rec.identity}, {"sides", encode(rec.sides)}, {"terms", encode(rec.terms)}});
      }
      jf["records"] = std::move(records);
      nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
      for (const auto& in : ce.result.inputs) inputs.push_back({{"name", in.name}, {"matrix", encode(in.value)}});
      jf["inputs"] = std::move(inputs);
      failures.push_back(std::move(jf));
    }
    js["failures"] = std::move(failures);
    list.push_back(std::move(js));
  }
  root["suites"] = std::move(list);
  return root.dump();
}

}  // namespace lagidx
