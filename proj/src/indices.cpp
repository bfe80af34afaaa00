#include "lagidx/indices.hpp"

#include <cmath>
#include <sstream>

#include "lagidx/random.hpp"

namespace lagidx {

std::string_view to_string(IndexMethod m) {
  switch (m) {
    case IndexMethod::robin: return "robin";
    case IndexMethod::omega: return "omega";
    case IndexMethod::reduce: return "reduce";
    case IndexMethod::closed_form: return "closed-form";
  }
  return "unknown";
}

IndexMethod parse_index_method(std::string_view s) {
  if (s == "robin") return IndexMethod::robin;
  if (s == "omega") return IndexMethod::omega;
  if (s == "reduce") return IndexMethod::reduce;
  if (s == "closed-form" || s == "closed_form") return IndexMethod::closed_form;
  throw Error(ErrorKind::InvalidArgument, "unknown index method '" + std::string(s) + "'");
}

bool VerificationRecord::holds() const {
  for (const auto& side : sides) {
    if (side.second != sides.front().second) return false;
  }
  return true;
}

std::string VerificationRecord::describe() const {
  std::ostringstream os;
  os << identity << ":";
  for (const auto& [name, v] : sides) os << " " << name << "=" << v;
  if (!terms.empty()) {
    os << " [";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      os << (i ? " " : "") << terms[i].first << "=" << terms[i].second;
    }
    os << "]";
  }
  return os.str();
}

namespace {

int n_minus(const HermitianMatrix& h, const TolerancePolicy& tol) { return inertia(h, tol).minus; }
int n_zero(const HermitianMatrix& h, const TolerancePolicy& tol) { return inertia(h, tol).zero; }

void require_same_n(const LagrangianPlane& a, const LagrangianPlane& b, const LagrangianPlane& c) {
  if (a.n() != b.n() || a.n() != c.n()) {
    throw Error(ErrorKind::DimensionMismatch, "triple of planes of different size");
  }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "matrices of different size");
}

HermitianMatrix checked_inverse(const HermitianMatrix& h, const char* name, const TolerancePolicy& tol) {
  if (n_zero(h, tol) != 0) {
    throw Error(ErrorKind::NotInvertible, std::string(name) + " is not numerically invertible");
  }
  return pseudoinverse(h, tol);
}

}  // namespace

// ---------------------------------------------------------------------------

OmegaForm omega_form(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                     const TolerancePolicy& tol) {
  require_same_n(l1, l2, l3);
  const Index n = l1.n();
  Matrix w = Matrix::Zero(3 * n, 3 * n);
  w.block(0, n, n, n) = pairing(l1, l2);
  w.block(0, 2 * n, n, n) = -pairing(l1, l3);
  w.block(n, 0, n, n) = -pairing(l2, l1);
  w.block(n, 2 * n, n, n) = pairing(l2, l3);
  w.block(2 * n, 0, n, n) = pairing(l3, l1);
  w.block(2 * n, n, n, n) = -pairing(l3, l2);
  return {HermitianMatrix(w, tol)};
}

int robin_index_at(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                   double epsilon, const TolerancePolicy& tol) {
  require_same_n(l1, l2, l3);
  const HermitianMatrix r1 = robin_map(l1, epsilon, tol).r;
  const HermitianMatrix r2 = robin_map(l2, epsilon, tol).r;
  const HermitianMatrix r3 = robin_map(l3, epsilon, tol).r;
  return n_minus(r2 - r1, tol) - n_minus(r3 - r1, tol) + n_minus(r3 - r2, tol);
}

IndexReport duistermaat_robin(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                              const TolerancePolicy& tol, std::uint64_t seed,
                              std::optional<double> forced_epsilon) {
  require_same_n(l1, l2, l3);
  const std::vector<LagrangianPlane> planes{l1, l2, l3};
  const double eps1 = forced_epsilon ? *forced_epsilon : epsilon_select(planes, tol, split_seed(seed, 11));
  const double eps2 = epsilon_select(planes, tol, split_seed(seed, 12), eps1);
  const int v1 = robin_index_at(l1, l2, l3, eps1, tol);
  const int v2 = robin_index_at(l1, l2, l3, eps2, tol);
  if (v1 != v2) {
    std::ostringstream os;
    os << "eps=" << eps1 << " gives " << v1 << " but eps=" << eps2 << " gives " << v2;
    throw Error(ErrorKind::EpsilonDisagreement, os.str());
  }
  IndexReport rep;
  rep.value = v1;
  rep.method = IndexMethod::robin;
  rep.epsilon_used = eps1;
  rep.diagnostics = {{"epsilon_check", eps2}};
  return rep;
}

IndexReport duistermaat_omega(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                              const TolerancePolicy& tol) {
  const OmegaForm form = omega_form(l1, l2, l3, tol);
  const Inertia in = inertia(form.w, tol);
  const int d13 = intersection_dim(l1, l3, tol);
  IndexReport rep;
  rep.value = in.minus - static_cast<int>(l1.n()) + d13;
  rep.method = IndexMethod::omega;
  rep.diagnostics = {{"n_minus(W)", in.minus}, {"n_zero(W)", in.zero}, {"n_plus(W)", in.plus},
                     {"dim(L1^L3)", d13}};
  return rep;
}

namespace {

// iD(la, lb, l4) for l4 transversal to la and lb.
int normalized_term(const LagrangianPlane& la, const LagrangianPlane& lb, const LagrangianPlane& l4,
                    const TolerancePolicy& tol) {
  const SymplecticMap s = normalizing_map(la, l4, tol);
  const LagrangianPlane moved = lb.transformed(s, tol);
  HermitianMatrix b;
  try {
    b = graph_matrix(moved, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInvertible) throw;
    throw Error(ErrorKind::DualBasisFailure, "normalized plane is not a graph");
  }
  return n_minus(b, tol);
}

}  // namespace

IndexReport duistermaat_reduce(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                               const TolerancePolicy& tol, std::uint64_t seed) {
  require_same_n(l1, l2, l3);
  constexpr int kCompanionAttempts = 8;
  for (int attempt = 0;; ++attempt) {
    const LagrangianPlane l4 = transversal_companion({l1, l2, l3}, tol, split_seed(seed, 21, attempt));
    try {
      const int t12 = normalized_term(l1, l2, l4, tol);
      const int t13 = normalized_term(l1, l3, l4, tol);
      const int t23 = normalized_term(l2, l3, l4, tol);
      IndexReport rep;
      rep.value = t12 - t13 + t23;
      rep.method = IndexMethod::reduce;
      rep.diagnostics = {{"iD(L1,L2,L4)", t12}, {"iD(L1,L3,L4)", t13}, {"iD(L2,L3,L4)", t23},
                         {"companion_attempt", attempt}};
      return rep;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DualBasisFailure || attempt + 1 >= kCompanionAttempts) throw;
    }
  }
}

int duistermaat_graphs(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& c,
                       const TolerancePolicy& tol) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  return n_minus(b - a, tol) - n_minus(c - a, tol) + n_minus(c - b, tol);
}

IndexReport duistermaat(IndexMethod method, const LagrangianPlane& l1, const LagrangianPlane& l2,
                        const LagrangianPlane& l3, const TolerancePolicy& tol, std::uint64_t seed,
                        std::optional<double> forced_epsilon) {
  switch (method) {
    case IndexMethod::robin: return duistermaat_robin(l1, l2, l3, tol, seed, forced_epsilon);
    case IndexMethod::omega: return duistermaat_omega(l1, l2, l3, tol);
    case IndexMethod::reduce: return duistermaat_reduce(l1, l2, l3, tol, seed);
    case IndexMethod::closed_form: {
      IndexReport rep;
      rep.method = IndexMethod::closed_form;
      rep.value = duistermaat_graphs(graph_matrix(l1, tol), graph_matrix(l2, tol), graph_matrix(l3, tol), tol);
      return rep;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method");
}

int kashiwara(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
              const TolerancePolicy& tol) {
  return inertia(omega_form(l1, l2, l3, tol).w, tol).signature();
}

double factorization_residual(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                              double epsilon, const TolerancePolicy& tol) {
  require_same_n(l1, l2, l3);
  const Index n = l1.n();
  const Matrix w = omega_form(l1, l2, l3, tol).w.matrix();
  const LagrangianPlane* planes[3] = {&l1, &l2, &l3};
  Matrix d = Matrix::Zero(3 * n, 3 * n);
  HermitianMatrix r[3];
  for (int j = 0; j < 3; ++j) {
    d.block(j * n, j * n, n, n) = planes[j]->x() + epsilon * planes[j]->y();
    r[j] = robin_map(*planes[j], epsilon, tol).r;
  }
  Matrix lambda = Matrix::Zero(3 * n, 3 * n);
  lambda.block(0, 0, n, n) = (r[2] - r[1]).matrix();
  lambda.block(n, n, n, n) = (r[0] - r[2]).matrix();
  lambda.block(2 * n, 2 * n, n, n) = (r[1] - r[0]).matrix();
  Matrix t = Matrix::Identity(3 * n, 3 * n) * -1.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (j != k) t.block(j * n, k * n, n, n).setIdentity();
    }
  }
  const Matrix td = t * d;
  const Matrix rebuilt = 0.5 * td.adjoint() * lambda * td;
  const double wn = w.norm();
  const double res = (w - rebuilt).norm();
  return res / std::max(1.0, wn);
}

int duistermaat_relation_vertical(const HermitianMatrix& a, const LagrangianPlane& l, VerticalOrder order,
                                  const TolerancePolicy& tol) {
  if (a.dim() != l.n()) throw Error(ErrorKind::DimensionMismatch, "matrix and plane of different size");
  const RelationParts parts = decompose(l, tol);
  const HermitianMatrix a_dom = compress(a, parts.dom_projector, tol);
  // Both operands are supported on dom L, so zero padding only adds zero modes.
  if (order == VerticalOrder::graph_first) return n_minus(parts.operator_part - a_dom, tol);
  return n_minus(a_dom - parts.operator_part, tol) + parts.mul_dim;
}

// ---------------------------------------------------------------------------
// Morse index of differences

VerificationRecord morse_difference_invertible(const HermitianMatrix& a, const HermitianMatrix& b,
                                               const TolerancePolicy& tol) {
  require_same_dim(a, b);
  const HermitianMatrix ai = checked_inverse(a, "A", tol);
  const HermitianMatrix bi = checked_inverse(b, "B", tol);
  const long diff = n_minus(a - b, tol);
  const long inv_diff = n_minus(bi - ai, tol);
  const long na = n_minus(a, tol);
  const long nb = n_minus(b, tol);
  return {"n-(A-B) - n-(B^-1 - A^-1) = n-(A) - n-(B)",
          {{"lhs", diff - inv_diff}, {"rhs", na - nb}},
          {{"n-(A-B)", diff}, {"n-(B^-1-A^-1)", inv_diff}, {"n-(A)", na}, {"n-(B)", nb}}};
}

VerificationRecord morse_difference_kernel(const HermitianMatrix& a, const HermitianMatrix& b, KernelCase kc,
                                           const TolerancePolicy& tol) {
  require_same_dim(a, b);
  const HermitianMatrix& small_kernel = kc == KernelCase::kerA_in_kerB ? a : b;
  const HermitianMatrix& big_kernel = kc == KernelCase::kerA_in_kerB ? b : a;
  const Matrix k = kernel_basis(small_kernel.matrix(), tol);
  const double leak = k.cols() > 0 ? spectral_norm(big_kernel.matrix() * k) : 0.0;
  if (leak > tol.residual_tol * std::max(1.0, spectral_norm(big_kernel.matrix()))) {
    std::ostringstream os;
    os << (kc == KernelCase::kerA_in_kerB ? "ker A is not inside ker B" : "ker B is not inside ker A")
       << " (residual " << leak << ")";
    throw Error(ErrorKind::InclusionViolated, os.str());
  }
  const HermitianMatrix ap = pseudoinverse(a, tol);
  const HermitianMatrix bp = pseudoinverse(b, tol);
  const long diff = n_minus(a - b, tol);
  const long na = n_minus(a, tol);
  const long nb = n_minus(b, tol);
  if (kc == KernelCase::kerA_in_kerB) {
    const HermitianMatrix pb = range_projector(b, tol);
    const long extra = n_minus(bp - ap.congruence(pb.matrix()), tol);
    return {"ker A in ker B: n-(A-B) = n-(A) - n-(B) + n-(B+ - P_B A+ P_B)",
            {{"lhs", diff}, {"rhs", na - nb + extra}},
            {{"n-(A-B)", diff}, {"n-(A)", na}, {"n-(B)", nb}, {"n-(B+-P_B A+ P_B)", extra}}};
  }
  const HermitianMatrix pa = range_projector(a, tol);
  const long extra = n_minus(bp.congruence(pa.matrix()) - ap, tol);
  const long za = n_zero(a, tol);
  const long zb = n_zero(b, tol);
  return {"ker B in ker A: n-(A-B) = n-(A) - n-(B) + n-(P_A B+ P_A - A+) + n0(A) - n0(B)",
          {{"lhs", diff}, {"rhs", na - nb + extra + za - zb}},
          {{"n-(A-B)", diff},
           {"n-(A)", na},
           {"n-(B)", nb},
           {"n-(P_A B+ P_A-A+)", extra},
           {"n0(A)", za},
           {"n0(B)", zb}}};
}

VerificationRecord morse_sum_invertible(const HermitianMatrix& a, const HermitianMatrix& b,
                                        const TolerancePolicy& tol) {
  require_same_dim(a, b);
  const HermitianMatrix ai = checked_inverse(a, "A", tol);
  const HermitianMatrix bi = checked_inverse(b, "B", tol);
  const Inertia sum = inertia(a + b, tol);
  const long inv_sum = n_minus(ai + bi, tol);
  const long na = n_minus(a, tol);
  const long nb = n_minus(b, tol);
  return {"n-(A+B) + n0(A+B) + n-(A^-1 + B^-1) = n-(A) + n-(B)",
          {{"lhs", sum.minus + sum.zero + inv_sum}, {"rhs", na + nb}},
          {{"n-(A+B)", sum.minus}, {"n0(A+B)", sum.zero}, {"n-(A^-1+B^-1)", inv_sum}, {"n-(A)", na}, {"n-(B)", nb}}};
}

int index_via_resolvent_difference(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                                   const TolerancePolicy& tol) {
  require_same_n(l1, l2, l3);
  const LagrangianPlane vert = LagrangianPlane::vertical(l1.n());
  if (intersection_dim(l3, l1, tol) != 0 || intersection_dim(l3, l2, tol) != 0 ||
      intersection_dim(l3, vert, tol) != 0) {
    throw Error(ErrorKind::TransversalityViolated, "L3 must be transversal to L1, L2 and G_inf");
  }
  const RelationParts d1 = decompose(inverse(difference(l1, l3, tol)), tol);
  const RelationParts d2 = decompose(inverse(difference(l2, l3, tol)), tol);
  if (d1.mul_dim != 0 || d2.mul_dim != 0) {
    throw Error(ErrorKind::TransversalityViolated, "resolvent planes are not graphs at this tolerance");
  }
  return n_minus(d1.operator_part - d2.operator_part, tol);
}

VerificationRecord haynsworth_check(const HermitianMatrix& a, const HermitianMatrix& b, const TolerancePolicy& tol) {
  require_same_dim(a, b);
  const HermitianMatrix ai = checked_inverse(a, "A", tol);
  const HermitianMatrix bi = checked_inverse(b, "B", tol);
  const Index n = a.dim();
  Matrix h(2 * n, 2 * n);
  h << a.matrix(), Matrix::Identity(n, n), Matrix::Identity(n, n), bi.matrix();
  const long direct = n_minus(HermitianMatrix::symmetrize(h), tol);
  const long na = n_minus(a, tol);
  const long schur_a = n_minus(bi - ai, tol);
  const long nbi = n_minus(bi, tol);
  const long schur_b = n_minus(a - b, tol);
  return {"Haynsworth expansions of [[A, I], [I, B^-1]]",
          {{"n-(H)", direct}, {"n-(A)+n-(B^-1-A^-1)", na + schur_a}, {"n-(B^-1)+n-(A-B)", nbi + schur_b}},
          {{"n-(A)", na}, {"n-(B^-1-A^-1)", schur_a}, {"n-(B^-1)", nbi}, {"n-(A-B)", schur_b}}};
}

}  // namespace lagidx
