#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lagidx/lagrangian.hpp"
#include "lagidx/relations.hpp"

namespace lagidx {

enum class IndexMethod { robin, omega, reduce, closed_form };

std::string_view to_string(IndexMethod m);
/// Accepts "robin", "omega", "reduce", "closed-form" / "closed_form".
IndexMethod parse_index_method(std::string_view s);

struct IndexReport {
  int value = 0;
  IndexMethod method = IndexMethod::omega;
  std::optional<double> epsilon_used;
  /// Named intermediate quantities (inertias, residuals, second eps, ...).
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Both sides (or all sides) of an integer identity plus the intermediate
/// counts that produced them.
struct VerificationRecord {
  std::string identity;
  std::vector<std::pair<std::string, long>> sides;
  std::vector<std::pair<std::string, long>> terms;

  bool holds() const;
  std::string describe() const;
};

/// The Hermitian form on L1 + L2 + L3 in frame coordinates, a 3n x 3n matrix
/// of blocks X_j* Y_k - Y_j* X_k.
struct OmegaForm {
  HermitianMatrix w;
};

OmegaForm omega_form(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                     const TolerancePolicy& tol = {});

/// n_-(R2 - R1) - n_-(R3 - R1) + n_-(R3 - R2) for one common eps.
int robin_index_at(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
                   double epsilon, const TolerancePolicy& tol = {});

/// Robin-map formula evaluated at two independently selected eps values;
/// throws EpsilonDisagreement if the integers differ. `forced_epsilon`, when
/// given, replaces the first selection.
IndexReport duistermaat_robin(const LagrangianPlane& l1, const LagrangianPlane& l2,
                              const LagrangianPlane& l3, const TolerancePolicy& tol = {},
                              std::uint64_t seed = 0, std::optional<double> forced_epsilon = std::nullopt);

/// n_-(W) - n + dim(L1 ∩ L3). Deterministic; the reference method.
IndexReport duistermaat_omega(const LagrangianPlane& l1, const LagrangianPlane& l2,
                              const LagrangianPlane& l3, const TolerancePolicy& tol = {});

/// Axiomatic reduction: cocycle expansion over a transversal companion L4,
/// then each term is normalized to iD(G_0, G_B, G_inf) = n_-(B).
IndexReport duistermaat_reduce(const LagrangianPlane& l1, const LagrangianPlane& l2,
                               const LagrangianPlane& l3, const TolerancePolicy& tol = {},
                               std::uint64_t seed = 0);

/// n_-(B - A) - n_-(C - A) + n_-(C - B).
int duistermaat_graphs(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& c,
                       const TolerancePolicy& tol = {});

/// Dispatch by method. closed_form requires all three planes to be graphs.
IndexReport duistermaat(IndexMethod method, const LagrangianPlane& l1, const LagrangianPlane& l2,
                        const LagrangianPlane& l3, const TolerancePolicy& tol = {},
                        std::uint64_t seed = 0, std::optional<double> forced_epsilon = std::nullopt);

/// Signature n_+(W) - n_-(W) of the triple form.
int kashiwara(const LagrangianPlane& l1, const LagrangianPlane& l2, const LagrangianPlane& l3,
              const TolerancePolicy& tol = {});

/// Residual ||W - 1/2 D* T* diag(R3-R2, R1-R3, R2-R1) T D|| / max(1, ||W||)
/// with frames, D and R all taken at the given eps.
double factorization_residual(const LagrangianPlane& l1, const LagrangianPlane& l2,
                              const LagrangianPlane& l3, double epsilon, const TolerancePolicy& tol = {});

enum class VerticalOrder { graph_first, plane_first };

/// graph_first: iD(G_A, L, G_inf) = n_-(L - A_dom) on dom L.
/// plane_first: iD(L, G_A, G_inf) = n_-(A_dom - L) + dim mul L.
int duistermaat_relation_vertical(const HermitianMatrix& a, const LagrangianPlane& l, VerticalOrder order,
                                  const TolerancePolicy& tol = {});

/// n_-(A - B) - n_-(B^-1 - A^-1) = n_-(A) - n_-(B). Throws NotInvertible.
VerificationRecord morse_difference_invertible(const HermitianMatrix& a, const HermitianMatrix& b,
                                               const TolerancePolicy& tol = {});

enum class KernelCase { kerA_in_kerB, kerB_in_kerA };

/// Pseudoinverse versions of the difference formula under a kernel
/// inclusion. Throws InclusionViolated if the inclusion fails numerically.
VerificationRecord morse_difference_kernel(const HermitianMatrix& a, const HermitianMatrix& b, KernelCase kc,
                                           const TolerancePolicy& tol = {});

/// n_-(A+B) + n_0(A+B) + n_-(A^-1 + B^-1) = n_-(A) + n_-(B). Throws NotInvertible.
VerificationRecord morse_sum_invertible(const HermitianMatrix& a, const HermitianMatrix& b,
                                        const TolerancePolicy& tol = {});

/// n_-(op((L1 - L3)^-1) - op((L2 - L3)^-1)) for L3 transversal to L1, L2 and
/// G_inf. Throws TransversalityViolated otherwise.
int index_via_resolvent_difference(const LagrangianPlane& l1, const LagrangianPlane& l2,
                                   const LagrangianPlane& l3, const TolerancePolicy& tol = {});

/// Two inertia-additivity expansions of H = [[A, I], [I, B^-1]] against its
/// directly computed Morse index. Throws NotInvertible.
VerificationRecord haynsworth_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const TolerancePolicy& tol = {});

}  // namespace lagidx
