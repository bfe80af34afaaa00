#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lagidx/indices.hpp"
#include "lagidx/lagrangian.hpp"

namespace lagidx {

struct FramePoint {
  Matrix x;
  Matrix y;
};

/// A differentiable path t in [0, 1] -> (X(t); Y(t)) of Lagrangian frames.
///
/// graph_segment and scaled_projector paths carry exact derivatives. Custom
/// paths use the supplied derivative or, failing that, central differences
/// with step 1e-6 (accurate to roughly 1e-10 for smooth frames; enough for
/// sign decisions on regular crossings, not for nearly degenerate ones).
class RegularPath {
 public:
  enum class Kind { graph_segment, scaled_projector, custom };
  using FrameFn = std::function<FramePoint(double)>;

  /// t -> (I; A + t (B - A)).
  static RegularPath graph_segment(const HermitianMatrix& a, const HermitianMatrix& b);
  /// t -> (I; t Q) for an orthogonal projector Q; throws InvalidArgument otherwise.
  static RegularPath scaled_projector(const HermitianMatrix& q, const TolerancePolicy& tol = {});
  static RegularPath custom(Index n, FrameFn frame, std::optional<FrameFn> derivative = std::nullopt);
  /// Piecewise unitary-geodesic interpolation through planes given at an
  /// increasing grid from 0 to 1.
  static RegularPath sampled(const std::vector<double>& grid, const std::vector<LagrangianPlane>& planes);
  /// t -> U_L R_P(pi t) G_0: rotates the directions of L selected by the
  /// projector P by half a turn. Starts and ends at L; non-decreasing.
  static RegularPath rotation_loop(const LagrangianPlane& l, const HermitianMatrix& p);
  /// Runs `first` on [0, split] and `second` on [split, 1].
  static RegularPath concatenate(const RegularPath& first, const RegularPath& second, double split = 0.5);

  /// S applied to every frame (custom kind, exact derivative).
  RegularPath transformed(const SymplecticMap& s) const;
  /// t -> path(phi(t)) for increasing phi with phi(0) = 0, phi(1) = 1.
  RegularPath reparametrized(std::function<double(double)> phi, std::function<double(double)> dphi) const;
  /// t -> path(1 - t).
  RegularPath reversed() const;

  Kind kind() const { return kind_; }
  Index n() const { return n_; }
  FramePoint frame_at(double t) const { return frame_(t); }
  FramePoint derivative_at(double t) const;
  LagrangianPlane plane_at(double t, const TolerancePolicy& tol = {}) const;
  /// X* Y' - Y* X' at t: the crossing form on the whole plane, in frame coordinates.
  HermitianMatrix full_crossing_form(double t) const;

 private:
  RegularPath(Kind kind, Index n, FrameFn frame, std::optional<FrameFn> derivative)
      : kind_(kind), n_(n), frame_(std::move(frame)), derivative_(std::move(derivative)) {}

  Kind kind_;
  Index n_;
  FrameFn frame_;
  std::optional<FrameFn> derivative_;
};

struct Crossing {
  double t = 0.0;
  int dim = 0;
  Inertia form_inertia;
};

struct CrossingSearch {
  int grid = 2048;
  double time_resolution = 1e-12;
  /// Two refined crossings closer than this (but farther apart than
  /// time_resolution) are reported as UnresolvedCluster.
  double cluster_width = 1e-9;
};

/// Restricted crossing form on L(t0) ∩ M, in coordinates of an orthonormal
/// basis of the kernel of X_M* Y(t0) - Y_M* X(t0). Throws NoCrossing.
HermitianMatrix crossing_form(const RegularPath& path, double t0, const LagrangianPlane& m,
                              const TolerancePolicy& tol = {});

/// All t in [0, 1] with L(t) ∩ M nontrivial, in increasing order. Throws
/// DegenerateCrossingError when a restricted form is singular and
/// UnresolvedCluster when two crossings cannot be separated.
std::vector<Crossing> find_crossings(const RegularPath& path, const LagrangianPlane& m,
                                     const TolerancePolicy& tol = {}, const CrossingSearch& search = {});

/// Sum of n_+ over crossings in [0, 1) minus sum of n_- over crossings in (0, 1].
int maslov_from_crossings(const std::vector<Crossing>& crossings);

int maslov_index(const RegularPath& path, const LagrangianPlane& m, const TolerancePolicy& tol = {},
                 const CrossingSearch& search = {});

/// True iff the full crossing form is positive semidefinite (to the cutoff)
/// at every point of a uniform grid.
bool is_nondecreasing(const RegularPath& path, const TolerancePolicy& tol = {}, int grid = 256);

/// Smooth non-decreasing path from L0 to L1 of the form S^{-1} G_{tQ}, with Q
/// an orthogonal projector whose kernel has dimension dim(L0 ∩ L1). Its Maslov
/// index against any regular reference M equals iD(L0, L1, M).
RegularPath minimal_path(const LagrangianPlane& l0, const LagrangianPlane& l1, const TolerancePolicy& tol = {},
                         std::uint64_t seed = 0);

/// Mas(L, M1) - Mas(L, M2) against iD(L0, L1, M1) - iD(L0, L1, M2) and
/// iD(L1, M1, M2) - iD(L0, M1, M2) (the sign forced by the cocycle identity).
VerificationRecord zwz_check(const RegularPath& path, const LagrangianPlane& m1, const LagrangianPlane& m2,
                             const TolerancePolicy& tol = {});

struct ExtremalReport {
  int duistermaat = 0;
  int minimal_maslov = 0;
  std::vector<int> sample_maslov;
  int skipped_degenerate = 0;

  /// Minimal sample attains iD and no sample goes below it.
  bool holds() const;
};

/// Samples non-decreasing paths from L0 to L1 (the minimal path, monotone
/// reparametrizations of it, and detours through positive rotation loops)
/// and compares their Maslov indices against iD(L0, L1, M).
ExtremalReport extremal_check(const LagrangianPlane& l0, const LagrangianPlane& l1, const LagrangianPlane& m,
                              int trials, const TolerancePolicy& tol = {}, std::uint64_t seed = 0);

}  // namespace lagidx
