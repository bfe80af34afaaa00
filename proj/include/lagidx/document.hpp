#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lagidx/lagrangian.hpp"
#include "lagidx/maslov.hpp"

namespace lagidx {

/// Unvalidated pair (X, Y); becomes a plane only on request.
struct Frame {
  Matrix x;
  Matrix y;
};

/// Serializable description of a regular path.
struct PathSpec {
  RegularPath::Kind kind = RegularPath::Kind::graph_segment;
  /// graph_segment endpoints.
  std::optional<HermitianMatrix> from;
  std::optional<HermitianMatrix> to;
  /// scaled_projector.
  std::optional<HermitianMatrix> projector;
  /// custom: planes sampled at an increasing grid from 0 to 1.
  std::vector<double> grid;
  std::vector<LagrangianPlane> samples;

  Index n() const;
  RegularPath build(const TolerancePolicy& tol = {}) const;
};

using DocObject = std::variant<HermitianMatrix, Frame, LagrangianPlane, SymplecticMap, PathSpec>;

std::string_view type_name(const DocObject& obj);

/// A named collection of matrices, frames, planes, symplectic maps and paths.
///
/// Text form is JSON:
///   {"schema_version": "1", "objects": [{"name": ..., "type": ..., ...}]}
/// Matrices are arrays of rows, every entry a pair [re, im]. Plane entries
/// are validated when loaded. Dumping a loaded canonical document (the output
/// of dump()) reproduces it byte for byte.
class Document {
 public:
  static constexpr const char* kSchemaVersion = "1";

  /// Throws ParseError on malformed input and the usual validation errors
  /// (NotLagrangian, NotHermitian, ...) on invalid objects.
  static Document parse(std::string_view text, const TolerancePolicy& tol = {});
  static Document load(const std::filesystem::path& file, const TolerancePolicy& tol = {});

  std::string dump() const;
  void save(const std::filesystem::path& file) const;

  /// Throws InvalidArgument on duplicate names.
  void add(std::string name, DocObject obj);
  bool contains(std::string_view name) const;
  const DocObject& get(std::string_view name) const;
  const std::vector<std::pair<std::string, DocObject>>& objects() const { return objects_; }

  const HermitianMatrix& hermitian(std::string_view name) const;
  const SymplecticMap& symplectic(std::string_view name) const;
  const PathSpec& path(std::string_view name) const;
  /// A plane entry, or a frame entry validated on the spot.
  LagrangianPlane plane(std::string_view name, const TolerancePolicy& tol = {}) const;

 private:
  std::string schema_version_ = kSchemaVersion;
  std::vector<std::pair<std::string, DocObject>> objects_;
};

}  // namespace lagidx
