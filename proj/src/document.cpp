#include "lagidx/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lagidx {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

Json encode(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) parse_error(where + ": expected a number");
  return v.get<double>();
}

Matrix decode(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_error(where + ": expected a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) parse_error(where + ": rows must be non-empty arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) parse_error(where + ": ragged rows");
    for (Index c = 0; c < cols; ++c) {
      const Json& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2) parse_error(where + ": entries must be [re, im] pairs");
      m(i, c) = Complex(number(entry[0], where), number(entry[1], where));
    }
  }
  require_finite(m, where.c_str());
  return m;
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_error(where + ": missing field '" + key + "'");
  return *it;
}

HermitianMatrix decode_hermitian(const Json& j, const std::string& where, const TolerancePolicy& tol) {
  const Matrix m = decode(j, where);
  if (m.rows() != m.cols()) parse_error(where + ": Hermitian matrix must be square");
  return HermitianMatrix(m, tol);
}

Frame decode_frame(const Json& obj, const std::string& where) {
  Frame f{decode(field(obj, "x", where), where + ".x"), decode(field(obj, "y", where), where + ".y")};
  if (f.x.rows() != f.x.cols() || f.y.rows() != f.y.cols() || f.x.rows() != f.y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, where + ": X and Y must be square of equal size");
  }
  return f;
}

std::string_view kind_name(RegularPath::Kind k) {
  switch (k) {
    case RegularPath::Kind::graph_segment: return "graph_segment";
    case RegularPath::Kind::scaled_projector: return "scaled_projector";
    case RegularPath::Kind::custom: return "custom";
  }
  return "custom";
}

Json encode_object(const std::string& name, const DocObject& obj) {
  Json j = Json::object();
  j["name"] = name;
  j["type"] = std::string(type_name(obj));
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HermitianMatrix>) {
          j["data"] = encode(v.matrix());
        } else if constexpr (std::is_same_v<T, Frame>) {
          j["x"] = encode(v.x);
          j["y"] = encode(v.y);
        } else if constexpr (std::is_same_v<T, LagrangianPlane>) {
          j["x"] = encode(v.x());
          j["y"] = encode(v.y());
        } else if constexpr (std::is_same_v<T, SymplecticMap>) {
          j["data"] = encode(v.matrix());
        } else {
          j["kind"] = std::string(kind_name(v.kind));
          switch (v.kind) {
            case RegularPath::Kind::graph_segment:
              j["from"] = encode(v.from->matrix());
              j["to"] = encode(v.to->matrix());
              break;
            case RegularPath::Kind::scaled_projector:
              j["projector"] = encode(v.projector->matrix());
              break;
            case RegularPath::Kind::custom: {
              j["grid"] = v.grid;
              Json frames = Json::array();
              for (const auto& p : v.samples) frames.push_back(Json{{"x", encode(p.x())}, {"y", encode(p.y())}});
              j["frames"] = std::move(frames);
              break;
            }
          }
        }
      },
      obj);
  return j;
}

PathSpec decode_path(const Json& obj, const std::string& where, const TolerancePolicy& tol) {
  const Json& kind = field(obj, "kind", where);
  if (!kind.is_string()) parse_error(where + ": kind must be a string");
  const std::string k = kind.get<std::string>();
  PathSpec spec;
  if (k == "graph_segment") {
    spec.kind = RegularPath::Kind::graph_segment;
    spec.from = decode_hermitian(field(obj, "from", where), where + ".from", tol);
    spec.to = decode_hermitian(field(obj, "to", where), where + ".to", tol);
    if (spec.from->dim() != spec.to->dim()) throw Error(ErrorKind::DimensionMismatch, where + ": endpoints");
  } else if (k == "scaled_projector") {
    spec.kind = RegularPath::Kind::scaled_projector;
    spec.projector = decode_hermitian(field(obj, "projector", where), where + ".projector", tol);
    RegularPath::scaled_projector(*spec.projector, tol);
  } else if (k == "custom") {
    spec.kind = RegularPath::Kind::custom;
    const Json& grid = field(obj, "grid", where);
    const Json& frames = field(obj, "frames", where);
    if (!grid.is_array() || !frames.is_array()) parse_error(where + ": grid and frames must be arrays");
    for (const Json& t : grid) spec.grid.push_back(number(t, where + ".grid"));
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::string w = where + ".frames[" + std::to_string(i) + "]";
      const Frame f = decode_frame(frames[i], w);
      spec.samples.push_back(LagrangianPlane::from_frame(f.x, f.y, tol));
    }
    spec.build(tol);
  } else {
    parse_error(where + ": unknown path kind '" + k + "'");
  }
  return spec;
}

template <class T>
const T& typed(const Document& doc, std::string_view name, const char* expected) {
  const DocObject& obj = doc.get(name);
  if (const T* p = std::get_if<T>(&obj)) return *p;
  throw Error(ErrorKind::InvalidArgument, "object '" + std::string(name) + "' is a " +
                                              std::string(type_name(obj)) + ", expected " + expected);
}

}  // namespace

Index PathSpec::n() const {
  switch (kind) {
    case RegularPath::Kind::graph_segment: return from->dim();
    case RegularPath::Kind::scaled_projector: return projector->dim();
    case RegularPath::Kind::custom: return samples.empty() ? 0 : samples.front().n();
  }
  return 0;
}

RegularPath PathSpec::build(const TolerancePolicy& tol) const {
  switch (kind) {
    case RegularPath::Kind::graph_segment: return RegularPath::graph_segment(*from, *to);
    case RegularPath::Kind::scaled_projector: return RegularPath::scaled_projector(*projector, tol);
    case RegularPath::Kind::custom: return RegularPath::sampled(grid, samples);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown path kind");
}

std::string_view type_name(const DocObject& obj) {
  static constexpr std::string_view names[] = {"hermitian", "frame", "plane", "symplectic", "path"};
  return names[obj.index()];
}

Document Document::parse(std::string_view text, const TolerancePolicy& tol) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) parse_error("document root must be an object");
  const Json& version = field(root, "schema_version", "document");
  if (!version.is_string()) parse_error("schema_version must be a string");
  if (version.get<std::string>() != kSchemaVersion) {
    parse_error("unsupported schema_version '" + version.get<std::string>() + "'");
  }
  const Json& objects = field(root, "objects", "document");
  if (!objects.is_array()) parse_error("objects must be an array");

  Document doc;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Json& obj = objects[i];
    const std::string pos = "objects[" + std::to_string(i) + "]";
    if (!obj.is_object()) parse_error(pos + ": expected an object");
    const Json& name_j = field(obj, "name", pos);
    const Json& type_j = field(obj, "type", pos);
    if (!name_j.is_string() || !type_j.is_string()) parse_error(pos + ": name and type must be strings");
    const std::string name = name_j.get<std::string>();
    const std::string type = type_j.get<std::string>();
    const std::string where = "'" + name + "'";
    if (type == "hermitian") {
      doc.add(name, decode_hermitian(field(obj, "data", where), where, tol));
    } else if (type == "frame") {
      doc.add(name, decode_frame(obj, where));
    } else if (type == "plane") {
      const Frame f = decode_frame(obj, where);
      doc.add(name, LagrangianPlane::from_frame(f.x, f.y, tol));
    } else if (type == "symplectic") {
      doc.add(name, SymplecticMap(decode(field(obj, "data", where), where), tol));
    } else if (type == "path") {
      doc.add(name, decode_path(obj, where, tol));
    } else {
      parse_error(where + ": unknown type '" + type + "'");
    }
  }
  return doc;
}

Document Document::load(const std::filesystem::path& file, const TolerancePolicy& tol) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + file.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), tol);
}

std::string Document::dump() const {
  Json root = Json::object();
  root["schema_version"] = schema_version_;
  Json objects = Json::array();
  for (const auto& [name, obj] : objects_) objects.push_back(encode_object(name, obj));
  root["objects"] = std::move(objects);
  return root.dump(2) + "\n";
}

void Document::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + file.string() + "'");
  out << dump();
}

void Document::add(std::string name, DocObject obj) {
  if (name.empty()) throw Error(ErrorKind::InvalidArgument, "object names must be non-empty");
  if (contains(name)) throw Error(ErrorKind::InvalidArgument, "duplicate object name '" + name + "'");
  objects_.emplace_back(std::move(name), std::move(obj));
}

bool Document::contains(std::string_view name) const {
  for (const auto& entry : objects_) {
    if (entry.first == name) return true;
  }
  return false;
}

const DocObject& Document::get(std::string_view name) const {
  for (const auto& entry : objects_) {
    if (entry.first == name) return entry.second;
  }
  throw Error(ErrorKind::InvalidArgument, "no object named '" + std::string(name) + "'");
}

const HermitianMatrix& Document::hermitian(std::string_view name) const {
  return typed<HermitianMatrix>(*this, name, "hermitian");
}

const SymplecticMap& Document::symplectic(std::string_view name) const {
  return typed<SymplecticMap>(*this, name, "symplectic");
}

const PathSpec& Document::path(std::string_view name) const { return typed<PathSpec>(*this, name, "path"); }

LagrangianPlane Document::plane(std::string_view name, const TolerancePolicy& tol) const {
  const DocObject& obj = get(name);
  if (const auto* p = std::get_if<LagrangianPlane>(&obj)) return *p;
  if (const auto* f = std::get_if<Frame>(&obj)) return LagrangianPlane::from_frame(f->x, f->y, tol);
  throw Error(ErrorKind::InvalidArgument,
              "object '" + std::string(name) + "' is a " + std::string(type_name(obj)) + ", expected plane");
}

}  // namespace lagidx
