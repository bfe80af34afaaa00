#include "lagidx/cli.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lagidx/document.hpp"
#include "lagidx/indices.hpp"
#include "lagidx/maslov.hpp"
#include "lagidx/relations.hpp"
#include "lagidx/verify.hpp"

namespace lagidx {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalFlags {
  std::optional<double> tol_rank;
  std::optional<double> tol_residual;
  std::string output = "text";
};

struct IndexFlags {
  std::string input;
  std::vector<std::string> names;
  std::string method = "omega";
  std::optional<double> eps;
  std::uint64_t seed = 0;
  bool cross_check = false;
};

struct RelationFlags {
  std::string input;
  std::string op;
  std::vector<std::string> names;
  std::string result_name;
  std::string out_file;
};

struct MaslovFlags {
  std::string input;
  std::string path;
  std::string reference;
};

struct VerifyFlags {
  std::vector<std::string> suites{"all"};
  std::string n_range = "1..6";
  int trials = 200;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool no_minimize = false;
};

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

/// "k" or "lo..hi".
std::pair<int, int> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(s);
    return {v, v};
  }
  return {parse_int(s.substr(0, dots)), parse_int(s.substr(dots + 2))};
}

bool machine(const GlobalFlags& g) { return g.output == "machine"; }

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::EpsilonDisagreement: return kExitDisagreement;
    case ErrorKind::DegenerateCrossing:
    case ErrorKind::UnresolvedCluster: return kExitDegenerate;
    default: return kExitValidation;
  }
}

Json diagnostics_json(const IndexReport& r) {
  Json d = Json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  return d;
}

int cmd_index(const IndexFlags& f, const GlobalFlags& g, const TolerancePolicy& tol, std::ostream& out,
              std::ostream& err) {
  const Document doc = Document::load(f.input, tol);
  if (f.names.size() != 3) throw Error(ErrorKind::InvalidArgument, "index needs exactly three plane names");
  const LagrangianPlane l1 = doc.plane(f.names[0], tol);
  const LagrangianPlane l2 = doc.plane(f.names[1], tol);
  const LagrangianPlane l3 = doc.plane(f.names[2], tol);
  if (l1.n() != l2.n() || l1.n() != l3.n()) throw Error(ErrorKind::DimensionMismatch, "planes of different size");
  const IndexMethod method = parse_index_method(f.method);
  const IndexReport report = duistermaat(method, l1, l2, l3, tol, f.seed, f.eps);

  std::vector<std::pair<std::string, int>> checks;
  bool agree = true;
  if (f.cross_check) {
    for (IndexMethod m : {IndexMethod::robin, IndexMethod::omega, IndexMethod::reduce, IndexMethod::closed_form}) {
      try {
        const int v = duistermaat(m, l1, l2, l3, tol, f.seed, f.eps).value;
        checks.emplace_back(std::string(to_string(m)), v);
        agree = agree && v == report.value;
      } catch (const Error& e) {
        // The closed form applies only when all three planes are graphs.
        if (m != IndexMethod::closed_form || e.kind() != ErrorKind::NotInvertible) throw;
      }
    }
  }

  if (machine(g)) {
    Json j = Json::object();
    j["value"] = report.value;
    j["method"] = std::string(to_string(report.method));
    if (report.epsilon_used) j["epsilon"] = *report.epsilon_used;
    j["diagnostics"] = diagnostics_json(report);
    if (f.cross_check) {
      Json c = Json::object();
      for (const auto& [k, v] : checks) c[k] = v;
      j["cross_check"] = std::move(c);
      j["agree"] = agree;
    }
    out << j.dump() << "\n";
  } else {
    out << "iD(" << f.names[0] << ", " << f.names[1] << ", " << f.names[2] << ") = " << report.value << "\n";
    out << "method: " << to_string(report.method) << "\n";
    if (report.epsilon_used) out << "epsilon: " << *report.epsilon_used << "\n";
    for (const auto& [k, v] : report.diagnostics) out << "  " << k << ": " << v << "\n";
    if (f.cross_check) {
      out << "cross-check:";
      for (const auto& [k, v] : checks) out << " " << k << "=" << v;
      out << (agree ? " (agree)" : " (DISAGREE)") << "\n";
    }
  }
  if (!agree) {
    err << "error: methods disagree\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

int cmd_relation(const RelationFlags& f, const TolerancePolicy& tol, std::ostream& out) {
  const Document doc = Document::load(f.input, tol);
  const auto need = [&f](std::size_t count) {
    if (f.names.size() != count) {
      throw Error(ErrorKind::InvalidArgument,
                  "relation " + f.op + " needs " + std::to_string(count) + " object name(s)");
    }
  };
  const auto name_or = [&f](std::string fallback) { return f.result_name.empty() ? fallback : f.result_name; };

  Document result;
  if (f.op == "difference") {
    need(2);
    const LagrangianPlane l = doc.plane(f.names[0], tol);
    const LagrangianPlane m = doc.plane(f.names[1], tol);
    result.add(name_or(f.names[0] + "-" + f.names[1]), difference(l, m, tol));
  } else if (f.op == "inverse") {
    need(1);
    result.add(name_or(f.names[0] + "^-1"), inverse(doc.plane(f.names[0], tol)));
  } else if (f.op == "decompose") {
    need(1);
    const RelationParts parts = decompose(doc.plane(f.names[0], tol), tol);
    const std::string base = name_or(f.names[0]);
    result.add(base + ".dom_projector", parts.dom_projector);
    result.add(base + ".operator_part", parts.operator_part);
  } else if (f.op == "compress") {
    need(2);
    result.add(name_or(f.names[0] + "|" + f.names[1]),
               compress(doc.hermitian(f.names[0]), doc.hermitian(f.names[1]), tol));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown relation operation '" + f.op + "'");
  }
  if (f.out_file.empty()) {
    out << result.dump();
  } else {
    result.save(f.out_file);
  }
  return kExitOk;
}

int cmd_maslov(const MaslovFlags& f, const GlobalFlags& g, const TolerancePolicy& tol, std::ostream& out,
               std::ostream& err) {
  const Document doc = Document::load(f.input, tol);
  const RegularPath path = doc.path(f.path).build(tol);
  const LagrangianPlane m = doc.plane(f.reference, tol);
  if (path.n() != m.n()) throw Error(ErrorKind::DimensionMismatch, "path and reference plane");
  std::vector<Crossing> crossings;
  try {
    crossings = find_crossings(path, m, tol);
  } catch (const DegenerateCrossingError& e) {
    if (machine(g)) {
      out << Json{{"error", "degenerate_crossing"}, {"t", e.t()}}.dump() << "\n";
    }
    err << "error: degenerate crossing at t = " << e.t() << " (" << e.what() << ")\n";
    return kExitDegenerate;
  }
  const int index = maslov_from_crossings(crossings);
  if (machine(g)) {
    Json list = Json::array();
    for (const auto& c : crossings) {
      list.push_back({{"t", c.t},
                      {"dim", c.dim},
                      {"inertia", {c.form_inertia.minus, c.form_inertia.zero, c.form_inertia.plus}}});
    }
    out << Json{{"maslov", index}, {"crossings", std::move(list)}}.dump() << "\n";
  } else {
    for (const auto& c : crossings) {
      out << "crossing t=" << c.t << " dim=" << c.dim << " inertia=" << to_string(c.form_inertia) << "\n";
    }
    out << "Mas(" << f.path << ", " << f.reference << ") = " << index << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyFlags& f, const GlobalFlags& g, const TolerancePolicy& tol, std::ostream& out) {
  VerifyOptions options;
  options.suites = f.suites;
  std::tie(options.n_min, options.n_max) = parse_range(f.n_range);
  options.trials = f.trials;
  options.seed = f.seed;
  options.tol = tol;
  options.threads = f.threads;
  options.minimize = !f.no_minimize;
  const VerifyReport report = run_verify(options);
  out << (machine(g) ? report.machine() + "\n" : report.text());
  return report.ok() ? kExitOk : kExitDisagreement;
}

}  // namespace

TolerancePolicy tolerance_profile(std::string_view name) {
  if (name == "default" || name.empty()) return TolerancePolicy{};
  if (name == "strict") return TolerancePolicy{1e-11, 1e-10};
  if (name == "loose") return TolerancePolicy{1e-7, 1e-6};
  throw Error(ErrorKind::InvalidArgument, "unknown tolerance profile '" + std::string(name) + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_profile) {
  CLI::App app{"Symplectic indices of Lagrangian triples", "lagidx"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--tol-rank", g.tol_rank, "relative rank cutoff");
  app.add_option("--tol-residual", g.tol_residual, "residual tolerance");
  app.add_option("--output", g.output, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  IndexFlags fi;
  CLI::App* index = app.add_subcommand("index", "Duistermaat index of three planes");
  index->fallthrough();
  index->add_option("--input", fi.input, "document file")->required();
  index->add_option("names", fi.names, "three plane names")->required()->expected(3);
  index->add_option("--method", fi.method, "robin, omega, reduce or closed-form")
      ->check(CLI::IsMember({"robin", "omega", "reduce", "closed-form", "closed_form"}));
  index->add_option("--eps", fi.eps, "force the first Robin epsilon");
  index->add_option("--seed", fi.seed, "seed for epsilon and companion selection");
  index->add_flag("--cross-check", fi.cross_check, "run every method and compare");

  RelationFlags fr;
  CLI::App* relation = app.add_subcommand("relation", "linear-relation calculus");
  relation->fallthrough();
  relation->add_option("--input", fr.input, "document file")->required();
  relation->add_option("op", fr.op, "difference, inverse, decompose or compress")->required();
  relation->add_option("names", fr.names, "object names")->required();
  relation->add_option("--name", fr.result_name, "name of the result object");
  relation->add_option("--out", fr.out_file, "write the result document to a file");

  MaslovFlags fm;
  CLI::App* maslov = app.add_subcommand("maslov", "Maslov index of a path");
  maslov->fallthrough();
  maslov->add_option("--input", fm.input, "document file")->required();
  maslov->add_option("path", fm.path, "path object name")->required();
  maslov->add_option("reference", fm.reference, "reference plane name")->required();

  VerifyFlags fv;
  CLI::App* verify = app.add_subcommand("verify", "run the identity suites");
  verify->fallthrough();
  verify->add_option("--suite", fv.suites, "suite name(s) or all");
  verify->add_option("--n", fv.n_range, "dimension or range lo..hi");
  verify->add_option("--trials", fv.trials, "trials per dimension");
  verify->add_option("--seed", fv.seed, "master seed");
  verify->add_option("--threads", fv.threads, "worker threads (0 = hardware)");
  verify->add_flag("--no-minimize", fv.no_minimize, "skip counterexample minimization");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    TolerancePolicy tol = tolerance_profile(env_profile.value_or("default"));
    if (g.tol_rank) tol.rank_rel_tol = *g.tol_rank;
    if (g.tol_residual) tol.residual_tol = *g.tol_residual;
    tol.validate();

    if (index->parsed()) return cmd_index(fi, g, tol, out, err);
    if (relation->parsed()) return cmd_relation(fr, tol, out);
    if (maslov->parsed()) return cmd_maslov(fm, g, tol, out, err);
    return cmd_verify(fv, g, tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lagidx
