#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "latdesign/catalog.hpp"
#include "latdesign/classification.hpp"
#include "latdesign/design.hpp"
#include "latdesign/designs.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/qseries.hpp"
#include "latdesign/report.hpp"
#include "latdesign/shells.hpp"

using namespace latdesign;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kResource = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  int workers = 0;
  std::uint64_t memory_cap = 0;  // bytes, 0 = default vector cap
  std::string format = "json";
  std::uint64_t seed = 20240101;
};

Globals g;

// A vector of a d-dim shell costs 4 d bytes of coordinates.
std::size_t vector_cap(std::size_t dim) {
  if (g.memory_cap == 0) return EnumerationOptions{}.max_vectors;
  return std::max<std::size_t>(2, g.memory_cap / (4 * std::max<std::size_t>(dim, 1)));
}

EnumerationOptions enum_opts(const Lattice& l) {
  EnumerationOptions e;
  e.workers = g.workers;
  e.max_vectors = vector_cap(l.dim());
  return e;
}

/// A path to a lattice file, or else a catalog name.
Lattice load(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_lattice(arg);
  try {
    return catalog::build(arg);
  } catch (const UnknownNameError&) {
    throw UsageError("no lattice file or catalog entry named " + arg);
  }
}

void require_json(const std::string& command) {
  if (g.format != "json") throw UsageError(command + ": csv output is only available for tables");
}

std::vector<std::string> rat_strings(const std::vector<Rat>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_catalog_build(const std::string& name, const std::string& out) {
  const Lattice& l = load(name);
  if (out.empty())
    write_lattice(std::cout, l);
  else
    save_lattice(out, l);
  return kPass;
}

int cmd_catalog_list() {
  if (g.format == "csv") {
    std::cout << "name,dim,det\n";
    for (const auto& n : catalog::names()) {
      const Lattice& l = catalog::build(n);
      std::cout << n << ',' << l.dim() << ',' << to_string(determinant(l)) << '\n';
    }
    return kPass;
  }
  json arr = json::array();
  for (const auto& n : catalog::names()) {
    const Lattice& l = catalog::build(n);
    arr.push_back({{"name", n}, {"dim", l.dim()}, {"det", to_string(determinant(l))}});
  }
  print(arr);
  return kPass;
}

void write_vectors(std::ostream& os, const ShellSet& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = x.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j];
    os << '\n';
  }
}

int cmd_shell(const std::string& file, const std::string& norm, bool count_only, const std::string& out) {
  const Lattice l = load(file);
  const Rat m = parse_rat(norm);
  if (count_only) {
    const auto n = shell_size(l, m, enum_opts(l));
    if (g.format == "csv")
      std::cout << "norm,count\n" << to_string(m) << ',' << n << '\n';
    else
      print({{"norm", to_string(m)}, {"count", n}});
    return kPass;
  }
  const ShellSet x = enumerate_shell(l, m, enum_opts(l));
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_vectors(f, x);
    print({{"norm", to_string(m)}, {"count", x.size()}, {"out", out}});
  } else if (g.format == "csv") {
    write_vectors(std::cout, x);
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto r = x.row(i);
      rows.push_back(std::vector<std::int32_t>(r.begin(), r.end()));
    }
    print({{"norm", to_string(m)}, {"count", x.size()}, {"vectors", rows}});
  }
  return kPass;
}

int cmd_theta(const std::string& file, std::size_t max) {
  const Lattice l = load(file);
  const ThetaPrefix th = theta_prefix(l, max, enum_opts(l));
  if (g.format == "csv") {
    std::cout << "m,count\n";
    for (std::size_t m = 0; m <= max; ++m) std::cout << m << ',' << th.counts[m] << '\n';
  } else {
    print({{"lattice", l.label()}, {"max_norm", max}, {"counts", th.counts}});
  }
  return kPass;
}

int cmd_identity(const std::string& name, std::size_t order) {
  const NamedIdentity& id = named_identity(name);
  if (order == 0) order = id.default_order;
  const Lattice& l = catalog::build(id.lattice);
  const IdentityCheck c = verify_identity(l, id.rhs(order), order, enum_opts(l));
  if (g.format == "csv") {
    std::cout << "m,observed,expected,match\n";
    for (const auto& r : c.rows) std::cout << r.m << ',' << r.observed << ',' << to_string(r.expected) << ',' << r.match << '\n';
  } else {
    json rows = json::array();
    for (const auto& r : c.rows)
      rows.push_back({{"m", r.m}, {"observed", r.observed}, {"expected", to_string(r.expected)}, {"match", r.match}});
    print({{"identity", id.name}, {"lattice", id.lattice}, {"formula", id.formula}, {"ok", c.ok}, {"rows", rows}});
  }
  return c.ok ? kPass : kCheckFailure;
}

json evidence_json(const DegreeEvidence& e) {
  json j{{"degree", e.degree}, {"method", e.method}, {"holds", e.holds}};
  if (e.monomials) j["monomials"] = e.monomials;
  if (e.trials) j["trials"] = e.trials;
  if (!e.witness.empty()) j["witness"] = e.witness;
  if (!e.lhs.empty()) j["lhs"] = e.lhs;
  if (!e.rhs.empty()) j["rhs"] = e.rhs;
  return j;
}

int cmd_design_test(const std::string& file, const std::string& norm, unsigned tmax, bool exact, bool screen) {
  if (exact && screen) throw UsageError("--exact and --screen are exclusive");
  const Lattice l = load(file);
  const ShellSet x = enumerate_shell(l, parse_rat(norm), enum_opts(l));
  if (x.size() < 2) throw UsageError("shell of norm " + norm + " has fewer than two vectors");
  DesignOptions d;
  d.mode = exact ? DesignMode::Exact : screen ? DesignMode::Screen : DesignMode::Auto;
  d.seed = g.seed;
  d.workers = g.workers;
  const Configuration c = configuration(x, tmax, d);
  if (g.format == "csv") {
    std::cout << "degree,method,holds\n";
    for (const auto& e : c.strength.evidence) std::cout << e.degree << ',' << e.method << ',' << e.holds << '\n';
    return kPass;
  }
  json ev = json::array();
  for (const auto& e : c.strength.evidence) ev.push_back(evidence_json(e));
  print({{"d", c.d},
         {"n", c.n},
         {"s", c.s},
         {"t", c.t},
         {"capped", c.capped},
         {"distances", rat_strings(c.distances)},
         {"evidence", ev}});
  return kPass;
}

json checks_json(const std::vector<classification::Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"ok", c.ok}});
  return arr;
}

int cmd_report(const std::string& scope, const std::string& out, std::set<int> criteria) {
  report::Options o;
  o.scope = report::parse_scope(scope);
  o.workers = g.workers;
  o.seed = g.seed;
  o.max_vectors = vector_cap(24);
  o.criteria = std::move(criteria);
  const report::Report r = report::run_report(o);
  const std::string text = g.format == "csv" ? report::to_csv(r) : report::to_json(r) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
    std::cerr << (r.ok() ? "PASS" : "FAIL") << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
              << r.count("error") << " error, " << r.count("resource-abort") << " resource-abort\n";
  }
  if (r.has_resource_abort()) return kResource;
  return r.ok() ? kPass : kCheckFailure;
}

int cmd_classify(const std::string& file, bool replay) {
  if (replay) return cmd_report("full", "", {5});
  if (file.empty()) throw UsageError("classify needs a lattice or --replay-paper");
  require_json("classify");
  const Lattice l = load(file);
  DesignOptions d;
  d.mode = DesignMode::Exact;
  d.workers = g.workers;
  d.seed = g.seed;
  const auto c = classification::classify(l, d);
  json j{{"lattice", c.lattice}, {"dim", c.dim}, {"min", to_string(c.min)}, {"s3", c.shell_size}, {"ok", c.ok}};
  if (c.ni) {
    j["neighbors"] = {{"n0", c.ni->profile.n0}, {"n1", c.ni->profile.n1}, {"n2", c.ni->profile.n2},
                      {"checks", checks_json(c.ni->checks)}};
  }
  if (c.pi) j["minimal_vectors"] = checks_json(c.pi->checks);
  if (c.divisibility) j["divisibility"] = checks_json(c.divisibility->checks);
  if (c.p2) j["intersection_numbers"] = checks_json(c.p2->checks);
  if (c.s2) j["roots"] = checks_json(c.s2->checks);
  if (c.roots) j["root_system"] = c.roots->name();
  if (c.m1) j["m1_prime"] = checks_json(c.m1->checks);
  if (c.roots) {
    json trace = json::array();
    for (const auto& e : classification::eliminate_cases().cases)
      trace.push_back({{"case", e.name}, {"n2", e.n2}, {"survives", e.representable}, {"reason", e.reason}});
    j["elimination"] = trace;
  }
  j["notes"] = c.notes;
  print(j);
  return c.ok ? kPass : kCheckFailure;
}

int cmd_design_code(const std::string& file) {
  using namespace designs;
  require_json("design-code");
  const Lattice l = load(file);
  const ShellSet x = enumerate_shell(l, Rat(3), enum_opts(l));
  const ShellSet s2 = enumerate_shell(l, Rat(2), enum_opts(l));
  const auto decomposition = classification::root_decompose(s2);
  const Frame f = decomposition.name() == "(A1)^16" ? detect_frame(s2) : standard_frame(l);
  const auto classes = sign_classes(x, f);
  const auto m = incidence_from_classes(classes, 16);
  const auto blocks = m.block_list();
  const std::size_t k = blocks.empty() ? 0 : blocks.front().size();
  std::uint64_t lambda = 0;
  for (const auto& b : blocks) lambda += std::count(b.begin(), b.end(), 0) && std::count(b.begin(), b.end(), 1);
  const bool holds = verify_design(m, 2, 16, k, lambda);
  const BinaryCode code = code_from_incidence(m);
  json j{{"lattice", l.label()},
         {"root_system", decomposition.name()},
         {"classes", classes.size()},
         {"class_size", classes.empty() ? 0 : classes.front().members.size()},
         {"blocks", blocks},
         {"design", {{"t", 2}, {"v", 16}, {"k", k}, {"lambda", lambda}, {"holds", holds}}},
         {"code", {{"params", code.params()}, {"weights", code.weights}}}};
  print(j);
  return holds ? kPass : kCheckFailure;
}

int cmd_fano() {
  using namespace designs;
  require_json("fano");
  const auto subsets = fano_subsets();
  std::size_t iso = 0;
  for (const auto& s : subsets) iso += s.isometric;
  const auto fam = max_disjoint_family(subsets);
  const auto pair = cyclic_pair();
  json lines = json::array();
  for (auto i : fam.witness) lines.push_back(subsets[i].lines);
  print({{"count", subsets.size()},
         {"isometric", iso},
         {"disjoint_pairs", fam.disjoint_pairs},
         {"disjoint_triples", fam.disjoint_triples},
         {"max_family", fam.size},
         {"witness", lines},
         {"cyclic_pair_disjoint", disjoint(pair.first, pair.second)}});
  return iso == 30 && fam.size == 2 ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latdesign: lattice shells, spherical designs and the norm-3 classification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", g.workers, "worker threads (default: LATDESIGN_WORKERS or all cores)");
  app.add_option("--memory-cap", g.memory_cap, "bytes of shell storage before a resource abort");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed of the random design screen");

  std::function<int()> run;

  auto* cat = app.add_subcommand("catalog", "build or list catalog lattices");
  cat->require_subcommand(1);
  std::string cat_name, cat_out;
  auto* build = cat->add_subcommand("build", "write a catalog lattice in the lattice file format");
  build->add_option("name", cat_name)->required();
  build->add_option("--out", cat_out, "output file (default stdout)");
  build->callback([&] { run = [&] { return cmd_catalog_build(cat_name, cat_out); }; });
  cat->add_subcommand("list", "list catalog names")->callback([&] { run = [] { return cmd_catalog_list(); }; });

  std::string file, norm, out;
  bool count_only = false;
  auto* shell = app.add_subcommand("shell", "enumerate one shell");
  shell->add_option("lattice", file, "lattice file or catalog name")->required();
  shell->add_option("--norm", norm)->required();
  shell->add_flag("--count-only", count_only);
  shell->add_option("--out", out, "CSV file of basis coordinates");
  shell->callback([&] { run = [&] { return cmd_shell(file, norm, count_only, out); }; });

  std::size_t max = 0;
  auto* theta = app.add_subcommand("theta", "theta prefix");
  theta->add_option("lattice", file)->required();
  theta->add_option("--max", max)->required();
  theta->callback([&] { run = [&] { return cmd_theta(file, max); }; });

  std::string id_name;
  std::size_t id_order = 0;
  auto* identity = app.add_subcommand("identity", "compare a theta series with its modular form");
  identity->add_option("name", id_name)->required()->check(CLI::IsMember({"O23", "L1623", "Z7"}));
  identity->add_option("--max", id_order, "truncation order (default per identity)");
  identity->callback([&] { run = [&] { return cmd_identity(id_name, id_order); }; });

  unsigned tmax = 7;
  bool exact = false, screen = false;
  auto* dt = app.add_subcommand("design-test", "(d, n, s, t) configuration of a shell");
  dt->add_option("lattice", file)->required();
  dt->add_option("--norm", norm)->required();
  dt->add_option("--tmax", tmax);
  dt->add_flag("--exact", exact, "exact tensor test at every degree");
  dt->add_flag("--screen", screen, "random screen at every even degree");
  dt->callback([&] { run = [&] { return cmd_design_test(file, norm, tmax, exact, screen); }; });

  bool replay = false;
  auto* cls = app.add_subcommand("classify", "classification checks on s3(L)");
  cls->add_option("lattice", file);
  cls->add_flag("--replay-paper", replay, "replay the nine-lattice analysis and the root system elimination");
  cls->callback([&] { run = [&] { return cmd_classify(file, replay); }; });

  auto* dc = app.add_subcommand("design-code", "sign-class design and binary code of a 16-dim lattice");
  dc->add_option("lattice", file)->required();
  dc->callback([&] { run = [&] { return cmd_design_code(file); }; });

  app.add_subcommand("fano", "Fano subsets of s3(Z7)")->callback([&] { run = [] { return cmd_fano(); }; });

  std::string scope;
  std::vector<int> criteria;
  auto* rep = app.add_subcommand("report", "verification report");
  rep->add_option("scope", scope)->required()->check(CLI::IsMember({"quick", "full"}));
  rep->add_option("--out", out, "report file (default stdout)");
  rep->add_option("--criterion", criteria, "restrict to these criteria (1-9)")->check(CLI::Range(1, 9));
  rep->callback([&] { run = [&] { return cmd_report(scope, out, {criteria.begin(), criteria.end()}); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (g.workers > 0) set_default_workers(g.workers);
  try {
    return run();
  } catch (const ResourceError& e) {
    std::cerr << "resource abort: " << e.what() << '\n';
    return kResource;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}
