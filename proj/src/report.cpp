#include "latdesign/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "latdesign/catalog.hpp"
#include "latdesign/classification.hpp"
#include "latdesign/design.hpp"
#include "latdesign/designs.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/qseries.hpp"
#include "latdesign/reference.hpp"
#include "latdesign/shells.hpp"

namespace latdesign::report {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string tuple(std::initializer_list<std::string> parts) {
  std::string s = "(";
  bool first = true;
  for (const auto& p : parts) {
    s += (first ? "" : ", ") + p;
    first = false;
  }
  return s + ")";
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string boolean(bool b) { return b ? "true" : "false"; }

class Context {
 public:
  Context(const Options& o, Report& r) : opts_(o), report_(r) {}

  bool quick() const { return opts_.scope == Scope::Quick; }
  bool wants(int c) const { return opts_.criteria.empty() || opts_.criteria.count(c); }
  const Options& options() const { return opts_; }

  EnumerationOptions eo() const {
    EnumerationOptions e;
    e.workers = opts_.workers;
    e.max_vectors = opts_.max_vectors;
    return e;
  }

  DesignOptions design(DesignMode mode = DesignMode::Auto) const {
    DesignOptions d;
    d.mode = mode;
    d.seed = opts_.seed;
    d.workers = opts_.workers;
    return d;
  }

  std::shared_ptr<const Lattice> lattice(const std::string& name) {
    auto it = lattices_.find(name);
    if (it != lattices_.end()) return it->second;
    std::shared_ptr<const Lattice> p;
    auto o = opts_.overrides.find(name);
    if (o != opts_.overrides.end()) {
      p = std::make_shared<const Lattice>(o->second);
    } else {
      const Lattice& l = catalog::build(name);
      p = std::shared_ptr<const Lattice>(std::shared_ptr<const Lattice>{}, &l);
    }
    lattices_.emplace(name, p);
    return p;
  }

  std::shared_ptr<const ShellSet> shell(const std::string& name, unsigned m) {
    const auto key = std::make_pair(name, m);
    auto it = shells_.find(key);
    if (it != shells_.end()) return it->second;
    auto s = std::make_shared<const ShellSet>(enumerate_shell(lattice(name), Rat(m), eo()));
    seen_.push_back({name, m, s->size(), s->empty() || is_antipodal(*s)});
    if (s->size() <= 200000) shells_.emplace(key, s);
    return s;
  }

  const ThetaPrefix& theta(const std::string& name, std::size_t order) {
    auto it = theta_.find(name);
    if (it == theta_.end() || it->second.max_norm < order)
      it = theta_.insert_or_assign(name, theta_prefix(*lattice(name), order, eo())).first;
    return it->second;
  }

  struct ShellRecord {
    std::string lattice;
    unsigned m;
    std::size_t size;
    bool antipodal;
  };
  const std::vector<ShellRecord>& seen() const { return seen_; }

  /// Runs f, which emits items through emit(); an exception becomes one
  /// error (or resource-abort) item so other lattices are unaffected.
  void group(int criterion, const std::string& section, const std::string& lattice, const std::string& name,
             const std::function<void()>& f) {
    criterion_ = criterion;
    section_ = section;
    lattice_ = lattice;
    mark_ = Clock::now();
    try {
      f();
    } catch (const ResourceError& e) {
      Item it = base(name);
      it.status = "resource-abort";
      it.observed = e.what();
      push(std::move(it));
    } catch (const std::exception& e) {
      Item it = base(name);
      it.status = "error";
      it.observed = e.what();
      push(std::move(it));
    }
  }

  void emit(const std::string& name, const std::string& expected, const std::string& observed, bool ok,
            const std::string& source = "derived", const std::string& note = {}) {
    Item it = base(name);
    it.expected = expected;
    it.observed = observed;
    it.source = source;
    it.status = ok ? "pass" : "fail";
    it.note = note;
    push(std::move(it));
  }

  void emit(Item it) {
    Item b = base(it.name);
    it.criterion = b.criterion;
    if (it.section.empty()) it.section = b.section;
    if (it.lattice.empty()) it.lattice = b.lattice;
    push(std::move(it));
  }

  void skip(int criterion, const std::string& section, const std::string& lattice, const std::string& name,
            const std::string& note) {
    Item it;
    it.criterion = criterion;
    it.section = section;
    it.lattice = lattice;
    it.name = name;
    it.status = "skipped";
    it.note = note;
    report_.items.push_back(std::move(it));
  }

 private:
  Item base(const std::string& name) const {
    Item it;
    it.criterion = criterion_;
    it.section = section_;
    it.lattice = lattice_;
    it.name = name;
    return it;
  }

  void push(Item it) {
    it.seconds = since(mark_);
    mark_ = Clock::now();
    report_.items.push_back(std::move(it));
  }

  const Options& opts_;
  Report& report_;
  std::map<std::string, std::shared_ptr<const Lattice>> lattices_;
  std::map<std::pair<std::string, unsigned>, std::shared_ptr<const ShellSet>> shells_;
  std::map<std::string, ThetaPrefix> theta_;
  std::vector<ShellRecord> seen_;
  int criterion_ = 0;
  std::string section_, lattice_;
  Clock::time_point mark_ = Clock::now();
};

// Largest order up to `to` whose printed shells stay within the quick limit.
std::size_t quick_order(const reference::ThetaTable& t, std::size_t to) {
  std::size_t m = 0;
  while (m < to && t.coefficients[m + 1] <= quick_shell_limit) ++m;
  return m;
}

std::size_t theta_order(Context& ctx, const reference::ThetaTable& t) {
  return ctx.quick() ? quick_order(t, t.check_to) : t.check_to;
}

std::vector<std::uint64_t> prefix(const std::vector<std::uint64_t>& v, std::size_t order) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(order + 1)};
}

// ---------------------------------------------------------------- 1

void theta_prefixes(Context& ctx) {
  for (const auto& t : reference::theta_tables()) {
    const std::size_t order = theta_order(ctx, t);
    ctx.group(1, "theta", t.lattice, "theta prefix", [&] {
      const auto& th = ctx.theta(t.lattice, order);
      const auto expected = prefix(t.coefficients, order);
      const auto observed = prefix(th.counts, order);
      ctx.emit("theta to q^" + std::to_string(order), join(expected), join(observed), expected == observed,
               "reference", order < t.check_to ? "quick scope truncation" : "");
    });
  }
  for (const auto& d : reference::determinants()) {
    ctx.group(1, "catalog", d.lattice, "determinant", [&] {
      const Rat det = determinant(*ctx.lattice(d.lattice));
      ctx.emit("determinant", num(d.det), to_string(det), det == Rat(static_cast<unsigned long>(d.det)), "reference");
    });
  }
  ctx.group(1, "catalog", "", "containment", [&] {
    for (const auto& inc : catalog::containment_chain()) {
      const std::string what = inc.small + " in " + inc.big;
      ctx.emit(what, inc.expected ? "contained" : "not contained", inc.holds ? "contained" : "not contained",
               inc.expected == inc.holds, inc.small == "Z1" ? "derived" : "reference");
    }
  });
}

// ---------------------------------------------------------------- 2

void identities(Context& ctx) {
  for (const auto& id : named_identities()) {
    const auto& table = reference::theta_table(id.lattice);
    const std::size_t order = theta_order(ctx, table);
    ctx.group(2, "identity", id.lattice, id.name, [&] {
      const auto check = verify_identity(ctx.theta(id.lattice, order), id.rhs(order), order);
      std::vector<std::string> exp, obs;
      for (const auto& r : check.rows) {
        exp.push_back(to_string(r.expected));
        obs.push_back(num(r.observed));
      }
      ctx.emit(id.formula + " to q^" + std::to_string(order), join(exp), join(obs), check.ok, "derived",
               order < id.default_order ? "quick scope truncation" : "");
    });
  }
}

// ---------------------------------------------------------------- 3

void configurations(Context& ctx) {
  for (const auto& row : reference::configuration_rows()) {
    const std::string name = "s_" + std::to_string(row.m);
    bool in_range = row.n <= 1000000;
    if (row.lattice == "O16" || row.lattice.starts_with("L16")) in_range = in_range && row.m <= 7;
    if (!in_range) {
      ctx.skip(3, "configuration", row.lattice, name, "outside the acceptance range");
      continue;
    }
    if (ctx.quick() && row.n > quick_shell_limit) {
      ctx.skip(3, "configuration", row.lattice, name, "quick scope: |X| > 10^5");
      continue;
    }
    ctx.group(3, "configuration", row.lattice, name, [&] {
      auto x = ctx.shell(row.lattice, row.m);
      const unsigned t_max = row.misprint ? 7 : row.t + 1;
      const Configuration c = configuration(*x, t_max, ctx.design());
      std::string note;
      for (const auto& ev : c.strength.evidence)
        if (ev.method == "screen")
          note += (note.empty() ? "" : "; ") + std::string("degree ") + std::to_string(ev.degree) +
                  (ev.holds ? " passed the random screen" : " refuted by an exact witness");
      const bool dns = c.d == row.d && c.n == row.n && c.s == row.s;
      Item it;
      it.name = name + " (d, n, s, t)";
      it.expected = tuple({num(row.d), num(row.n), num(row.s), num(row.t)});
      it.observed = tuple({num(c.d), num(c.n), num(c.s), num(c.t)}) + (c.capped ? " capped" : "");
      it.source = "reference";
      if (row.misprint) {
        // The printed strength cannot be right: the degree-6 identity fails.
        const bool ok = dns && c.t == 5 && !c.capped;
        it.status = ok ? "misprint" : "fail";
        note = "printed t is not attainable; derived t = 5" + (note.empty() ? "" : "; " + note);
      } else {
        it.status = dns && c.t == row.t && !c.capped ? "pass" : "fail";
      }
      it.note = note;
      ctx.emit(std::move(it));
    });
  }
}

// ---------------------------------------------------------------- 4

void main_theorem(Context& ctx) {
  for (const auto& name : reference::nine_lattices()) {
    ctx.group(4, "design strength", name, "s3 5-design", [&] {
      auto x = ctx.shell(name, 3);
      const bool d5 = is_t_design(*x, 5, ctx.design(DesignMode::Exact));
      ctx.emit("s3 is a 5-design (exact tensor)", "true", boolean(d5), d5, "reference");
    });
  }
  ctx.group(4, "design strength", "O23", "s3 7-design", [&] {
    auto x = ctx.shell("O23", 3);
    const bool d7 = is_t_design(*x, 7, ctx.design(DesignMode::Exact));
    ctx.emit("s3 is a 7-design (exact tensor)", "true", boolean(d7), d7, "reference");
    const auto sc = screen_check(*x, 8, ctx.design().screen_trials, ctx.options().seed, ctx.options().workers);
    bool fails = !sc.holds;
    std::string how = "degree 8 refuted by an exact witness";
    if (sc.holds) {
      fails = !tensor_check(*x, 8, ctx.options().workers).holds;
      how = "degree 8 by exact tensor";
    }
    ctx.emit("s3 is not a 9-design", "true", boolean(fails), fails, "reference", how);
  });
  ctx.group(4, "design strength", "O7", "s3 not a 7-design", [&] {
    auto x = ctx.shell("O7", 3);
    const bool fails = !tensor_check(*x, 6, ctx.options().workers).holds;
    ctx.emit("s3 is not a 7-design", "true", boolean(fails), fails, "reference", "degree 6 by exact tensor");
  });
}

// ---------------------------------------------------------------- 5

void emit_checks(Context& ctx, const std::vector<classification::Check>& checks) {
  for (const auto& c : checks) ctx.emit(c.name, c.expected, c.observed, c.ok);
}

void classification_replay(Context& ctx) {
  using namespace classification;
  const std::map<std::string, std::string> roots{
      {"L1621", "(A1)^16"}, {"L1622", "(D4)^4"}, {"L1623", "(D8)^2"}};
  for (const auto& name : reference::nine_lattices()) {
    ctx.group(5, "classification", name, "classify", [&] {
      const LatticeClassification c = classify(*ctx.lattice(name), ctx.design(DesignMode::Exact));
      ctx.emit("s3 is a 5-design", "true", boolean(c.ni.has_value()), c.ni.has_value());
      if (!c.ni) return;
      emit_checks(ctx, c.ni->checks);
      if (name == "L1621") {
        const auto& p = c.ni->profile;
        ctx.emit("(n0, n1, n2)", "(500, 255, 6)", tuple({num(p.n0), num(p.n1), num(p.n2)}),
                 p == NeighborProfile{500, 255, 6}, "reference");
      }
      if (c.pi) emit_checks(ctx, c.pi->checks);
      if (c.divisibility) emit_checks(ctx, c.divisibility->checks);
      if (c.p2) emit_checks(ctx, c.p2->checks);
      if (c.s2) {
        emit_checks(ctx, c.s2->checks);
        Item it;
        it.name = "roots at ip 0, printed form |X|/64 - 18";
        it.expected = to_string(c.s2->printed_ip0);
        it.observed = num(c.s2->ip0);
        it.source = "reference";
        it.status = c.s2->printed_ip0_holds ? "pass" : "misprint";
        if (!c.s2->printed_ip0_holds)
          it.note = "the printed form does not hold; 3|X|/64 - 18 = " + to_string(c.s2->corrected_ip0) + " does";
        ctx.emit(std::move(it));
      }
      if (c.roots) {
        auto r = roots.find(name);
        ctx.emit("root system", r == roots.end() ? "" : r->second, c.roots->name(),
                 r != roots.end() && r->second == c.roots->name(), "reference");
      }
      if (c.m1) emit_checks(ctx, c.m1->checks);
      ctx.emit("all classification checks", "true", boolean(c.ok), c.ok);
    });
  }

  ctx.group(5, "admissible root systems", "", "enumerate", [&] {
    const auto search = enumerate_admissible_root_systems(16);
    std::set<std::string> expected{"(A1)^16", "(A2)^8", "(A4)^4", "(A8)^2", "A16",
                                   "(D4)^4",  "(D8)^2", "D16",    "(E8)^2"};
    std::set<std::string> observed;
    for (const auto& c : search.cases) observed.insert(c.name);
    ctx.emit("candidates", join(std::vector<std::string>(expected.begin(), expected.end()), ", "),
             join(std::vector<std::string>(observed.begin(), observed.end()), ", "),
             expected == observed && search.cases.size() == 9, "reference",
             num(search.unions) + " unions of rank 16; " + num(search.rejected_divisibility) + " fail 256 | |X|; " +
                 num(search.rejected_neighbors) + " fail the neighbor count");
  });

  ctx.group(5, "elimination", "", "eliminate", [&] {
    const auto rep = eliminate_cases();
    // Expected outcome per case: "parity", "sum" (no representation) or
    // the representation of n2 for the survivors.
    const std::map<std::string, std::pair<std::uint64_t, std::string>> expected{
        {"(A1)^16", {6, "1 + 1 + 1 + 1 + 1 + 1"}},       {"(A2)^8", {9, "parity"}},  {"(A4)^4", {15, "parity"}},
        {"(A8)^2", {27, "parity"}},   {"A16", {51, "parity"}},    {"(D4)^4", {18, "6 + 6 + 6"}},
        {"(D8)^2", {42, "28 + 14"}}, {"D16", {90, "sum"}},       {"(E8)^2", {90, "sum"}}};
    for (const auto& c : rep.cases) {
      std::string outcome = c.representable ? "" : c.parity_argument ? "parity" : "sum";
      if (c.representable)
        for (std::size_t i = 0; i < c.witness.size(); ++i) outcome += (i ? " + " : "") + num(c.witness[i]);
      auto e = expected.find(c.name);
      const std::string exp = e == expected.end() ? "" : "n2 = " + num(e->second.first) + ": " + e->second.second;
      const std::string obs = "n2 = " + num(c.n2) + ": " + outcome;
      ctx.emit(c.name, exp, obs, exp == obs, "reference", c.reason);
    }
    const std::vector<std::string> survivors{"(A1)^16", "(D4)^4", "(D8)^2"};
    ctx.emit("survivors", join(survivors, ", "), join(rep.survivors, ", "), rep.survivors == survivors, "reference");
  });
}

// ---------------------------------------------------------------- 6

void design_bridge(Context& ctx) {
  using namespace designs;
  ctx.group(6, "design and code", "L1621", "sign classes", [&] {
    auto x = ctx.shell("L1621", 3);
    auto s2 = ctx.shell("L1621", 2);
    const auto classes = sign_classes(*x, detect_frame(*s2));
    std::set<std::size_t> sizes;
    for (const auto& c : classes) sizes.insert(c.members.size());
    const std::string obs = num(classes.size()) + " x " + join(std::vector<std::size_t>(sizes.begin(), sizes.end()), "/");
    ctx.emit("sign classes", "16 x 64", obs, obs == "16 x 64", "reference");
    const auto m = incidence_from_classes(classes, 16);
    const bool design = verify_design(m, 2, 16, 6, 2);
    ctx.emit("incidence is a 2-(16,6,2) design", "true", boolean(design), design, "reference");
    const auto code = code_from_incidence(m).params();
    ctx.emit("code", "[16, 6, 6]", code, code == "[16, 6, 6]", "reference");
  });
  const std::map<std::string, std::string> codes{{"L1622", "[16, 7, 4]"}, {"L1623", "[16, 8, 4]"}};
  for (const auto& [name, expected] : codes) {
    ctx.group(6, "design and code", name, "sign classes", [&] {
      auto x = ctx.shell(name, 3);
      const auto classes = sign_classes(*x, standard_frame(*ctx.lattice(name)));
      const auto m = incidence_from_classes(classes, 16);
      const auto code = code_from_incidence(m).params();
      ctx.emit("code of all sign classes", expected, code, code == expected, "reference",
               num(classes.size()) + " classes in the standard (A1)^16 frame");
      const auto subs = design_subsystems(m, 16, 2);
      std::set<std::string> params;
      for (const auto& s : subs) params.insert(code_from_incidence(s).params());
      const bool contains_l1621 = params.count("[16, 6, 6]") > 0;
      ctx.emit("16-block 2-(16,6,2) subdesigns include a [16, 6, 6] code", "true", boolean(contains_l1621),
               contains_l1621, "derived",
               num(subs.size()) + " subdesigns; codes " + join(std::vector<std::string>(params.begin(), params.end()), ", "));
    });
  }
  ctx.group(6, "design and code", "L1621", "printed incidence", [&] {
    const auto m = printed_design();
    const bool design = verify_design(m, 2, 16, 6, 2);
    ctx.emit("printed incidence is a 2-(16,6,2) design", "true", boolean(design), design, "reference");
    const auto code = code_from_incidence(m).params();
    ctx.emit("printed incidence code", "[16, 6, 6]", code, code == "[16, 6, 6]", "reference");
    const Lattice dl = lattice_from_design(m);
    const auto th = theta_prefix(dl, 6, ctx.eo()).counts;
    const auto ref = prefix(reference::theta_table("L1621").coefficients, 6);
    ctx.emit("design lattice theta to q^6", join(ref), join(th), th == ref, "reference");
    const auto own = prefix(ctx.theta("L1621", 6).counts, 6);
    ctx.emit("design lattice theta equals the catalog lattice", join(own), join(th), th == own);
  });
}

// ---------------------------------------------------------------- 7

void fano(Context& ctx) {
  using namespace designs;
  ctx.group(7, "fano", "Z7", "fano subsets", [&] {
    const auto subsets = fano_subsets();
    std::size_t iso = 0;
    for (const auto& s : subsets) iso += s.isometric;
    ctx.emit("subsets isometric to s3(O7)", "30", num(iso), iso == 30 && subsets.size() == 30, "reference");
    const auto pair = cyclic_pair();
    const bool dis = disjoint(pair.first, pair.second);
    ctx.emit("cyclic families are disjoint", "true", boolean(dis), dis, "reference");
    const auto fam = max_disjoint_family(subsets);
    ctx.emit("largest pairwise disjoint family", "2", num(fam.size), fam.size == 2, "reference",
             num(fam.disjoint_pairs) + " disjoint pairs");
    ctx.emit("pairwise disjoint triples", "0", num(fam.disjoint_triples), fam.disjoint_triples == 0, "reference");
  });
}

// ---------------------------------------------------------------- 8

void spot_checks(Context& ctx) {
  for (unsigned m : {3u, 11u, 12u, 19u}) {
    ctx.group(8, "shell strength", "Z7", "s_" + std::to_string(m), [&] {
      const bool d5 = is_t_design(*ctx.shell("Z7", m), 5, ctx.design(DesignMode::Exact));
      ctx.emit("s_" + std::to_string(m) + " is a 5-design", "true", boolean(d5), d5);
    });
  }
  for (unsigned m : {1u, 2u, 4u, 5u}) {
    ctx.group(8, "shell strength", "Z7", "s_" + std::to_string(m), [&] {
      const auto st = design_strength(*ctx.shell("Z7", m), 5, ctx.design(DesignMode::Exact));
      ctx.emit("s_" + std::to_string(m) + " strength", "3", num(st.t) + (st.capped ? " capped" : ""),
               st.t == 3 && !st.capped);
    });
  }
  for (unsigned m : {2u, 4u, 6u}) {
    ctx.group(8, "shell strength", "Z4", "s_" + std::to_string(m), [&] {
      const bool d5 = is_t_design(*ctx.shell("Z4", m), 5, ctx.design(DesignMode::Exact));
      ctx.emit("s_" + std::to_string(m) + " is a 5-design", "true", boolean(d5), d5);
    });
  }
}

// ---------------------------------------------------------------- 9

// Counts of s_0..s_max by brute force over the box |x_i| <= sqrt(max G^-1_ii).
std::vector<std::uint64_t> box_counts(const Lattice& l, std::size_t max) {
  const std::size_t n = l.dim();
  const Mat gi = l.gram().inverse();
  std::vector<std::int64_t> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b2 = gi(i, i).get_d() * static_cast<double>(max);
    auto b = static_cast<std::int64_t>(std::floor(std::sqrt(b2)));
    while (Rat(static_cast<long>((b + 1) * (b + 1))) <= gi(i, i) * static_cast<unsigned long>(max)) ++b;
    while (b > 0 && Rat(static_cast<long>(b * b)) > gi(i, i) * static_cast<unsigned long>(max)) --b;
    bound[i] = b;
  }
  std::vector<std::uint64_t> counts(max + 1, 0);
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
  while (true) {
    Rat norm(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) norm += l.gram()(i, j) * static_cast<long>(x[i] * x[j]);
    if (norm <= static_cast<unsigned long>(max) && norm.get_den() == 1) ++counts[norm.get_num().get_ui()];
    std::size_t i = 0;
    while (i < n && x[i] == bound[i]) x[i] = -bound[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return counts;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix u(n, IntRow(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (std::size_t step = 0; step < 3 * n; ++step) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      for (auto& v : u[a]) v = -v;
      continue;
    }
    const int s = sign(rng) ? 1 : -1;
    for (std::size_t j = 0; j < n; ++j) u[a][j] += s * u[b][j];
  }
  return u;
}

void properties(Context& ctx) {
  // Sample of shells for the design-side properties.
  std::vector<std::pair<std::string, unsigned>> sample;
  for (const auto& name : reference::nine_lattices())
    for (unsigned m = 1; m <= 4; ++m) sample.emplace_back(name, m);
  for (unsigned m = 1; m <= 6; ++m) sample.emplace_back("Z4", m);
  sample.emplace_back("E8", 2);
  sample.emplace_back("E8", 4);

  ctx.group(9, "properties", "", "antipodality", [&] {
    std::size_t shells = 0, bad = 0;
    for (const auto& [name, m] : sample) {
      if (shell_size(*ctx.lattice(name), Rat(m), ctx.eo()) > quick_shell_limit) continue;
      ctx.shell(name, m);
    }
    for (const auto& r : ctx.seen()) {
      ++shells;
      bad += !r.antipodal;
    }
    ctx.emit("every enumerated shell is antipodal", "0 exceptions", num(bad) + " exceptions", bad == 0, "derived",
             num(shells) + " shells");
  });

  ctx.group(9, "properties", "", "odd moments", [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& [name, m] : sample) {
      auto x = ctx.shell(name, m);
      if (x->empty() || x->size() > 10000) continue;
      for (unsigned k : {1u, 3u, 5u}) {
        ++checked;
        bad += !tensor_check(*x, k, ctx.options().workers).holds;
      }
    }
    ctx.emit("odd moment tensors vanish", "0 exceptions", num(bad) + " exceptions", bad == 0, "derived",
             num(checked) + " tensors of degree 1, 3, 5");
  });

  ctx.group(9, "properties", "", "tensor and screen", [&] {
    std::size_t checked = 0, disagree = 0, non_monotone = 0;
    for (const auto& [name, m] : sample) {
      auto x = ctx.shell(name, m);
      if (x->empty() || x->size() > 10000) continue;
      for (unsigned k : {2u, 4u, 6u}) {
        ++checked;
        const bool exact = tensor_check(*x, k, ctx.options().workers).holds;
        const bool screen = screen_check(*x, k, 200, ctx.options().seed, ctx.options().workers).holds;
        disagree += exact != screen;
      }
      if (x->size() <= 2000) {
        bool prev = true;
        for (unsigned t = 1; t <= 7; ++t) {
          const bool d = is_t_design(*x, t, ctx.design(DesignMode::Exact));
          non_monotone += d && !prev;
          prev = d;
        }
      }
    }
    ctx.emit("tensor and random screen verdicts agree", "0 exceptions", num(disagree) + " exceptions",
             disagree == 0, "derived", num(checked) + " even-degree comparisons");
    ctx.emit("strength is monotone in t", "0 exceptions", num(non_monotone) + " exceptions", non_monotone == 0);
  });

  ctx.group(9, "properties", "", "basis independence", [&] {
    std::mt19937_64 rng(ctx.options().seed);
    std::size_t bad = 0;
    std::vector<std::string> names(reference::nine_lattices());
    names.insert(names.end(), {"Z4", "E8", "D4"});
    for (const auto& name : names) {
      const Lattice& l = *ctx.lattice(name);
      const std::size_t order = l.dim() > 16 ? 3 : 4;
      const Lattice moved = change_basis(l, random_unimodular(l.dim(), rng));
      bad += theta_prefix(moved, order, ctx.eo()).counts != theta_prefix(l, order, ctx.eo()).counts;
    }
    ctx.emit("shell counts after a random unimodular change of basis", "0 exceptions", num(bad) + " exceptions",
             bad == 0, "derived", num(names.size()) + " lattices");
  });

  ctx.group(9, "properties", "", "parallel determinism", [&] {
    const int many = std::max(2, resolve_workers(ctx.options().workers));
    std::size_t bad = 0;
    for (const auto& [name, m] : std::vector<std::pair<std::string, unsigned>>{
             {"L1623", 3}, {"O23", 3}, {"Z7", 12}, {"E8", 4}}) {
      EnumerationOptions one = ctx.eo(), par = ctx.eo(), serial = ctx.eo();
      one.workers = 1;
      par.workers = many;
      serial.use_serial_reference = true;
      const Lattice& l = *ctx.lattice(name);
      const auto a = enumerate_shell(l, Rat(m), one).data();
      bad += a != enumerate_shell(l, Rat(m), par).data();
      bad += a != enumerate_shell(l, Rat(m), serial).data();
    }
    ctx.emit("shells are identical for 1 and " + std::to_string(many) + " workers and the serial path",
             "0 exceptions", num(bad) + " exceptions", bad == 0);

    Options inner = ctx.options();
    inner.scope = Scope::Quick;
    inner.criteria = {1, 2, 7, 8};
    inner.workers = 1;
    const std::string r1 = to_json(run_report(inner), false);
    inner.workers = many;
    const std::string rn = to_json(run_report(inner), false);
    ctx.emit("reports are identical for 1 and " + std::to_string(many) + " workers", "identical",
             r1 == rn ? "identical" : "different", r1 == rn, "derived", "criteria 1, 2, 7, 8 in quick scope");
  });

  ctx.group(9, "properties", "", "box oracle", [&] {
    std::size_t bad = 0;
    const std::vector<std::string> small{"Z1", "Z2", "Z3", "Z4", "A1", "A2", "A3", "A4", "D4", "O1"};
    for (const auto& name : small) {
      const Lattice& l = *ctx.lattice(name);
      bad += box_counts(l, 20) != theta_prefix(l, 20, ctx.eo()).counts;
    }
    ctx.emit("enumeration agrees with box search to norm 20", "0 exceptions", num(bad) + " exceptions", bad == 0,
             "derived", num(small.size()) + " lattices of dimension <= 4");
  });
}

}  // namespace

bool Report::ok() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok(); });
}

std::size_t Report::count(const std::string& status) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [&](const Item& i) { return i.status == status; }));
}

std::string criterion_title(int c) {
  switch (c) {
    case 1: return "theta prefixes";
    case 2: return "modular identities";
    case 3: return "configuration tables";
    case 4: return "design strength of norm-3 shells";
    case 5: return "classification replay";
    case 6: return "design and code bridge";
    case 7: return "Fano subsets of s3(Z7)";
    case 8: return "strength of Z7 and Z4 shells";
    case 9: return "property suites";
    default: return "unknown";
  }
}

std::string scope_name(Scope s) { return s == Scope::Quick ? "quick" : "full"; }

Scope parse_scope(const std::string& s) {
  if (s == "quick") return Scope::Quick;
  if (s == "full") return Scope::Full;
  throw std::invalid_argument("unknown scope " + s);
}

Report run_report(const Options& opts) {
  const auto t0 = Clock::now();
  Report r;
  r.scope = opts.scope;
  r.workers = resolve_workers(opts.workers);
  r.seed = opts.seed;
  Context ctx(opts, r);
  const std::vector<std::function<void(Context&)>> steps{
      theta_prefixes, identities, configurations, main_theorem, classification_replay,
      design_bridge,  fano,       spot_checks,    properties};
  for (int c = 1; c <= 9; ++c)
    if (ctx.wants(c)) steps[static_cast<std::size_t>(c - 1)](ctx);
  r.seconds = since(t0);
  return r;
}

std::string to_json(const Report& r, bool include_timing, int indent) {
  json j;
  j["schema_version"] = schema_version;
  j["scope"] = scope_name(r.scope);
  j["seed"] = r.seed;
  if (include_timing) j["run"] = {{"workers", r.workers}, {"seconds", r.seconds}};
  j["summary"] = {{"ok", r.ok()},
                  {"checks", r.items.size()},
                  {"pass", r.count("pass")},
                  {"misprint", r.count("misprint")},
                  {"skipped", r.count("skipped")},
                  {"fail", r.count("fail")},
                  {"error", r.count("error")},
                  {"resource_abort", r.count("resource-abort")}};
  json crit = json::array();
  for (int c = 1; c <= 9; ++c) {
    std::size_t n = 0, bad = 0;
    for (const auto& i : r.items)
      if (i.criterion == c) ++n, bad += !i.ok();
    if (n) crit.push_back({{"id", c}, {"title", criterion_title(c)}, {"checks", n}, {"failed", bad}, {"ok", bad == 0}});
  }
  j["criteria"] = crit;
  json items = json::array();
  for (const auto& i : r.items) {
    json e{{"criterion", i.criterion}, {"section", i.section}, {"lattice", i.lattice}, {"name", i.name},
           {"expected", i.expected},   {"observed", i.observed}, {"source", i.source},  {"status", i.status}};
    if (!i.note.empty()) e["note"] = i.note;
    if (include_timing) e["seconds"] = i.seconds;
    items.push_back(std::move(e));
  }
  j["items"] = items;
  return j.dump(indent);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "criterion,section,lattice,name,expected,observed,source,status,note\n";
  for (const auto& i : r.items)
    os << i.criterion << ',' << csv_field(i.section) << ',' << csv_field(i.lattice) << ',' << csv_field(i.name) << ','
       << csv_field(i.expected) << ',' << csv_field(i.observed) << ',' << i.source << ',' << i.status << ','
       << csv_field(i.note) << '\n';
  return os.str();
}

std::vector<std::string> validate_json(const std::string& text) {
  std::vector<std::string> problems;
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    return {std::string("not JSON: ") + e.what()};
  }
  auto need = [&](const json& obj, const std::string& key, auto pred, const std::string& what) {
    if (!obj.contains(key) || !pred(obj[key])) problems.push_back(what + ": missing or mistyped " + key);
  };
  const auto is_int = [](const json& v) { return v.is_number_integer(); };
  const auto is_str = [](const json& v) { return v.is_string(); };
  const auto is_bool = [](const json& v) { return v.is_boolean(); };
  const auto is_arr = [](const json& v) { return v.is_array(); };
  const auto is_obj = [](const json& v) { return v.is_object(); };
  if (!j.is_object()) return {"top level is not an object"};
  need(j, "schema_version", is_int, "report");
  if (j.contains("schema_version") && j["schema_version"] != schema_version) problems.push_back("unknown schema version");
  need(j, "scope", is_str, "report");
  need(j, "summary", is_obj, "report");
  need(j, "criteria", is_arr, "report");
  need(j, "items", is_arr, "report");
  if (!problems.empty()) return problems;
  need(j["summary"], "ok", is_bool, "summary");
  for (const char* k : {"checks", "pass", "fail", "error", "skipped", "misprint", "resource_abort"})
    need(j["summary"], k, is_int, "summary");
  static const std::set<std::string> statuses{"pass", "fail", "error", "resource-abort", "skipped", "misprint"};
  std::size_t index = 0;
  for (const auto& it : j["items"]) {
    const std::string where = "item " + std::to_string(index++);
    if (!it.is_object()) {
      problems.push_back(where + " is not an object");
      continue;
    }
    need(it, "criterion", is_int, where);
    for (const char* k : {"section", "lattice", "name", "expected", "observed", "source", "status"})
      need(it, k, is_str, where);
    if (it.contains("source") && it["source"].is_string() && it["source"] != "reference" && it["source"] != "derived")
      problems.push_back(where + ": unknown source");
    if (it.contains("status") && it["status"].is_string() && !statuses.count(it["status"].get<std::string>()))
      problems.push_back(where + ": unknown status");
  }
  return problems;
}

}  // namespace latdesign::report
