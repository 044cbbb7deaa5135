#include "latdesign/classification.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace latdesign::classification {
namespace {

std::string str(const Rat& r) { return to_string(r); }
std::string str(std::uint64_t v) { return std::to_string(v); }

Check check(std::string name, const Rat& expected, const Rat& observed) {
  return Check{std::move(name), str(expected), str(observed), expected == observed};
}

Check check_bool(std::string name, bool ok, std::string observed = "") {
  return Check{std::move(name), "true", observed.empty() ? (ok ? "true" : "false") : std::move(observed), ok};
}

bool all_ok(const std::vector<Check>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.ok; });
}

Rat size_rat(std::size_t s) { return Rat(static_cast<unsigned long>(s)); }

// Inner products against a fixed shell, in units of 1/den.
class Pairing {
 public:
  explicit Pairing(const ShellSet& x) : x_(x), y_(x.gram_products()), den_(x.denominator()) {}
  std::int64_t den() const { return den_; }
  const std::int64_t* left(std::size_t i) const { return y_.data() + i * x_.dim(); }
  static std::int64_t apply(const std::int64_t* yi, std::span<const std::int32_t> z) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < z.size(); ++c) s += yi[c] * z[c];
    return s;
  }
  std::int64_t scaled(const Rat& r) const {
    const Rat v = r * den_;
    if (!is_integer(v)) return std::numeric_limits<std::int64_t>::min();
    return to_int64(v);
  }

 private:
  const ShellSet& x_;
  std::vector<std::int64_t> y_;
  std::int64_t den_;
};

// Scaled G' v for a lattice vector, so that (v, z) = (Gv . z) / den.
std::vector<std::int64_t> scaled_gram_times(const ShellSet& x, std::span<const std::int64_t> v) {
  const std::size_t n = x.dim();
  const Mat& g = x.lattice().gram();
  const std::int64_t den = x.denominator();
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s(0);
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0) s += g(i, j) * static_cast<long>(v[j]);
    out[i] = to_int64(s * den);
  }
  return out;
}

std::vector<std::int64_t> widen(std::span<const std::int32_t> v) { return {v.begin(), v.end()}; }

void require_norm3_design(const ShellSet& x, const DesignOptions& opts) {
  if (x.norm() != 3) throw PreconditionError("expected the norm-3 shell");
  if (x.empty()) throw PreconditionError("norm-3 shell is empty");
  if (!is_t_design(x, 5, opts)) throw PreconditionError("norm-3 shell is not a spherical 5-design");
}

}  // namespace

// --- neighbor profiles ---

NeighborProfile neighbor_profile(const ShellSet& x, std::size_t x0) {
  if (x0 >= x.size()) throw std::out_of_range("x0 index out of range");
  const std::vector<std::int64_t> g = scaled_gram_times(x, widen(x.row(x0)));
  const std::int64_t den = x.denominator();
  NeighborProfile p;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::int64_t s = Pairing::apply(g.data(), x.row(j));
    if (s == 0) ++p.n0;
    else if (s == den) ++p.n1;
    else if (s == 2 * den) ++p.n2;
  }
  return p;
}

std::array<Rat, 3> ni_closed_forms(std::size_t n, std::size_t size) {
  const Rat nn(static_cast<unsigned long>(n));
  const Rat x = size_rat(size);
  const Rat q = nn * (nn + 2);
  return {(4 * nn * nn - 37 * nn + 153) / (4 * q) * x - 20, 3 * (4 * nn - 19) / (2 * q) * x + 15,
          3 * (25 - nn) / (8 * q) * x - 6};
}

NiReport check_ni_formulas(const ShellSet& x, const DesignOptions& opts) {
  require_norm3_design(x, opts);
  NiReport r;
  r.expected = ni_closed_forms(x.dim(), x.size());
  const Pairing pr(x);
  const std::int64_t den = pr.den();
  std::vector<NeighborProfile> profiles(x.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < x.size(); ++i) {
    NeighborProfile p;
    const std::int64_t* yi = pr.left(i);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const std::int64_t s = Pairing::apply(yi, x.row(j));
      if (s == 0) ++p.n0;
      else if (s == den) ++p.n1;
      else if (s == 2 * den) ++p.n2;
    }
    profiles[i] = p;
  }
  r.profile = profiles[0];
  for (const auto& p : profiles)
    if (Rat(static_cast<unsigned long>(p.n0)) != r.expected[0] || Rat(static_cast<unsigned long>(p.n1)) != r.expected[1] ||
        Rat(static_cast<unsigned long>(p.n2)) != r.expected[2])
      ++r.violations;
  r.checks.push_back(check("n0", r.expected[0], Rat(static_cast<unsigned long>(r.profile.n0))));
  r.checks.push_back(check("n1", r.expected[1], Rat(static_cast<unsigned long>(r.profile.n1))));
  r.checks.push_back(check("n2", r.expected[2], Rat(static_cast<unsigned long>(r.profile.n2))));
  r.checks.push_back(check("n0 + 2 n1 + 2 n2 + 2 = |X|", size_rat(x.size()),
                           Rat(static_cast<unsigned long>(r.profile.n0 + 2 * r.profile.n1 + 2 * r.profile.n2 + 2))));
  r.checks.push_back(check("rows violating the closed forms", Rat(0), size_rat(r.violations)));
  r.ok = all_ok(r.checks);
  return r;
}

// --- minimal vectors ---

MinVecProfile minvec_profile(const ShellSet& x, const LatticeVector& t) {
  if (t.coords.size() != x.dim()) throw DimensionError("minimal vector has wrong dimension");
  const std::vector<std::int64_t> g = scaled_gram_times(x, t.coords);
  const std::int64_t den = x.denominator();
  MinVecProfile p;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::int64_t s = Pairing::apply(g.data(), x.row(j));
    if (s == 0) ++p.p0;
    else if (s == den) ++p.p1;
    else if (s != -den) ++p.out_of_range;
  }
  return p;
}

PiReport check_pi_formulas(const Lattice& l, const DesignOptions& opts) {
  EnumerationOptions eo;
  eo.workers = opts.workers;
  const ShellSet x = enumerate_shell(l, Rat(3), eo);
  require_norm3_design(x, opts);
  const ShellSet s = minimal_shell(l, eo);
  PiReport r;
  r.min = s.norm();
  if (r.min >= 3) throw PreconditionError("minimum is at least 3; the minimal-vector formulas need min < 3");
  r.dim = l.dim();
  const Rat n(static_cast<unsigned long>(r.dim));
  const Rat xs = size_rat(x.size());
  r.expected_min = (n + 2) / 9;
  r.expected_p0 = 2 * (n - 1) / (3 * n) * xs;
  r.expected_p1 = (n + 2) / (6 * n) * xs;
  r.minimal_vectors = s.size();
  MinVecProfile first;
  std::uint64_t out_of_range = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const MinVecProfile p = minvec_profile(x, s.vector(i));
    if (i == 0) first = p;
    out_of_range += p.out_of_range;
    if (Rat(static_cast<unsigned long>(p.p0)) != r.expected_p0 || Rat(static_cast<unsigned long>(p.p1)) != r.expected_p1 ||
        p.out_of_range)
      ++r.violations;
  }
  r.checks.push_back(check("(t,t) = (n+2)/9", r.expected_min, r.min));
  r.checks.push_back(check("n = 9 min - 2", 9 * r.min - 2, n));
  r.checks.push_back(check("(x,t) outside {0,+-1}", Rat(0), Rat(static_cast<unsigned long>(out_of_range))));
  r.checks.push_back(check("p0", r.expected_p0, Rat(static_cast<unsigned long>(first.p0))));
  r.checks.push_back(check("p1", r.expected_p1, Rat(static_cast<unsigned long>(first.p1))));
  r.checks.push_back(check("p0 + 2 p1 = |X|", xs, Rat(static_cast<unsigned long>(first.p0 + 2 * first.p1))));
  r.checks.push_back(check("minimal vectors violating the closed forms", Rat(0), size_rat(r.violations)));
  r.ok = all_ok(r.checks);
  return r;
}

FormulaReport divisibility_and_s2(const Lattice& l, const DesignOptions& opts) {
  EnumerationOptions eo;
  eo.workers = opts.workers;
  const ShellSet x = enumerate_shell(l, Rat(3), eo);
  require_norm3_design(x, opts);
  if (minimum(l, eo) != 2) throw PreconditionError("expected a lattice of minimum 2");
  FormulaReport r;
  const std::uint64_t size = x.size();
  const Rat xs = size_rat(size);
  r.checks.push_back(check_bool("256 divides |X|", size % 256 == 0, str(size)));
  r.checks.push_back(check_bool("|X| >= 512", size >= 512, str(size)));
  const std::uint64_t s2 = shell_size(l, Rat(2), eo);
  r.checks.push_back(check("|s2| = |X|/16 - 32", xs / 16 - 32, Rat(static_cast<unsigned long>(s2))));
  r.checks.push_back(check("n = 16", Rat(16), Rat(static_cast<unsigned long>(l.dim()))));
  const NeighborProfile p = neighbor_profile(x, 0);
  r.checks.push_back(check("n0 = 65|X|/128 - 20", 65 * xs / 128 - 20, Rat(static_cast<unsigned long>(p.n0))));
  r.checks.push_back(check("n1 = 15|X|/64 + 15", 15 * xs / 64 + 15, Rat(static_cast<unsigned long>(p.n1))));
  r.checks.push_back(check("n2 = 3|X|/256 - 6", 3 * xs / 256 - 6, Rat(static_cast<unsigned long>(p.n2))));
  r.ok = all_ok(r.checks);
  return r;
}

// --- intersection numbers ---

std::optional<std::uint64_t> IntersectionTable::at(const Rat& alpha, const Rat& beta) const {
  for (const auto& e : entries)
    if (e.alpha == alpha && e.beta == beta) {
      if (!e.constant) return std::nullopt;
      return e.min;
    }
  return 0;
}

IntersectionTable intersection_numbers(const ShellSet& x, const Rat& gamma) {
  const std::size_t size = x.size();
  if (size > 20000) throw ResourceError("intersection numbers are limited to shells of at most 20000 vectors");
  const Pairing pr(x);
  const std::int64_t den = pr.den();
  const std::int64_t ms = to_int64(x.norm() * den);
  const std::int64_t g = pr.scaled(gamma);
  const std::size_t w = static_cast<std::size_t>(2 * ms + 1);
  if (ms > 30000) throw ResourceError("inner products too large for the pair table");

  std::vector<std::int16_t> ip(size * size);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < size; ++i) {
    const std::int64_t* yi = pr.left(i);
    for (std::size_t j = 0; j < size; ++j) ip[i * size + j] = static_cast<std::int16_t>(Pairing::apply(yi, x.row(j)));
  }

  IntersectionTable t;
  t.gamma = gamma;
  const std::size_t cells = w * w;
  std::vector<std::uint64_t> lo(cells, std::numeric_limits<std::uint64_t>::max()), hi(cells, 0);
  std::uint64_t pairs = 0;
#pragma omp parallel
  {
    std::vector<std::uint64_t> llo(cells, std::numeric_limits<std::uint64_t>::max()), lhi(cells, 0), h(cells);
    std::uint64_t lp = 0;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::size_t a = 0; a < size; ++a) {
      const std::int16_t* ra = ip.data() + a * size;
      for (std::size_t b = 0; b < size; ++b) {
        if (b == a || ra[b] != g) continue;
        ++lp;
        std::fill(h.begin(), h.end(), 0);
        const std::int16_t* rb = ip.data() + b * size;
        for (std::size_t z = 0; z < size; ++z) ++h[static_cast<std::size_t>(ra[z] + ms) * w + static_cast<std::size_t>(rb[z] + ms)];
        for (std::size_t c = 0; c < cells; ++c) {
          llo[c] = std::min(llo[c], h[c]);
          lhi[c] = std::max(lhi[c], h[c]);
        }
      }
    }
#pragma omp critical
    {
      pairs += lp;
      for (std::size_t c = 0; c < cells; ++c) {
        lo[c] = std::min(lo[c], llo[c]);
        hi[c] = std::max(hi[c], lhi[c]);
      }
    }
  }
  if (pairs == 0) throw PreconditionError("no pair realizes inner product " + to_string(gamma));
  t.pairs = pairs;
  for (std::size_t c = 0; c < cells; ++c) {
    if (hi[c] == 0) continue;
    IntersectionEntry e;
    e.alpha = Rat(static_cast<long>(static_cast<std::int64_t>(c / w) - ms)) / den;
    e.beta = Rat(static_cast<long>(static_cast<std::int64_t>(c % w) - ms)) / den;
    e.min = lo[c];
    e.max = hi[c];
    e.constant = lo[c] == hi[c];
    t.entries.push_back(e);
  }
  return t;
}

std::array<Rat, 5> p2_closed_forms(std::size_t size) {
  const Rat x = size_rat(size);
  return {x / 256 - 4, x / 128 - 3, 9 * x / 64 + 16, 11 * x / 128 + 2, 43 * x / 128 - 24};
}

FormulaReport check_p2_closed_forms(const ShellSet& x) {
  if (x.norm() != 3) throw PreconditionError("expected the norm-3 shell");
  FormulaReport r;
  const IntersectionTable t = intersection_numbers(x, Rat(2));
  bool constant = true, symmetric = true, band = true;
  for (const auto& e : t.entries) {
    constant = constant && e.constant;
    const auto mirror = t.at(e.beta, e.alpha);
    symmetric = symmetric && e.constant && mirror && *mirror == e.min;
    if (abs(e.alpha - e.beta) > 1) band = false;
  }
  r.checks.push_back(check_bool("pair-independent counts", constant));
  r.checks.push_back(check_bool("P2(a,b) = P2(b,a)", symmetric));
  r.checks.push_back(check_bool("P2(a,b) = 0 for |a-b| > 1", band));
  const auto forms = p2_closed_forms(x.size());
  const std::array<std::pair<int, int>, 5> cells{{{2, 2}, {1, 2}, {1, 1}, {0, 1}, {0, 0}}};
  std::array<Rat, 5> a;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto v = t.at(Rat(cells[i].first), Rat(cells[i].second));
    a[i] = v ? Rat(static_cast<unsigned long>(*v)) : Rat(-1);
    r.checks.push_back(check("a" + std::to_string(i + 1) + " = P2(" + std::to_string(cells[i].first) + "," +
                                 std::to_string(cells[i].second) + ")",
                             forms[i], a[i]));
  }
  const auto p33 = t.at(Rat(3), Rat(3));
  const auto p23 = t.at(Rat(2), Rat(3));
  r.checks.push_back(check("P2(3,3)", Rat(0), p33 ? Rat(static_cast<unsigned long>(*p33)) : Rat(-1)));
  r.checks.push_back(check("P2(2,3)", Rat(1), p23 ? Rat(static_cast<unsigned long>(*p23)) : Rat(-1)));
  const NeighborProfile p = neighbor_profile(x, 0);
  r.checks.push_back(check("n0 = 2 a4 + a5", Rat(static_cast<unsigned long>(p.n0)), 2 * a[3] + a[4]));
  r.checks.push_back(check("n1 = a2 + a3 + a4", Rat(static_cast<unsigned long>(p.n1)), a[1] + a[2] + a[3]));
  r.checks.push_back(check("n2 = 1 + a1 + a2", Rat(static_cast<unsigned long>(p.n2)), 1 + a[0] + a[1]));
  r.ok = all_ok(r.checks);
  return r;
}

// --- norm-2 shell ---

S2Report s2_neighbor_counts(const Lattice& l) {
  if (minimum(l) != 2) throw PreconditionError("expected a lattice of minimum 2");
  const ShellSet x = enumerate_shell(l, Rat(3));
  const ShellSet s2 = enumerate_shell(l, Rat(2));
  S2Report r;
  const Rat xs = size_rat(x.size());
  r.expected_ip1 = xs / 128 - 8;
  r.printed_ip0 = xs / 64 - 18;
  r.corrected_ip0 = 3 * xs / 64 - 18;

  const Pairing p2(s2);
  const std::int64_t den = p2.den();
  bool constant = true;
  std::uint64_t p1_first = 0;
  bool p1_constant = true;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    std::uint64_t c1 = 0, c0 = 0, p1 = 0;
    const std::int64_t* yi = p2.left(i);
    for (std::size_t j = 0; j < s2.size(); ++j) {
      const std::int64_t s = Pairing::apply(yi, s2.row(j));
      c1 += s == den;
      c0 += s == 0;
    }
    for (std::size_t j = 0; j < x.size(); ++j) p1 += Pairing::apply(yi, x.row(j)) == den;
    if (i == 0) {
      r.ip1 = c1;
      r.ip0 = c0;
      p1_first = p1;
    } else {
      constant = constant && c1 == r.ip1 && c0 == r.ip0;
      p1_constant = p1_constant && p1 == p1_first;
    }
  }
  r.printed_ip0_holds = Rat(static_cast<unsigned long>(r.ip0)) == r.printed_ip0;
  r.checks.push_back(check_bool("root neighbor counts independent of y0", constant));
  r.checks.push_back(check("roots at ip 1 = |X|/128 - 8", r.expected_ip1, Rat(static_cast<unsigned long>(r.ip1))));
  r.checks.push_back(check("roots at ip 0 = |s2| - 2 - 2 ip1 = 3|X|/64 - 18", r.corrected_ip0,
                           Rat(static_cast<unsigned long>(r.ip0))));

  // x0 side: roots at ip 1 against shell vectors at ip 2.
  const Pairing px(x);
  std::size_t m1_violations = 0;
  const Rat n2_form = 3 * xs / 256 - 6;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t* yi = px.left(i);
    std::uint64_t roots = 0, twos = 0;
    for (std::size_t j = 0; j < s2.size(); ++j) roots += Pairing::apply(yi, s2.row(j)) == px.den();
    for (std::size_t j = 0; j < x.size(); ++j) twos += Pairing::apply(yi, x.row(j)) == 2 * px.den();
    if (roots != twos || Rat(static_cast<unsigned long>(roots)) != n2_form) ++m1_violations;
  }
  r.checks.push_back(check("x0 with #{y: (x0,y)=1} != n2", Rat(0), size_rat(m1_violations)));
  r.checks.push_back(check_bool("p1 independent of y0", p1_constant));
  r.checks.push_back(check("n2 |X| = p1 |s2|", n2_form * xs,
                           Rat(static_cast<unsigned long>(p1_first)) * size_rat(s2.size())));
  r.ok = all_ok(r.checks);
  return r;
}

// --- root systems ---

std::uint64_t RootType::roots() const {
  switch (family) {
    case 'A': return std::uint64_t{rank} * (rank + 1);
    case 'D': return 2 * std::uint64_t{rank} * (rank - 1);
    default: return rank == 6 ? 72 : rank == 7 ? 126 : 240;
  }
}

std::uint64_t RootType::neighbors() const {
  // 2h - 4 with h the Coxeter number.
  switch (family) {
    case 'A': return 2 * (std::uint64_t{rank} - 1);
    case 'D': return 4 * (std::uint64_t{rank} - 2);
    default: return rank == 6 ? 20 : rank == 7 ? 32 : 56;
  }
}

std::string RootType::name() const { return std::string(1, family) + std::to_string(rank); }

std::vector<RootType> irreducible_types(unsigned max_rank) {
  std::vector<RootType> out;
  for (unsigned n = 1; n <= max_rank; ++n) out.push_back({'A', n});
  for (unsigned n = 4; n <= max_rank; ++n) out.push_back({'D', n});
  for (unsigned n = 6; n <= std::min(8u, max_rank); ++n) out.push_back({'E', n});
  return out;
}

std::string system_name(std::vector<RootType> types) {
  std::sort(types.begin(), types.end());
  std::string out;
  for (std::size_t i = 0; i < types.size();) {
    std::size_t j = i;
    while (j < types.size() && types[j] == types[i]) ++j;
    if (!out.empty()) out += " + ";
    if (j - i == 1) out += types[i].name();
    else out += "(" + types[i].name() + ")^" + std::to_string(j - i);
    i = j;
  }
  return out.empty() ? "empty" : out;
}

std::string RootDecomposition::name() const {
  std::vector<RootType> t;
  for (const auto& c : components) t.push_back(c.type);
  return system_name(t);
}

RootDecomposition root_decompose(const ShellSet& s2) {
  if (s2.norm() != 2) throw PreconditionError("root decomposition needs the norm-2 shell");
  const std::size_t size = s2.size();
  const Pairing pr(s2);
  std::vector<std::size_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < size; ++i) {
    const std::int64_t* yi = pr.left(i);
    for (std::size_t j = i + 1; j < size; ++j)
      if (Pairing::apply(yi, s2.row(j)) != 0) parent[find(i)] = find(j);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < size; ++i) groups[find(i)].push_back(i);

  RootDecomposition out;
  for (auto& [root, members] : groups) {
    Mat m(members.size(), s2.dim());
    for (std::size_t r = 0; r < members.size(); ++r)
      for (std::size_t c = 0; c < s2.dim(); ++c) m(r, c) = static_cast<long>(s2.row(members[r])[c]);
    const unsigned rank = static_cast<unsigned>(m.rank());
    const std::int64_t* y0 = pr.left(members.front());
    std::uint64_t nb = 0;
    for (auto j : members) nb += Pairing::apply(y0, s2.row(j)) == pr.den();
    std::optional<RootType> match;
    for (const auto& t : irreducible_types(rank))
      if (t.rank == rank && t.roots() == members.size() && t.neighbors() == nb) match = t;
    if (!match)
      throw PreconditionError("component with " + std::to_string(members.size()) + " vectors of rank " +
                              std::to_string(rank) + " is not an irreducible root system");
    out.components.push_back({*match, members});
    out.total_rank += rank;
    out.total_roots += members.size();
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const RootComponent& a, const RootComponent& b) {
              return a.type != b.type ? a.type < b.type : a.members.front() < b.members.front();
            });
  return out;
}

AdmissibleSearch enumerate_admissible_root_systems(unsigned rank) {
  const std::vector<RootType> types = irreducible_types(rank);
  AdmissibleSearch out;
  std::vector<RootType> current;
  auto visit = [&](auto&& self, std::size_t start, unsigned left) -> void {
    if (left == 0) {
      ++out.unions;
      std::uint64_t roots = 0;
      for (const auto& t : current) roots += t.roots();
      const std::uint64_t size = 16 * (roots + 32);  // inverts |s2| = |X|/16 - 32
      if (size % 256 != 0 || size < 512) {
        ++out.rejected_divisibility;
        return;
      }
      const std::uint64_t need = size / 128 - 8;
      for (const auto& t : current)
        if (t.neighbors() != need) {
          ++out.rejected_neighbors;
          return;
        }
      out.cases.push_back({current, system_name(current), size, 3 * size / 256 - 6});
      return;
    }
    for (std::size_t i = start; i < types.size(); ++i) {
      if (types[i].rank > left) continue;
      current.push_back(types[i]);
      self(self, i, left - types[i].rank);
      current.pop_back();
    }
  };
  visit(visit, 0, rank);
  std::sort(out.cases.begin(), out.cases.end(),
            [](const AdmissibleCase& a, const AdmissibleCase& b) { return a.system.front() < b.system.front(); });
  return out;
}

// --- m1' ---

std::optional<std::uint64_t> m1_prime_formula(const RootType& type, unsigned d) {
  const std::uint64_t n = type.rank;
  if (type.family == 'A') {
    if (d >= n) return std::nullopt;
    return (n - d) * (d + 1);
  }
  if (type.family == 'D') {
    if (d == 1) return n * (n - 1) / 2;
    if (d == 2) return 2 * (n - 1);
    return std::nullopt;
  }
  if (type.rank == 8) {
    if (d == 2) return 46;
    if (d == 1) return 60;
  }
  return std::nullopt;
}

std::set<std::uint64_t> m1_prime_values(const RootType& type) {
  if (type.family == 'E' && type.rank != 8) throw PreconditionError("m1' closed forms cover A_n, D_n and E8 only");
  std::set<std::uint64_t> v{0};
  for (unsigned d = 0; d <= type.rank; ++d)
    if (auto m = m1_prime_formula(type, d)) v.insert(*m);
  return v;
}

ModelM1 enumerate_m1_prime(const RootType& type) {
  if (type.family == 'E' && type.rank != 8) throw PreconditionError("model enumeration covers A_n, D_n and E8 only");
  const std::size_t n = type.rank;
  const std::size_t amb = type.family == 'A' ? n + 1 : (type.family == 'D' ? n : 8);
  // Roots with doubled coordinates.
  std::vector<std::vector<int>> roots;
  for (std::size_t i = 0; i < amb; ++i)
    for (std::size_t j = i + 1; j < amb; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          if (type.family == 'A' && si == sj) continue;
          std::vector<int> r(amb, 0);
          r[i] = 2 * si;
          r[j] = 2 * sj;
          roots.push_back(r);
        }
  if (type.family == 'E')
    for (unsigned mask = 0; mask < 256; ++mask)
      if (__builtin_popcount(mask) % 2 == 0) {
        std::vector<int> r(8);
        for (int c = 0; c < 8; ++c) r[c] = (mask >> c) & 1 ? -1 : 1;
        roots.push_back(r);
      }

  ModelM1 out;
  std::vector<int> f(amb, 0);  // doubled functional
  const std::vector<int> choices = type.family == 'A' ? std::vector<int>{-2, 0, 2} : std::vector<int>{-2, -1, 0, 1, 2};
  auto pair_ok = [&](std::size_t i, std::size_t j) {
    if (type.family == 'A') return std::abs(f[i] - f[j]) <= 2;
    const int p = f[i] + f[j], q = f[i] - f[j];
    return (p == 0 || std::abs(p) == 2) && (q == 0 || std::abs(q) == 2);
  };
  auto leaf = [&]() {
    std::uint64_t count = 0;
    bool zero = true;
    for (const auto& r : roots) {
      int s = 0;
      for (std::size_t c = 0; c < amb; ++c) s += f[c] * r[c];
      if (s != 0 && std::abs(s) != 4) return;  // value not in {0, +-1}
      count += s == 4;
      zero = zero && s == 0;
    }
    if (zero) return;
    ++out.functionals;
    out.values.insert(count);
    unsigned d = 0;
    if (type.family == 'A') {
      std::size_t a = amb, b = amb;
      for (std::size_t i = 0; i < amb && a == amb; ++i)
        for (std::size_t j = 0; j < amb; ++j)
          if (f[i] - f[j] == 2) {
            a = i;
            b = j;
            break;
          }
      for (std::size_t i = 0; i < amb; ++i)
        if (i != a && i != b && f[a] - f[i] == 2) ++d;
    } else {
      for (int v : f) d = std::max(d, static_cast<unsigned>(std::abs(v)));
    }
    const auto m = m1_prime_formula(type, d);
    if (!m || *m != count) ++out.formula_failures;
  };
  auto visit = [&](auto&& self, std::size_t pos) -> void {
    if (pos == amb) {
      leaf();
      return;
    }
    for (int v : choices) {
      if (type.family == 'A' && pos == 0 && v != 0) continue;  // modulo the all-ones direction
      f[pos] = v;
      bool ok = true;
      for (std::size_t i = 0; i < pos && ok; ++i) ok = pair_ok(i, pos);
      if (ok) self(self, pos + 1);
    }
    f[pos] = 0;
  };
  visit(visit, 0);
  return out;
}

M1Observation m1_prime(const ShellSet& s2, const RootComponent& comp, std::span<const std::int32_t> x0) {
  if (x0.size() != s2.dim()) throw DimensionError("x0 has wrong dimension");
  const std::vector<std::int64_t> g = scaled_gram_times(s2, widen(x0));
  const std::int64_t den = s2.denominator();
  M1Observation o;
  for (auto j : comp.members) {
    const std::int64_t s = Pairing::apply(g.data(), s2.row(j));
    if (s == den) ++o.count;
    else if (s != 0 && s != -den) o.ips_in_range = false;
  }
  const auto allowed = m1_prime_values(comp.type);
  o.allowed = o.ips_in_range && allowed.count(o.count) > 0;
  std::vector<unsigned> ds;
  for (unsigned d = 0; d <= comp.type.rank; ++d)
    if (auto m = m1_prime_formula(comp.type, d); m && *m == o.count) ds.push_back(d);
  if (ds.size() == 1) o.d = ds.front();
  return o;
}

EliminationReport eliminate_cases() {
  EliminationReport out;
  for (const auto& c : enumerate_admissible_root_systems(16).cases) {
    EliminationCase e;
    e.name = c.name;
    e.size = c.size;
    e.n2 = c.n2;
    // Reachable sums over components, with one choice per component.
    std::map<std::uint64_t, std::vector<std::uint64_t>> reach{{0, {}}};
    bool all_even = true;
    for (const auto& t : c.system) {
      const auto vals = m1_prime_values(t);
      e.values.insert(vals.begin(), vals.end());
      for (auto v : vals) all_even = all_even && v % 2 == 0;
      std::map<std::uint64_t, std::vector<std::uint64_t>> next;
      for (const auto& [sum, parts] : reach)
        for (auto v : vals) {
          if (sum + v > e.n2 || next.count(sum + v)) continue;
          auto p = parts;
          if (v) p.push_back(v);
          next[sum + v] = std::move(p);
        }
      reach = std::move(next);
    }
    e.parity_argument = all_even && e.n2 % 2 == 1;
    auto hit = reach.find(e.n2);
    e.representable = hit != reach.end();
    if (e.representable) {
      e.witness = hit->second;
      std::sort(e.witness.rbegin(), e.witness.rend());
      e.reason = "n2 = ";
      for (std::size_t i = 0; i < e.witness.size(); ++i) e.reason += (i ? " + " : "") + std::to_string(e.witness[i]);
      out.survivors.push_back(e.name);
    } else if (e.parity_argument) {
      e.reason = "every m1' value is even but n2 = " + std::to_string(e.n2) + " is odd";
    } else {
      e.reason = "n2 = " + std::to_string(e.n2) + " is not a sum of m1' values";
    }
    out.cases.push_back(std::move(e));
  }
  return out;
}

LatticeClassification classify(const Lattice& l, const DesignOptions& opts) {
  LatticeClassification out;
  out.lattice = l.label();
  out.dim = l.dim();
  EnumerationOptions eo;
  eo.workers = opts.workers;
  out.min = minimum(l, eo);
  const ShellSet x = enumerate_shell(l, Rat(3), eo);
  out.shell_size = x.size();
  if (x.empty() || !is_t_design(x, 5, opts)) {
    out.notes.push_back("the norm-3 shell is not a spherical 5-design");
    return out;
  }
  bool ok = true;
  out.ni = check_ni_formulas(x, opts);
  ok = ok && out.ni->ok;
  if (out.min < 3) {
    out.pi = check_pi_formulas(l, opts);
    ok = ok && out.pi->ok;
  } else {
    out.notes.push_back("minimum 3: the minimal-vector formulas do not apply");
  }
  if (out.min == 2) {
    out.divisibility = divisibility_and_s2(l, opts);
    out.p2 = check_p2_closed_forms(x);
    out.s2 = s2_neighbor_counts(l);
    if (!out.s2->printed_ip0_holds)
      out.notes.push_back("roots at ip 0: the printed form |X|/64 - 18 gives " + to_string(out.s2->printed_ip0) +
                          ", observed " + std::to_string(out.s2->ip0));
    const ShellSet s2 = enumerate_shell(l, Rat(2), eo);
    out.roots = root_decompose(s2);
    FormulaReport m1;
    const std::uint64_t n2 = 3 * x.size() / 256 - 6;
    std::size_t bad_sum = 0, bad_value = 0;
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::uint64_t sum = 0;
      for (const auto& comp : out.roots->components) {
        const M1Observation o = m1_prime(s2, comp, x.row(i));
        sum += o.count;
        seen.insert(o.count);
        bad_value += !o.allowed;
      }
      bad_sum += sum != n2;
    }
    std::string vals;
    for (auto v : seen) vals += (vals.empty() ? "" : ",") + std::to_string(v);
    m1.checks.push_back(check("x0 whose component m1' do not sum to n2", Rat(0), size_rat(bad_sum)));
    m1.checks.push_back(Check{"observed m1' values within the closed forms", "true", "{" + vals + "}", bad_value == 0});
    m1.ok = all_ok(m1.checks);
    out.m1 = m1;
    ok = ok && out.divisibility->ok && out.p2->ok && out.s2->ok && out.m1->ok;
  }
  out.ok = ok;
  return out;
}

}  // namespace latdesign::classification
