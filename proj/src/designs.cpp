#include "latdesign/designs.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "latdesign/catalog.hpp"
#include "latdesign/classification.hpp"

namespace latdesign::designs {

IncidenceMatrix IncidenceMatrix::from_blocks(std::size_t v, const std::vector<std::vector<int>>& blocks) {
  IncidenceMatrix m;
  m.v = v;
  for (const auto& b : blocks) {
    std::vector<std::uint8_t> row(v, 0);
    for (int p : b) {
      if (p < 0 || static_cast<std::size_t>(p) >= v) throw std::out_of_range("block point out of range");
      row[static_cast<std::size_t>(p)] = 1;
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<std::vector<int>> IncidenceMatrix::block_list() const {
  std::vector<std::vector<int>> out;
  for (const auto& r : rows) {
    std::vector<int> b;
    for (std::size_t p = 0; p < r.size(); ++p)
      if (r[p]) b.push_back(static_cast<int>(p));
    out.push_back(std::move(b));
  }
  return out;
}

IncidenceMatrix printed_design() {
  static const char* rows[16] = {
      "1100000010101010", "1100000001010101", "1010101011000000", "1010010100110000",
      "1001100100001100", "1001011000000011", "0110100100000011", "0110011000001100",
      "0101101000110000", "0101010111000000", "0011000010100101", "0011000001011010",
      "0000110010011001", "0000110001100110", "0000001110010110", "0000001101101001",
  };
  IncidenceMatrix m;
  m.v = 16;
  for (const char* r : rows) {
    std::vector<std::uint8_t> row(16);
    for (std::size_t c = 0; c < 16; ++c) row[c] = r[c] == '1';
    m.rows.push_back(std::move(row));
  }
  return m;
}

// --- frames and classes ---

Frame detect_frame(const ShellSet& s2) {
  const auto dec = classification::root_decompose(s2);
  if (dec.name() != "(A1)^16")
    throw PreconditionError("frame detection needs s2 = (A1)^16, found " + dec.name());
  Frame f;
  for (const auto& comp : dec.components) {
    LatticeVector a = s2.vector(comp.members[0]);
    LatticeVector b = -a;
    f.roots.push_back(std::max(a, b));
  }
  std::sort(f.roots.begin(), f.roots.end());
  return f;
}

Frame standard_frame(const Lattice& l) {
  if (l.dim() != 16 || !l.has_basis() || l.ambient_dim() != 16 || l.ambient_scale() != 1)
    throw PreconditionError("standard frame needs a 16-dim lattice in orthonormal coordinates");
  Frame f;
  for (int i = 0; i < 8; ++i)
    for (int s : {1, -1}) {
      AmbientVector v(16, Rat(0));
      v[2 * i] = 1;
      v[2 * i + 1] = s;
      auto c = l.coordinates_of(v);
      if (!c) throw PreconditionError("frame root is not in the lattice");
      f.roots.push_back(*c);
    }
  return f;
}

std::vector<SignClass> sign_classes(const ShellSet& x, const Frame& frame) {
  const Lattice& l = x.lattice();
  const std::size_t n = x.dim();
  std::vector<std::vector<Rat>> gr;  // G r for each frame root
  for (const auto& r : frame.roots) {
    if (r.coords.size() != n) throw DimensionError("frame root has wrong dimension");
    if (l.norm(r) != 2) throw PreconditionError("frame vectors must have norm 2");
    std::vector<Rat> rv(n);
    for (std::size_t i = 0; i < n; ++i) rv[i] = static_cast<long>(r.coords[i]);
    gr.push_back(mul_row(rv, l.gram()));
  }
  std::map<std::vector<int>, SignClass> classes;
  std::map<std::vector<int>, std::set<std::vector<int>>> patterns;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto row = x.row(i);
    std::vector<int> support, sign;
    for (std::size_t k = 0; k < gr.size(); ++k) {
      Rat s(0);
      for (std::size_t c = 0; c < n; ++c)
        if (row[c]) s += gr[k][c] * static_cast<long>(row[c]);
      if (s == 0) continue;
      if (s != 1 && s != -1)
        throw PreconditionError("frame inner product " + to_string(s) + " outside {0, +-1}");
      support.push_back(static_cast<int>(k));
      sign.push_back(s > 0 ? 1 : -1);
    }
    auto& cls = classes[support];
    cls.support = support;
    cls.members.push_back(i);
    patterns[support].insert(sign);
  }
  std::vector<SignClass> out;
  for (auto& [support, cls] : classes) {
    const std::size_t full = std::size_t{1} << support.size();
    if (cls.members.size() != full || patterns[support].size() != full)
      throw PreconditionError("sign class is not closed under frame sign changes");
    out.push_back(std::move(cls));
  }
  return out;
}

IncidenceMatrix incidence_from_classes(const std::vector<SignClass>& classes, std::size_t v) {
  std::vector<std::vector<int>> blocks;
  for (const auto& c : classes) {
    if (!blocks.empty() && c.support.size() != blocks.front().size())
      throw PreconditionError("sign classes have different support sizes");
    blocks.push_back(c.support);
  }
  return IncidenceMatrix::from_blocks(v, blocks);
}

bool verify_design(const IncidenceMatrix& m, unsigned t, std::size_t v, std::size_t k, std::uint64_t lambda) {
  if (m.v != v || t > v) return false;
  for (const auto& r : m.rows) {
    if (r.size() != v) return false;
    if (static_cast<std::size_t>(std::count(r.begin(), r.end(), 1)) != k) return false;
  }
  std::vector<std::size_t> subset(t);
  for (std::size_t i = 0; i < t; ++i) subset[i] = i;
  while (true) {
    std::uint64_t hits = 0;
    for (const auto& r : m.rows) {
      bool all = true;
      for (auto p : subset) all = all && r[p];
      hits += all;
    }
    if (hits != lambda) return false;
    // next t-subset in lexicographic order
    std::size_t i = t;
    while (i > 0 && subset[i - 1] == v - t + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < t; ++j) subset[j] = subset[j - 1] + 1;
  }
  return true;
}

// --- codes ---

std::optional<std::size_t> BinaryCode::min_distance() const {
  for (std::size_t w = 1; w < weights.size(); ++w)
    if (weights[w]) return w;
  return std::nullopt;
}

std::string BinaryCode::params() const {
  const auto d = min_distance();
  return "[" + std::to_string(length) + ", " + std::to_string(dimension()) + ", " + (d ? std::to_string(*d) : "-") + "]";
}

BinaryCode code_from_incidence(const IncidenceMatrix& m) {
  if (m.v > 32) throw PreconditionError("codes are limited to length 32");
  BinaryCode c;
  c.length = m.v;
  std::vector<std::uint32_t> rows;
  for (const auto& r : m.rows) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < r.size(); ++p)
      if (r[p]) mask |= 1u << p;
    rows.push_back(mask);
  }
  // Gaussian elimination over GF(2), pivots from the highest bit down.
  for (int bit = static_cast<int>(m.v) - 1; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](std::uint32_t r) { return (r >> bit) & 1u; });
    if (it == rows.end()) continue;
    const std::uint32_t pivot = *it;
    rows.erase(it);
    for (auto& r : rows)
      if ((r >> bit) & 1u) r ^= pivot;
    for (auto& b : c.basis)
      if ((b >> bit) & 1u) b ^= pivot;
    c.basis.push_back(pivot);
  }
  if (c.basis.size() > 24) throw ResourceError("code dimension too large for exhaustive enumeration");
  c.weights.assign(m.v + 1, 0);
  const std::uint64_t words = std::uint64_t{1} << c.basis.size();
  std::uint32_t w = 0;
  for (std::uint64_t g = 0; g < words; ++g) {
    // Gray code walk: one basis vector changes per step.
    if (g) w ^= c.basis[static_cast<std::size_t>(std::countr_zero(g))];
    ++c.weights[static_cast<std::size_t>(std::popcount(w))];
  }
  return c;
}

std::vector<IncidenceMatrix> design_subsystems(const IncidenceMatrix& blocks, std::size_t count, std::uint64_t lambda,
                                               std::size_t limit) {
  const auto list = blocks.block_list();
  const std::size_t b = list.size();
  if (b == 0) return {};
  const std::size_t k = list.front().size();
  // In a symmetric design any two blocks meet in lambda points.
  std::vector<std::vector<bool>> adj(b, std::vector<bool>(b, false));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      if (i == j) continue;
      std::size_t meet = 0;
      for (std::size_t p = 0; p < blocks.v; ++p) meet += blocks.rows[i][p] && blocks.rows[j][p];
      adj[i][j] = meet == lambda;
    }
  std::vector<IncidenceMatrix> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (out.size() >= limit) return;
    if (chosen.size() == count) {
      IncidenceMatrix m;
      m.v = blocks.v;
      for (auto i : chosen) m.rows.push_back(blocks.rows[i]);
      if (verify_design(m, 2, blocks.v, k, lambda)) out.push_back(std::move(m));
      return;
    }
    for (std::size_t i = start; i < b; ++i) {
      if (b - i < count - chosen.size()) return;
      bool ok = true;
      for (auto j : chosen) ok = ok && adj[i][j];
      if (!ok) continue;
      chosen.push_back(i);
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

Lattice lattice_from_design(const IncidenceMatrix& m, const std::vector<std::vector<int>>& signs) {
  if (!verify_design(m, 2, 16, 6, 2)) throw PreconditionError("lattice_from_design needs a 2-(16,6,2) design");
  // r_j = image of sqrt2 e_j.
  std::vector<AmbientVector> r(16, AmbientVector(16, Rat(0)));
  for (int i = 0; i < 8; ++i) {
    r[2 * i][2 * i] = 1;
    r[2 * i][2 * i + 1] = 1;
    r[2 * i + 1][2 * i] = 1;
    r[2 * i + 1][2 * i + 1] = -1;
  }
  const Lattice& base = catalog::build("A1^16");
  std::vector<AmbientVector> glue;
  const auto blocks = m.block_list();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    AmbientVector g(16, Rat(0));
    for (std::size_t q = 0; q < blocks[b].size(); ++q) {
      const int sign = (b < signs.size() && q < signs[b].size()) ? signs[b][q] : 1;
      for (std::size_t c = 0; c < 16; ++c) g[c] += r[static_cast<std::size_t>(blocks[b][q])][c] * Rat(sign, 2);
    }
    glue.push_back(std::move(g));
  }
  return reduce_basis(sublattice_with_glue(base, glue)).lattice.with_label("design lattice");
}

// --- Fano subsets ---

std::vector<std::vector<std::int64_t>> fingerprint(const std::vector<std::vector<std::int64_t>>& gram) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < gram.size(); ++j)
      if (j != i) row.push_back(gram[i][j]);
    std::sort(row.begin(), row.end());
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const std::vector<std::vector<std::int64_t>>& o7_fingerprint() {
  static const auto fp = [] {
    const ShellSet s = enumerate_shell(catalog::build("O7"), Rat(3));
    const auto y = s.gram_products();
    const std::int64_t den = s.denominator();
    std::vector<std::vector<std::int64_t>> g(s.size(), std::vector<std::int64_t>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        std::int64_t v = 0;
        for (std::size_t c = 0; c < s.dim(); ++c) v += y[i * s.dim() + c] * s.row(j)[c];
        g[i][j] = v / den;
      }
    return fingerprint(g);
  }();
  return fp;
}

FanoSubset make_subset(const std::array<std::array<int, 3>, 7>& lines) {
  FanoSubset f;
  f.lines = lines;
  for (const auto& ln : lines)
    for (int mask = 0; mask < 8; ++mask) {
      Z7Vector v{};
      for (int q = 0; q < 3; ++q) v[static_cast<std::size_t>(ln[static_cast<std::size_t>(q)])] = (mask >> q) & 1 ? -1 : 1;
      f.vectors.push_back(v);
    }
  std::sort(f.vectors.begin(), f.vectors.end());
  std::vector<std::vector<std::int64_t>> g(f.vectors.size(), std::vector<std::int64_t>(f.vectors.size()));
  for (std::size_t i = 0; i < f.vectors.size(); ++i)
    for (std::size_t j = 0; j < f.vectors.size(); ++j) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < 7; ++c) s += f.vectors[i][c] * f.vectors[j][c];
      g[i][j] = s;
    }
  f.isometric = fingerprint(g) == o7_fingerprint();
  return f;
}

}  // namespace

std::vector<FanoSubset> fano_subsets() {
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) triples.push_back({a, b, c});
  auto meet = [&](std::size_t i, std::size_t j) {
    int m = 0;
    for (int p : triples[i])
      for (int q : triples[j]) m += p == q;
    return m;
  };
  std::vector<FanoSubset> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (chosen.size() == 7) {
      std::array<std::array<int, 3>, 7> lines;
      for (std::size_t i = 0; i < 7; ++i) lines[i] = triples[chosen[i]];
      out.push_back(make_subset(lines));
      return;
    }
    for (std::size_t i = start; i < triples.size(); ++i) {
      bool ok = true;
      for (auto j : chosen) ok = ok && meet(i, j) == 1;
      if (!ok) continue;
      chosen.push_back(i);
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

std::pair<FanoSubset, FanoSubset> cyclic_pair() {
  auto family = [](std::array<int, 3> base) {
    std::array<std::array<int, 3>, 7> lines;
    for (int s = 0; s < 7; ++s) {
      std::array<int, 3> ln;
      for (int q = 0; q < 3; ++q) ln[static_cast<std::size_t>(q)] = (base[static_cast<std::size_t>(q)] + s) % 7;
      std::sort(ln.begin(), ln.end());
      lines[static_cast<std::size_t>(s)] = ln;
    }
    std::sort(lines.begin(), lines.end());
    return make_subset(lines);
  };
  return {family({0, 1, 3}), family({0, 2, 3})};
}

bool disjoint(const FanoSubset& a, const FanoSubset& b) {
  std::vector<Z7Vector> common;
  std::set_intersection(a.vectors.begin(), a.vectors.end(), b.vectors.begin(), b.vectors.end(),
                        std::back_inserter(common));
  return common.empty();
}

DisjointFamily max_disjoint_family(const std::vector<FanoSubset>& subsets) {
  const std::size_t s = subsets.size();
  std::vector<std::vector<bool>> dis(s, std::vector<bool>(s, false));
  DisjointFamily out;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      if (disjoint(subsets[i], subsets[j])) {
        dis[i][j] = dis[j][i] = true;
        ++out.disjoint_pairs;
      }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      if (dis[i][j])
        for (std::size_t k = j + 1; k < s; ++k) out.disjoint_triples += dis[i][k] && dis[j][k];
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (chosen.size() > out.size) {
      out.size = chosen.size();
      out.witness = chosen;
    }
    for (std::size_t i = start; i < s; ++i) {
      bool ok = true;
      for (auto j : chosen) ok = ok && dis[i][j];
      if (!ok) continue;
      chosen.push_back(i);
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace latdesign::designs
