#include "latdesign/catalog.hpp"

#include <map>
#include <mutex>
#include <regex>

#include "latdesign/projection.hpp"

namespace latdesign::catalog {
namespace {

Mat rows_to_mat(const std::vector<std::vector<Rat>>& rows, std::size_t cols) { return Mat::from_rows(rows, cols); }

std::vector<Rat> unit_diff(std::size_t dim, std::size_t i, std::size_t j, int sign) {
  std::vector<Rat> r(dim, Rat(0));
  r[i] = 1;
  r[j] = sign;
  return r;
}

// A_n inside the sum-zero hyperplane of Z^{n+1}.
Lattice root_a(std::size_t n) {
  if (n == 0) throw UnknownNameError("A_n needs n >= 1");
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_diff(n + 1, i, i + 1, -1));
  return Lattice::from_basis(rows_to_mat(rows, n + 1), Rat(1), "A" + std::to_string(n));
}

// D_n on coordinates [offset, offset + n) of an ambient space of size dim.
std::vector<std::vector<Rat>> root_d_rows(std::size_t n, std::size_t offset, std::size_t dim) {
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i + 1 < n; ++i) rows.push_back(unit_diff(dim, offset + i, offset + i + 1, -1));
  rows.push_back(unit_diff(dim, offset + n - 2, offset + n - 1, 1));
  return rows;
}

Lattice root_d(std::size_t n) {
  if (n < 3) throw UnknownNameError("D_n needs n >= 3");
  return Lattice::from_basis(rows_to_mat(root_d_rows(n, 0, n), n), Rat(1), "D" + std::to_string(n));
}

Lattice integer_lattice(std::size_t n) {
  if (n == 0) throw UnknownNameError("Z_n needs n >= 1");
  return Lattice::from_basis(Mat::identity(n), Rat(1), "Z" + std::to_string(n));
}

Lattice e8() {
  const Lattice d8 = Lattice::from_basis(rows_to_mat(root_d_rows(8, 0, 8), 8));
  return sublattice_with_glue(d8, {AmbientVector(8, Rat(1, 2))}).with_label("E8");
}

LatticeVector coords_in(const Lattice& l, const AmbientVector& v) {
  auto c = l.coordinates_of(v);
  if (!c) throw std::logic_error("catalog vector is not in the lattice");
  return *c;
}

Lattice e7() {
  const Lattice& e = build("E8");
  const LatticeVector r = coords_in(e, unit_diff(8, 6, 7, -1));
  return orthogonal_complement(e, r).with_label("E7");
}

Lattice e6() {
  const Lattice& e = build("E8");
  const std::vector<LatticeVector> rs{coords_in(e, unit_diff(8, 6, 7, -1)), coords_in(e, unit_diff(8, 5, 6, -1))};
  return orthogonal_complement(e, rs).with_label("E6");
}

// Pairs {e_{2i-1} + e_{2i}, e_{2i-1} - e_{2i}} on 16 coordinates.
std::vector<std::vector<Rat>> a1_16_rows() {
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < 8; ++i) {
    rows.push_back(unit_diff(16, 2 * i, 2 * i + 1, 1));
    rows.push_back(unit_diff(16, 2 * i, 2 * i + 1, -1));
  }
  return rows;
}

std::vector<std::vector<Rat>> dk_blocks(std::size_t k) {
  std::vector<std::vector<Rat>> rows;
  for (std::size_t b = 0; b < 16 / k; ++b) {
    auto r = root_d_rows(k, b * k, 16);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

Lattice from_rows16(const std::vector<std::vector<Rat>>& rows, const std::string& label) {
  return Lattice::from_basis(hnf_basis(rows_to_mat(rows, 16), 16), Rat(1), label);
}

Lattice glued(const Lattice& base, std::initializer_list<int> fs, const std::string& label) {
  std::vector<AmbientVector> g;
  for (int i : fs) g.push_back(glue(i));
  return sublattice_with_glue(base, g).with_label(label);
}

Lattice sqrt2_a1_16() {
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < 16; ++i) {
    std::vector<Rat> r(16, Rat(0));
    r[i] = 2;
    rows.push_back(r);
  }
  return from_rows16(rows, "sqrt2A1^16");
}

Lattice leech() {
  // Vectors scaled by sqrt(8): generated by 2c (c in the Golay code),
  // 4(e_1 + e_i), 8 e_1 and (-3, 1^23); ambient scale 1/8.
  std::vector<std::vector<Rat>> rows;
  for (const auto& c : golay_generator()) {
    std::vector<Rat> r(24);
    for (std::size_t i = 0; i < 24; ++i) r[i] = 2 * c[i];
    rows.push_back(r);
  }
  for (std::size_t i = 1; i < 24; ++i) {
    std::vector<Rat> r(24, Rat(0));
    r[0] = 4;
    r[i] = 4;
    rows.push_back(r);
  }
  std::vector<Rat> r8(24, Rat(0));
  r8[0] = 8;
  rows.push_back(r8);
  std::vector<Rat> odd(24, Rat(1));
  odd[0] = -3;
  rows.push_back(odd);
  Lattice l = Lattice::from_basis(hnf_basis(rows_to_mat(rows, 24), 24), Rat(1, 8), "Leech");
  return reduce_basis(l).lattice;
}

Lattice projected(const std::string& source, const std::string& label) {
  const Lattice& l = build(source);
  const ShellSet s = enumerate_shell(l, Rat(4));
  return project_along_minimal(l, s.vector(0)).lattice.with_label(label);
}

Lattice o22() {
  const Lattice& o23 = build("O23");
  const ShellSet s = enumerate_shell(o23, Rat(3));
  return orthogonal_complement(o23, s.vector(0)).with_label("O22");
}

Lattice construct(const std::string& name) {
  static const std::regex zn(R"(Z(\d+))"), an(R"(A(\d+))"), dn(R"(D(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, zn)) return integer_lattice(std::stoul(m[1]));
  if (std::regex_match(name, m, an)) return root_a(std::stoul(m[1]));
  if (std::regex_match(name, m, dn)) return root_d(std::stoul(m[1]));
  if (name == "E8") return e8();
  if (name == "E7") return e7();
  if (name == "E6") return e6();
  if (name == "Lambda8") return rescale(build("E8"), Rat(2)).with_label("Lambda8");
  if (name == "Leech") return leech();
  if (name == "O1") return rescale(integer_lattice(1), Rat(3)).with_label("O1");
  if (name == "O7") return projected("Lambda8", "O7");
  if (name == "O23") return projected("Leech", "O23");
  if (name == "O22") return o22();
  if (name == "A1^16") return from_rows16(a1_16_rows(), "A1^16");
  if (name == "D4^4") return from_rows16(dk_blocks(4), "D4^4");
  if (name == "D8^2") return from_rows16(dk_blocks(8), "D8^2");
  if (name == "sqrt2A1^16") return sqrt2_a1_16();
  if (name == "O16") return glued(build("sqrt2A1^16"), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}, "O16");
  if (name == "L1621") return glued(build("A1^16"), {1, 2, 3, 4, 5, 6}, "L1621");
  if (name == "L1622") return glued(build("D4^4"), {1, 2, 3}, "L1622");
  if (name == "L1623") return glued(build("D8^2"), {1, 2}, "L1623");
  throw UnknownNameError("unknown catalog name: " + name);
}

std::recursive_mutex& cache_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<Lattice>>& cache() {
  static std::map<std::string, std::unique_ptr<Lattice>> c;
  return c;
}

}  // namespace

std::vector<std::string> names() {
  return {"Z7",    "Z4",  "O1",  "O7",  "O16", "O22",   "O23",   "L1621",  "L1622",      "L1623", "E6",
          "E7",    "E8",  "Lambda8", "Leech", "A1^16", "D4^4", "D8^2", "sqrt2A1^16"};
}

std::string canonical_name(const std::string& name) {
  static const std::regex paren(R"((Z|A|D)n\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, paren)) return m[1].str() + m[2].str();
  if (name == "(A1)^16") return "A1^16";
  if (name == "(D4)^4") return "D4^4";
  if (name == "(D8)^2") return "D8^2";
  if (name == "(sqrt2A1)^16" || name == "(√2A1)^16") return "sqrt2A1^16";
  return name;
}

const Lattice& build(const std::string& raw) {
  const std::string name = canonical_name(raw);
  std::lock_guard<std::recursive_mutex> lock(cache_mutex());
  auto it = cache().find(name);
  if (it != cache().end()) return *it->second;
  auto l = std::make_unique<Lattice>(reduce_basis(construct(name)).lattice);
  const Lattice& ref = *l;
  cache().emplace(name, std::move(l));
  return ref;
}

AmbientVector epsilon_sum(std::initializer_list<int> indices, std::size_t dim) {
  AmbientVector v(dim, Rat(0));
  for (int i : indices) {
    if (i < 1 || static_cast<std::size_t>(i) > dim) throw std::out_of_range("epsilon index out of range");
    v[static_cast<std::size_t>(i - 1)] += 1;
  }
  return v;
}

AmbientVector glue(int i) {
  AmbientVector v(16, Rat(0));
  switch (i) {
    case 1:
      for (int k = 0; k < 8; ++k) v[k] = Rat(1, 2);
      v[8] = 1;
      return v;
    case 2:
      v[0] = 1;
      for (int k = 8; k < 16; ++k) v[k] = Rat(1, 2);
      return v;
    case 3: return epsilon_sum({1, 5, 9, 13});
    case 4: return epsilon_sum({1, 3, 5, 7});
    case 5: return epsilon_sum({1, 3, 9, 11});
    case 6: return epsilon_sum({1, 3, 13, 15});
    default:
      if (i >= 7 && i <= 13) return epsilon_sum({1, 2, 2 * (i - 6) + 1, 2 * (i - 6) + 2});
      throw std::out_of_range("glue vector index must be in 1..13");
  }
}

std::vector<std::vector<int>> golay_generator() {
  // Cyclic [23,12] code with generator polynomial
  // 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11, extended by a parity bit.
  static const int poly[12] = {1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};
  std::vector<std::vector<int>> rows(12, std::vector<int>(24, 0));
  for (int r = 0; r < 12; ++r) {
    int parity = 0;
    for (int k = 0; k < 12; ++k) {
      rows[r][r + k] = poly[k];
      parity ^= poly[k];
    }
    rows[r][23] = parity;
  }
  return rows;
}

CosetCheck verify_coset_decomposition(const Lattice& big, const Lattice& small, const AmbientVector& shift) {
  CosetCheck c;
  c.contained = is_sublattice(small, big);
  if (!c.contained) throw PreconditionError("small lattice is not contained in big lattice");
  c.det_ratio = determinant(small) / determinant(big);
  c.shift_in_big = contains(big, shift);
  c.shift_in_small = contains(small, shift);
  if (c.det_ratio == 1)
    c.ok = c.shift_in_small;
  else if (c.det_ratio == 4)
    c.ok = c.shift_in_big && !c.shift_in_small;
  return c;
}

std::vector<Inclusion> containment_chain() {
  std::vector<Inclusion> out;
  auto add = [&](const std::string& s, const std::string& b, bool expected) {
    out.push_back({s, b, expected, is_sublattice(build(s), build(b))});
  };
  add("A1^16", "D4^4", true);
  add("D4^4", "D8^2", true);
  add("L1621", "L1622", true);
  add("L1622", "L1623", true);
  add("O16", "L1621", true);
  add("sqrt2A1^16", "A1^16", true);
  add("Z1", "O1", false);
  return out;
}

}  // namespace latdesign::catalog
