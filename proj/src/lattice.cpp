#include "latdesign/lattice.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace latdesign {

bool LatticeVector::is_zero() const {
  for (auto c : coords)
    if (c != 0) return false;
  return true;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector out{coords};
  for (auto& c : out.coords) c = -c;
  return out;
}

namespace {

Mat gram_of_basis(const Mat& basis, const Rat& scale) { return basis * basis.transpose() * scale; }

void require_gram(const Mat& gram) {
  if (!gram.is_square()) throw DimensionError("Gram matrix must be square");
  if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix is not symmetric");
  if (!gram.is_positive_definite()) throw std::invalid_argument("Gram matrix is not positive definite");
}

std::vector<Rat> to_rats(const LatticeVector& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (auto c : v.coords) out.emplace_back(static_cast<long>(c));
  return out;
}

const Mat& require_basis(const Lattice& l, const char* what) {
  if (!l.has_basis()) throw std::invalid_argument(std::string(what) + " needs an ambient basis");
  return *l.basis();
}

}  // namespace

Lattice Lattice::from_gram(Mat gram, std::string label) {
  require_gram(gram);
  Lattice l;
  l.gram_ = std::move(gram);
  l.label_ = std::move(label);
  return l;
}

Lattice Lattice::from_basis(Mat basis, Rat ambient_scale, std::string label) {
  if (ambient_scale <= 0) throw std::invalid_argument("ambient scale must be positive");
  Lattice l;
  l.gram_ = gram_of_basis(basis, ambient_scale);
  require_gram(l.gram_);
  l.basis_ = std::move(basis);
  l.scale_ = std::move(ambient_scale);
  l.label_ = std::move(label);
  return l;
}

Lattice Lattice::with_label(std::string label) const {
  Lattice l(*this);
  l.label_ = std::move(label);
  return l;
}

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (mpz_odd_p(gram_(i, i).get_num_mpz_t())) return false;
  return true;
}

Rat Lattice::inner(const LatticeVector& a, const LatticeVector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw DimensionError("coordinate length mismatch");
  Rat s(0), row;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a.coords[i] == 0) continue;
    row = 0;
    for (std::size_t j = 0; j < dim(); ++j)
      if (b.coords[j] != 0) row += gram_(i, j) * static_cast<long>(b.coords[j]);
    s += row * static_cast<long>(a.coords[i]);
  }
  return s;
}

AmbientVector Lattice::ambient(const LatticeVector& v) const {
  const Mat& b = require_basis(*this, "ambient coordinates");
  if (v.size() != dim()) throw DimensionError("coordinate length mismatch");
  return mul_row(to_rats(v), b);
}

Rat Lattice::ambient_inner(std::span<const Rat> a, std::span<const Rat> b) const {
  return dot(a, b) * scale_;
}

Rat Lattice::inner_ambient(const LatticeVector& a, std::span<const Rat> v) const {
  const auto x = ambient(a);
  return ambient_inner(x, v);
}

std::optional<std::vector<Rat>> Lattice::rational_coordinates_of(std::span<const Rat> v) const {
  const Mat& b = require_basis(*this, "coordinate solve");
  if (v.size() != b.cols()) throw DimensionError("ambient vector length mismatch");
  // c B = v  =>  c = v B^T (B B^T)^{-1}, then confirm v is in the span.
  const Mat bt = b.transpose();
  const std::vector<Rat> rhs = mul_row(v, bt);
  const std::vector<Rat> c = mul_row(rhs, (b * bt).inverse());
  if (mul_row(c, b) != std::vector<Rat>(v.begin(), v.end())) return std::nullopt;
  return c;
}

std::optional<LatticeVector> Lattice::coordinates_of(std::span<const Rat> v) const {
  auto c = rational_coordinates_of(v);
  if (!c) return std::nullopt;
  LatticeVector out;
  out.coords.reserve(c->size());
  for (const auto& x : *c) {
    if (!is_integer(x)) return std::nullopt;
    out.coords.push_back(to_int64(x));
  }
  return out;
}

Rat determinant(const Lattice& lattice) { return lattice.gram().determinant(); }

Lattice canonical_rebase(const Lattice& lattice) {
  const Mat& b = require_basis(lattice, "rebasing");
  return Lattice::from_basis(hnf_basis(b, b.rows()), lattice.ambient_scale(), lattice.label());
}

Lattice sublattice_with_glue(const Lattice& base, const std::vector<AmbientVector>& glue) {
  const Mat& b = require_basis(base, "gluing");
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(b.row_vector(i));
  for (const auto& g : glue) {
    if (g.size() != b.cols()) throw DimensionError("glue vector has wrong ambient length");
    rows.push_back(g);
  }
  Mat h = hnf_basis(Mat::from_rows(rows, b.cols()), b.rows());
  if (h.rows() != b.rows()) throw DimensionError("glue vector outside the rational span of the base");
  return Lattice::from_basis(std::move(h), base.ambient_scale(), base.label());
}

Lattice change_basis(const Lattice& lattice, const IntMatrix& rows) {
  const std::size_t n = lattice.dim();
  Mat t(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw DimensionError("change of basis row has wrong length");
    for (std::size_t j = 0; j < n; ++j) t(i, j) = Rat(rows[i][j]);
  }
  if (lattice.has_basis()) return Lattice::from_basis(t * *lattice.basis(), lattice.ambient_scale(), lattice.label());
  return Lattice::from_gram(t * lattice.gram() * t.transpose(), lattice.label());
}

Lattice orthogonal_complement(const Lattice& lattice, std::span<const LatticeVector> vs) {
  const std::size_t n = lattice.dim();
  if (vs.empty()) return lattice;
  // c |-> c G v for each v; the common kernel is the complement.
  Mat cols(n, vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].size() != n) throw DimensionError("coordinate length mismatch");
    if (vs[k].is_zero()) throw std::invalid_argument("orthogonal complement of the zero vector");
    const auto gv = mul_row(to_rats(vs[k]), lattice.gram());
    for (std::size_t i = 0; i < n; ++i) cols(i, k) = gv[i];
  }
  const IntMatrix kernel = integer_kernel(scaled_integer_matrix(cols, cols.common_denominator()));
  if (kernel.empty()) throw std::invalid_argument("orthogonal complement is zero");
  return change_basis(lattice, kernel);
}

Lattice orthogonal_complement(const Lattice& lattice, const LatticeVector& v) {
  return orthogonal_complement(lattice, std::span<const LatticeVector>(&v, 1));
}

Lattice rescale(const Lattice& lattice, const Rat& factor) {
  if (factor <= 0) throw std::invalid_argument("rescale factor must be positive");
  if (lattice.has_basis())
    return Lattice::from_basis(*lattice.basis(), lattice.ambient_scale() * factor, lattice.label());
  return Lattice::from_gram(lattice.gram() * factor, lattice.label());
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  const bool ambient = a.has_basis() && b.has_basis() && a.ambient_scale() == b.ambient_scale();
  if (ambient) {
    const Mat& ba = *a.basis();
    const Mat& bb = *b.basis();
    Mat basis(na + nb, ba.cols() + bb.cols());
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < ba.cols(); ++j) basis(i, j) = ba(i, j);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < bb.cols(); ++j) basis(na + i, ba.cols() + j) = bb(i, j);
    return Lattice::from_basis(std::move(basis), a.ambient_scale());
  }
  Mat g(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) g(na + i, na + j) = b.gram()(i, j);
  return Lattice::from_gram(std::move(g));
}

Lattice direct_power(const Lattice& a, std::size_t copies) {
  if (copies == 0) throw std::invalid_argument("direct power needs at least one copy");
  Lattice out = a;
  for (std::size_t i = 1; i < copies; ++i) out = direct_sum(out, a);
  return out;
}

ReducedBasis reduce_basis(const Lattice& lattice, long double delta) {
  const std::size_t n = lattice.dim();
  std::vector<std::vector<long double>> g(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = lattice.gram()(i, j).get_d();
  std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
  std::vector<long double> bstar(n, 0);
  auto gso = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        long double s = g[i][j];
        for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = s / bstar[j];
      }
      long double s = g[i][i];
      for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = s;
    }
  };
  auto subtract = [&](std::size_t k, std::size_t j, std::int64_t q) {
    // b_k <- b_k - q b_j
    for (std::size_t l = 0; l < n; ++l) g[k][l] -= q * g[j][l];
    for (std::size_t l = 0; l < n; ++l) g[l][k] = (l == k) ? g[k][k] - q * g[k][j] : g[k][l];
    for (std::size_t l = 0; l < n; ++l) {
      const __int128 v = static_cast<__int128>(u[k][l]) - static_cast<__int128>(q) * u[j][l];
      if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("basis conditioning overflow");
      u[k][l] = static_cast<std::int64_t>(v);
    }
    for (std::size_t l = 0; l < j; ++l) mu[k][l] -= q * mu[j][l];
    mu[k][j] -= q;
  };

  gso();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1000000) break;
    for (std::size_t jj = k; jj-- > 0;) {
      const long double q = std::nearbyint(mu[k][jj]);
      if (q != 0) subtract(k, jj, static_cast<std::int64_t>(q));
    }
    if (bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      std::swap(g[k], g[k - 1]);
      for (auto& row : g) std::swap(row[k], row[k - 1]);
      std::swap(u[k], u[k - 1]);
      gso();
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }

  IntMatrix t(n, IntRow(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = Int(static_cast<long>(u[i][j]));
  Lattice reduced = change_basis(lattice, t);
  if (determinant(reduced) != determinant(lattice))
    throw std::logic_error("basis conditioning produced a non-unimodular transform");
  return ReducedBasis{std::move(reduced), std::move(t)};
}

bool same_lattice(const Lattice& a, const Lattice& b) {
  const Mat& ba = require_basis(a, "lattice comparison");
  const Mat& bb = require_basis(b, "lattice comparison");
  if (a.ambient_scale() != b.ambient_scale() || ba.cols() != bb.cols() || a.dim() != b.dim()) return false;
  return hnf_basis(ba) == hnf_basis(bb);
}

bool contains(const Lattice& lattice, std::span<const Rat> ambient_vector) {
  return lattice.coordinates_of(ambient_vector).has_value();
}

bool is_sublattice(const Lattice& small, const Lattice& big) {
  const Mat& bs = require_basis(small, "containment");
  require_basis(big, "containment");
  if (small.ambient_scale() != big.ambient_scale() || bs.cols() != big.ambient_dim()) return false;
  for (std::size_t i = 0; i < bs.rows(); ++i)
    if (!contains(big, bs.row(i))) return false;
  return true;
}

// Text format:
//   dim n
//   label <name>                 (optional)
//   n rows of n Gram entries
//   basis <ambient_dim> <scale>  (optional, followed by n rows)
void write_lattice(std::ostream& out, const Lattice& lattice) {
  const std::size_t n = lattice.dim();
  out << "dim " << n << '\n';
  if (!lattice.label().empty()) out << "label " << lattice.label() << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << to_string(lattice.gram()(i, j));
    out << '\n';
  }
  if (lattice.has_basis()) {
    const Mat& b = *lattice.basis();
    out << "basis " << b.cols() << ' ' << to_string(lattice.ambient_scale()) << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out << (j ? " " : "") << to_string(b(i, j));
      out << '\n';
    }
  }
}

namespace {

std::vector<Rat> parse_row(const std::string& line, std::size_t expected) {
  std::istringstream ss(line);
  std::vector<Rat> row;
  std::string tok;
  while (ss >> tok) row.push_back(parse_rat(tok));
  if (row.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(row.size()) + " in line: " + line);
  return row;
}

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos && line[0] != '#') return true;
  }
  return false;
}

}  // namespace

Lattice read_lattice(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line.rfind("dim ", 0) != 0) throw std::invalid_argument("lattice file must start with 'dim n'");
  const std::size_t n = std::stoul(line.substr(4));
  if (n == 0) throw std::invalid_argument("lattice dimension must be positive");
  std::string label;
  std::vector<std::vector<Rat>> rows;
  if (!next_line(in, line)) throw std::invalid_argument("truncated lattice file");
  if (line.rfind("label ", 0) == 0) {
    label = line.substr(6);
    if (!next_line(in, line)) throw std::invalid_argument("truncated lattice file");
  }
  rows.push_back(parse_row(line, n));
  for (std::size_t i = 1; i < n; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("truncated Gram matrix");
    rows.push_back(parse_row(line, n));
  }
  Mat gram = Mat::from_rows(rows, n);
  if (!next_line(in, line)) return Lattice::from_gram(std::move(gram), label);

  std::istringstream hs(line);
  std::string kw, scale_tok;
  std::size_t adim = 0;
  if (!(hs >> kw >> adim >> scale_tok) || kw != "basis" || adim == 0)
    throw std::invalid_argument("expected 'basis <ambient_dim> <scale>', got: " + line);
  std::vector<std::vector<Rat>> brows;
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("truncated basis block");
    brows.push_back(parse_row(line, adim));
  }
  Lattice l = Lattice::from_basis(Mat::from_rows(brows, adim), parse_rat(scale_tok), label);
  if (l.gram() != gram) throw std::invalid_argument("Gram matrix disagrees with the basis block");
  if (next_line(in, line)) throw std::invalid_argument("trailing content after basis block");
  return l;
}

std::string to_text(const Lattice& lattice) {
  std::ostringstream ss;
  write_lattice(ss, lattice);
  return ss.str();
}

Lattice from_text(const std::string& text) {
  std::istringstream ss(text);
  return read_lattice(ss);
}

Lattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lattice file: " + path);
  return read_lattice(in);
}

void save_lattice(const std::string& path, const Lattice& lattice) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write lattice file: " + path);
  write_lattice(out, lattice);
}

}  // namespace latdesign
