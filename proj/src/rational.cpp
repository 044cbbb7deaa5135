#include "latdesign/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace latdesign {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Int to_int(const Rat& r) {
  if (!is_integer(r)) throw std::domain_error("non-integral value " + to_string(r));
  return r.get_num();
}

std::int64_t to_int64(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit int64: " + to_string(z));
  return z.get_si();
}

std::int64_t to_int64(const Rat& r) { return to_int64(to_int(r)); }

Int lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Rat pow(const Rat& base, unsigned exponent) {
  Rat out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

Int pow(const Int& base, unsigned exponent) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<Rat> Mat::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix product shape mismatch");
  Mat out(rows_, other.cols_);
  Rat tmp;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Rat& b = other(k, j);
        if (b == 0) continue;
        tmp = a * b;
        out(i, j) += tmp;
      }
    }
  return out;
}

Mat Mat::operator*(const Rat& scalar) const {
  Mat out(*this);
  for (auto& x : out.data_) x *= scalar;
  return out;
}

Mat Mat::operator+(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
  Mat out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

bool Mat::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Mat::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return is_integer(x); });
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x == 0; });
}

Rat Mat::determinant() const {
  if (!is_square()) throw DimensionError("determinant of non-square matrix");
  Mat a(*this);
  const std::size_t n = rows_;
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::size_t Mat::rank() const {
  Mat a(*this);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols_; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

Mat Mat::inverse() const {
  if (!is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = rows_;
  Mat a(*this);
  Mat inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool Mat::is_positive_definite() const {
  if (!is_symmetric()) return false;
  // Gaussian elimination without pivoting: the pivots are the ratios of
  // consecutive leading principal minors, so all are positive iff PD.
  Mat a(*this);
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(c, c) <= 0) return false;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return true;
}

Int Mat::common_denominator() const {
  Int d(1);
  for (const auto& x : data_) d = lcm(d, x.get_den());
  return d;
}

std::vector<Rat> mul_row(std::span<const Rat> v, const Mat& m) {
  if (v.size() != m.rows()) throw DimensionError("vector-matrix shape mismatch");
  std::vector<Rat> out(m.cols(), Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat quadratic_form(const Mat& gram, std::span<const Rat> a, std::span<const Rat> b) {
  return dot(mul_row(a, gram), b);
}

}  // namespace latdesign
