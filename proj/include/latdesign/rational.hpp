#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latdesign {

// GMP rationals are kept canonical (reduced, positive denominator) by every
// mpq_class operation, which is exactly the invariant we need.
using Rat = mpq_class;
using Int = mpz_class;

Rat parse_rat(const std::string& text);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

bool is_integer(const Rat& r);
Int to_int(const Rat& r);  // throws if r is not an integer
std::int64_t to_int64(const Int& z);
std::int64_t to_int64(const Rat& r);
Int lcm(const Int& a, const Int& b);
Rat pow(const Rat& base, unsigned exponent);
Int pow(const Int& base, unsigned exponent);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of exact rationals.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::initializer_list<std::initializer_list<Rat>> rows);

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<std::vector<Rat>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rat> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rat> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Rat> row_vector(std::size_t r) const;

  Mat transpose() const;
  Mat operator*(const Mat& other) const;
  Mat operator*(const Rat& scalar) const;
  Mat operator+(const Mat& other) const;
  bool operator==(const Mat& other) const = default;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_integral() const;
  bool is_zero() const;

  Rat determinant() const;
  std::size_t rank() const;
  Mat inverse() const;  // throws std::domain_error when singular
  /// Exact leading principal minors test.
  bool is_positive_definite() const;
  /// Least common multiple of all entry denominators.
  Int common_denominator() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

std::vector<Rat> mul_row(std::span<const Rat> v, const Mat& m);
Rat dot(std::span<const Rat> a, std::span<const Rat> b);
Rat quadratic_form(const Mat& gram, std::span<const Rat> a, std::span<const Rat> b);

}  // namespace latdesign
