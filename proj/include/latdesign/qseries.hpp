#pragma once

#include <string>
#include <vector>

#include "latdesign/lattice.hpp"
#include "latdesign/rational.hpp"
#include "latdesign/shells.hpp"

namespace latdesign {

class TruncationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated power series in q^(1/4): coefficient k multiplies q^(k/4), and
/// all terms with exponent above `order` (in whole q-units) are dropped.
class QSeries {
 public:
  explicit QSeries(std::size_t order);
  static QSeries constant(std::size_t order, const Rat& c);

  std::size_t order() const { return order_; }
  /// Coefficient of q^(quarters / 4).
  const Rat& quarter(std::size_t quarters) const { return c_.at(quarters); }
  Rat& quarter(std::size_t quarters) { return c_.at(quarters); }
  /// Coefficient of q^m.
  const Rat& operator[](std::size_t m) const { return c_.at(4 * m); }
  /// Coefficients at q^0..q^order; throws if any fractional exponent has a
  /// nonzero coefficient.
  std::vector<Rat> integer_coefficients() const;
  bool is_integral_grid() const;

  QSeries truncated(std::size_t order) const;
  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator*(const Rat& s) const;
  QSeries pow(unsigned e) const;
  bool operator==(const QSeries& o) const = default;

 private:
  std::size_t order_;
  std::vector<Rat> c_;  // size 4 * order + 1
};

QSeries theta2(std::size_t order);
QSeries theta3(std::size_t order);
QSeries theta4(std::size_t order);
/// theta2^4 theta4^4 / 16.
QSeries delta8(std::size_t order);

struct NamedIdentity {
  std::string name;     // O23, L1623, Z7
  std::string lattice;  // catalog name
  std::string formula;
  std::size_t default_order;
  QSeries rhs(std::size_t order) const;
};

const std::vector<NamedIdentity>& named_identities();
const NamedIdentity& named_identity(const std::string& name);

struct IdentityRow {
  std::size_t m;
  std::uint64_t observed;
  Rat expected;
  bool match;
};

struct IdentityCheck {
  bool ok = false;
  std::vector<IdentityRow> rows;
};

/// Compares theta_prefix(L, M) with the integer-grid coefficients of rhs.
IdentityCheck verify_identity(const Lattice& lattice, const QSeries& rhs, std::size_t max_norm,
                              const EnumerationOptions& opts = {});
IdentityCheck verify_identity(const ThetaPrefix& theta, const QSeries& rhs, std::size_t max_norm);

}  // namespace latdesign
