#include "latdesign/qseries.hpp"

#include <stdexcept>

#include "latdesign/catalog.hpp"

namespace latdesign {

QSeries::QSeries(std::size_t order) : order_(order), c_(4 * order + 1, Rat(0)) {}

QSeries QSeries::constant(std::size_t order, const Rat& c) {
  QSeries s(order);
  s.c_[0] = c;
  return s;
}

bool QSeries::is_integral_grid() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (k % 4 != 0 && c_[k] != 0) return false;
  return true;
}

std::vector<Rat> QSeries::integer_coefficients() const {
  if (!is_integral_grid()) throw std::domain_error("series has terms at fractional exponents");
  std::vector<Rat> out(order_ + 1);
  for (std::size_t m = 0; m <= order_; ++m) out[m] = c_[4 * m];
  return out;
}

QSeries QSeries::truncated(std::size_t order) const {
  if (order > order_) throw TruncationError("cannot extend a truncated series");
  QSeries s(order);
  for (std::size_t k = 0; k < s.c_.size(); ++k) s.c_[k] = c_[k];
  return s;
}

QSeries QSeries::operator+(const QSeries& o) const {
  if (o.order_ != order_) throw TruncationError("series truncation orders differ");
  QSeries s(*this);
  for (std::size_t k = 0; k < c_.size(); ++k) s.c_[k] += o.c_[k];
  return s;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * Rat(-1); }

QSeries QSeries::operator*(const Rat& x) const {
  QSeries s(*this);
  for (auto& c : s.c_) c *= x;
  return s;
}

QSeries QSeries::operator*(const QSeries& o) const {
  if (o.order_ != order_) throw TruncationError("series truncation orders differ");
  QSeries s(order_);
  const std::size_t top = c_.size();
  for (std::size_t i = 0; i < top; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < top; ++j)
      if (o.c_[j] != 0) s.c_[i + j] += c_[i] * o.c_[j];
  }
  return s;
}

QSeries QSeries::pow(unsigned e) const {
  QSeries result = constant(order_, Rat(1));
  QSeries base(*this);
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QSeries theta3(std::size_t order) {
  QSeries s(order);
  s.quarter(0) = 1;
  for (std::size_t n = 1; n * n <= order; ++n) s.quarter(4 * n * n) += 2;
  return s;
}

QSeries theta4(std::size_t order) {
  QSeries s(order);
  s.quarter(0) = 1;
  for (std::size_t n = 1; n * n <= order; ++n) s.quarter(4 * n * n) += (n % 2 ? -2 : 2);
  return s;
}

QSeries theta2(std::size_t order) {
  // sum over n in Z of q^((n + 1/2)^2); (2n+1)^2 quarters, twice for n >= 0.
  QSeries s(order);
  for (std::size_t k = 1; k * k <= 4 * order; k += 2) s.quarter(k * k) += 2;
  return s;
}

QSeries delta8(std::size_t order) {
  return theta2(order).pow(4) * theta4(order).pow(4) * Rat(1, 16);
}

QSeries NamedIdentity::rhs(std::size_t order) const {
  const QSeries t3 = theta3(order);
  if (name == "O23") return t3.pow(23) - t3.pow(15) * delta8(order) * Rat(46);
  if (name == "L1623") return t3.pow(16) - t3.pow(8) * delta8(order) * Rat(32);
  if (name == "Z7") return t3.pow(7);
  throw UnknownNameError("unknown identity: " + name);
}

const std::vector<NamedIdentity>& named_identities() {
  static const std::vector<NamedIdentity> ids{
      {"O23", "O23", "theta3^23 - 46 theta3^15 Delta8", 5},
      {"L1623", "L1623", "theta3^16 - 32 theta3^8 Delta8", 8},
      {"Z7", "Z7", "theta3^7", 12},
  };
  return ids;
}

const NamedIdentity& named_identity(const std::string& name) {
  for (const auto& id : named_identities())
    if (id.name == name) return id;
  throw UnknownNameError("unknown identity: " + name);
}

IdentityCheck verify_identity(const ThetaPrefix& theta, const QSeries& rhs, std::size_t max_norm) {
  if (rhs.order() < max_norm || theta.max_norm < max_norm)
    throw TruncationError("series truncated below the requested order");
  const auto coeffs = rhs.integer_coefficients();
  IdentityCheck out;
  out.ok = true;
  for (std::size_t m = 0; m <= max_norm; ++m) {
    const bool match = Rat(static_cast<unsigned long>(theta.counts[m])) == coeffs[m];
    out.rows.push_back({m, theta.counts[m], coeffs[m], match});
    out.ok = out.ok && match;
  }
  return out;
}

IdentityCheck verify_identity(const Lattice& lattice, const QSeries& rhs, std::size_t max_norm,
                              const EnumerationOptions& opts) {
  return verify_identity(theta_prefix(lattice, max_norm, opts), rhs, max_norm);
}

}  // namespace latdesign
