#include <gtest/gtest.h>

#include "latdesign/catalog.hpp"
#include "latdesign/qseries.hpp"
#include "latdesign/reference.hpp"
#include "oracles.hpp"

using namespace latdesign;

namespace {

// Number of (a, b) in Z^2 with a^2 + b^2 = n.
std::uint64_t r2(std::size_t n) {
  std::uint64_t c = 0;
  for (long a = -20; a <= 20; ++a)
    for (long b = -20; b <= 20; ++b) c += static_cast<std::size_t>(a * a + b * b) == n;
  return c;
}

QSeries sample(std::size_t order, int salt) {
  QSeries s(order);
  for (std::size_t k = 0; k <= 4 * order; k += 1 + (k + salt) % 3) s.quarter(k) = oracle::q(static_cast<long>(k) - salt, 1 + salt);
  return s;
}

}  // namespace

TEST(QSeries, RingLaws) {
  const auto a = sample(6, 1), b = sample(6, 2), c = sample(6, 3);
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ(a + b - b, a);
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(a * QSeries::constant(6, Rat(1)), a);
}

TEST(QSeries, Theta3SquaredCountsTwoSquares) {
  const auto t = theta3(40).pow(2).integer_coefficients();
  for (std::size_t n = 0; n <= 40; ++n) EXPECT_EQ(t[n], Rat(static_cast<unsigned long>(r2(n)))) << n;
}

TEST(QSeries, JacobiIdentity) {
  EXPECT_EQ(theta3(20).pow(4), theta2(20).pow(4) + theta4(20).pow(4));
}

TEST(QSeries, E8ThetaFromJacobiForms) {
  const std::size_t order = 8;
  const QSeries e8 = (theta2(order).pow(8) + theta3(order).pow(8) + theta4(order).pow(8)) * Rat(1, 2);
  const auto th = theta_prefix(catalog::build("E8"), order);
  const auto c = e8.integer_coefficients();
  for (std::size_t m = 0; m <= order; ++m) EXPECT_EQ(c[m], Rat(static_cast<unsigned long>(th.counts[m]))) << m;
}

TEST(QSeries, Delta8Leading) {
  const auto d = delta8(6).integer_coefficients();
  EXPECT_EQ(d[0], 0);
  EXPECT_EQ(d[1], 1);
  EXPECT_EQ(d[2], -8);
}

TEST(QSeries, FractionalGridRejected) {
  EXPECT_FALSE(theta2(4).is_integral_grid());
  EXPECT_THROW(theta2(4).integer_coefficients(), std::exception);
  EXPECT_THROW(verify_identity(ThetaPrefix{2, {1, 0, 0}}, theta3(1), 2), TruncationError);
}

TEST(QSeries, NamedIdentitiesHold) {
  for (const auto& id : named_identities()) {
    const std::size_t order = std::min<std::size_t>(id.default_order, id.lattice == "O23" ? 4 : 8);
    const auto check = verify_identity(catalog::build(id.lattice), id.rhs(order), order);
    EXPECT_TRUE(check.ok) << id.name;
  }
}

TEST(QSeries, IdentityDetectsWrongLattice) {
  const auto& id = named_identity("L1623");
  EXPECT_FALSE(verify_identity(catalog::build("L1622"), id.rhs(4), 4).ok);
}

TEST(QSeries, ThetaPrefixesOfSmallLatticesMatchTables) {
  for (const auto& name : {"Z7", "O1", "O7"}) {
    const auto& t = reference::theta_table(name);
    EXPECT_EQ(theta_prefix(catalog::build(name), 12).counts, t.coefficients) << name;
  }
}
