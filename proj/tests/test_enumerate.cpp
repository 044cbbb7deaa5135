#include <gtest/gtest.h>

#include <random>

#include "latdesign/catalog.hpp"
#include "latdesign/design.hpp"
#include "latdesign/parallel.hpp"
#include "latdesign/shells.hpp"
#include "oracles.hpp"

using namespace latdesign;

namespace {

const std::vector<std::string> kSmall{"Z1", "Z2", "Z3", "Z4", "A1", "A2", "A3", "A4", "D4", "O1"};

}  // namespace

TEST(BoxOracle, CatalogLatticesUpToNorm20) {
  for (const auto& name : kSmall) {
    const Lattice& l = catalog::build(name);
    ASSERT_LE(l.dim(), 4u);
    const auto theta = theta_prefix(l, 20);
    for (unsigned m = 0; m <= 20; ++m) {
      const auto expected = oracle::box_shell(l, Rat(m));
      EXPECT_EQ(theta.counts[m], expected.size()) << name << " m=" << m;
      if (m >= 1 && m <= 10) EXPECT_EQ(oracle::rows(enumerate_shell(l, Rat(m))), expected) << name << " m=" << m;
    }
  }
}

TEST(BoxOracle, RandomGramMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const Lattice l = Lattice::from_gram(oracle::random_gram(n, rng));
    for (unsigned m = 1; m <= 12; ++m)
      EXPECT_EQ(oracle::rows(enumerate_shell(l, Rat(m))), oracle::box_shell(l, Rat(m))) << "trial " << trial;
  }
}

TEST(BoxOracle, RationalGram) {
  // A2 scaled by 1/2 has norms in (1/2) Z.
  const Lattice l = Lattice::from_gram(Mat{{Rat(1), Rat(-1, 2)}, {Rat(-1, 2), Rat(1)}});
  for (const Rat m : {Rat(1), Rat(3), Rat(7), Rat(1, 2)})
    EXPECT_EQ(oracle::rows(enumerate_shell(l, m)), oracle::box_shell(l, m)) << to_string(m);
}

TEST(Enumeration, KnownShellSizes) {
  EXPECT_EQ(shell_size(catalog::build("E8"), Rat(2)), 240u);
  EXPECT_EQ(shell_size(catalog::build("E8"), Rat(4)), 2160u);
  EXPECT_EQ(shell_size(catalog::build("Leech"), Rat(2)), 0u);
  EXPECT_EQ(shell_size(catalog::build("Leech"), Rat(4)), 196560u);
  EXPECT_EQ(minimum(catalog::build("O23")), Rat(3));
  EXPECT_EQ(minimal_shell(catalog::build("Z7")).size(), 14u);
}

TEST(Enumeration, SerialParallelAndWorkerCountAgree) {
  for (const auto& [name, m] : std::vector<std::pair<std::string, int>>{{"E8", 4}, {"O16", 4}, {"L1622", 3}, {"Z7", 9}}) {
    const Lattice& l = catalog::build(name);
    EnumerationOptions serial;
    serial.use_serial_reference = true;
    const auto ref = enumerate_shell(l, Rat(m), serial).data();
    for (int w : {1, 2, 3, 5}) {
      EnumerationOptions o;
      o.workers = w;
      EXPECT_EQ(enumerate_shell(l, Rat(m), o).data(), ref) << name << " workers " << w;
      EXPECT_EQ(theta_prefix(l, 4, o).counts, theta_prefix(l, 4, serial).counts);
    }
  }
}

TEST(Enumeration, ShellsAreAntipodalAndSorted) {
  for (const auto& name : {"Z7", "E8", "O7", "L1621", "A4"}) {
    for (int m = 1; m <= 4; ++m) {
      const auto x = enumerate_shell(catalog::build(name), Rat(m));
      if (x.empty()) continue;
      EXPECT_TRUE(is_antipodal(x)) << name << " " << m;
      for (std::size_t i = 1; i < x.size(); ++i) {
        auto a = x.row(i - 1), b = x.row(i);
        EXPECT_TRUE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
      }
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x.lattice().norm(x.vector(i)), Rat(m));
    }
  }
}

TEST(Enumeration, BasisIndependence) {
  std::mt19937_64 rng(11);
  for (const auto& name : {"E8", "D4", "O7", "L1621", "Z7", "A4"}) {
    const Lattice& l = catalog::build(name);
    const Lattice moved = change_basis(l, oracle::unimodular(l.dim(), rng, 4 * l.dim()));
    EXPECT_EQ(theta_prefix(moved, 5).counts, theta_prefix(l, 5).counts) << name;
    EXPECT_EQ(determinant(moved), determinant(l));
  }
}

TEST(Enumeration, VectorCapRaisesResourceError) {
  EnumerationOptions o;
  o.max_vectors = 100;
  EXPECT_THROW(enumerate_shell(catalog::build("E8"), Rat(2), o), ResourceError);
  o.max_vectors = 240;
  EXPECT_EQ(enumerate_shell(catalog::build("E8"), Rat(2), o).size(), 240u);
}

TEST(Enumeration, FindLocatesEveryRow) {
  const auto x = enumerate_shell(catalog::build("D4"), Rat(4));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x.find(x.row(i)), i);
  std::vector<std::int32_t> zero(4, 0);
  EXPECT_EQ(x.find(zero), x.size());
}

TEST(Workers, ResolveUsesOverride) {
  const int before = default_workers();
  set_default_workers(3);
  EXPECT_EQ(resolve_workers(0), 3);
  EXPECT_EQ(resolve_workers(2), 2);
  set_default_workers(before);
}
