#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "latdesign/catalog.hpp"
#include "latdesign/hnf.hpp"
#include "latdesign/reference.hpp"
#include "latdesign/shells.hpp"
#include "oracles.hpp"

using namespace latdesign;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rat("-6/4"), Rat(-3, 2));
  EXPECT_EQ(to_string(parse_rat("7/21")), "1/3");
  EXPECT_THROW(to_int(Rat(1, 2)), std::exception);
}

TEST(Lattice, FileRoundTripForEveryCatalogEntry) {
  for (const auto& name : catalog::names()) {
    const Lattice& l = catalog::build(name);
    EXPECT_EQ(from_text(to_text(l)), l) << name;
  }
  const auto path = std::filesystem::temp_directory_path() / "latdesign_roundtrip.lat";
  save_lattice(path.string(), catalog::build("O22"));
  EXPECT_EQ(load_lattice(path.string()), catalog::build("O22"));
  std::filesystem::remove(path);
}

TEST(Lattice, ReadRejectsMalformedInput) {
  EXPECT_THROW(from_text("dim 2\n1 0\n0\n"), std::exception);
  EXPECT_THROW(from_text("dim 2\n1 2\n2 1\n"), std::exception);  // not positive definite
}

TEST(Catalog, Determinants) {
  for (const auto& d : reference::determinants())
    EXPECT_EQ(determinant(catalog::build(d.lattice)), Rat(static_cast<unsigned long>(d.det))) << d.lattice;
  EXPECT_EQ(determinant(catalog::build("E8")), Rat(1));
  EXPECT_EQ(determinant(catalog::build("Leech")), Rat(1));
}

TEST(Catalog, IntegralityAndParity) {
  for (const auto& name : reference::nine_lattices()) {
    EXPECT_TRUE(catalog::build(name).is_integral()) << name;
    EXPECT_FALSE(catalog::build(name).is_even()) << name;
  }
  EXPECT_TRUE(catalog::build("E8").is_even());
  EXPECT_TRUE(catalog::build("Leech").is_even());
}

TEST(Catalog, ContainmentChain) {
  for (const auto& inc : catalog::containment_chain())
    EXPECT_EQ(inc.holds, inc.expected) << inc.small << " in " << inc.big;
}

TEST(Catalog, CosetDecompositions) {
  const auto c = catalog::verify_coset_decomposition(catalog::build("L1623"), catalog::build("L1622"),
                                                     catalog::epsilon_sum({1, 5}));
  EXPECT_TRUE(c.ok);
  const auto d = catalog::verify_coset_decomposition(catalog::build("L1621"), catalog::build("O16"),
                                                     catalog::epsilon_sum({1, 2}));
  EXPECT_TRUE(d.ok);
}

TEST(Catalog, UnknownNameThrows) { EXPECT_THROW(catalog::build("Q17"), UnknownNameError); }

TEST(Hnf, TransformAndShapeOnRandomMatrices) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + trial % 4, k = 1 + trial % 5;
    IntMatrix a(m, IntRow(k));
    for (auto& r : a)
      for (auto& v : r) v = d(rng);
    const HermiteForm h = hermite_form(a, true);
    // transform * a == h
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Int s = 0;
        for (std::size_t t = 0; t < m; ++t) s += h.transform[i][t] * a[t][j];
        EXPECT_EQ(s, h.h[i][j]);
      }
    EXPECT_EQ(abs(to_rational(h.transform, m).determinant()), Rat(1));
    EXPECT_EQ(h.rank, to_rational(a, k).rank());
    std::size_t prev = 0;
    for (std::size_t i = 0; i < h.rank; ++i) {
      std::size_t p = 0;
      while (h.h[i][p] == 0) ++p;
      if (i) EXPECT_GT(p, prev);
      EXPECT_GT(h.h[i][p], 0);
      for (std::size_t r = 0; r < i; ++r) {
        EXPECT_GE(h.h[r][p], 0);
        EXPECT_LT(h.h[r][p], h.h[i][p]);
      }
      prev = p;
    }
  }
}

TEST(Hnf, KernelAgainstBruteForce) {
  // Columns of a 4 x 2 matrix; every small c with c a = 0 must lie in the kernel span.
  const IntMatrix a{{1, 2}, {3, 4}, {5, 6}, {2, 2}};
  const IntMatrix k = integer_kernel(a);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& row : k)
    for (std::size_t j = 0; j < 2; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < 4; ++i) s += row[i] * a[i][j];
      EXPECT_EQ(s, 0);
    }
  const Mat span = hnf_basis(to_rational(k, 4));
  for (int c0 = -3; c0 <= 3; ++c0)
    for (int c1 = -3; c1 <= 3; ++c1)
      for (int c2 = -3; c2 <= 3; ++c2)
        for (int c3 = -3; c3 <= 3; ++c3) {
          const int v[4] = {c0, c1, c2, c3};
          bool zero = true;
          for (std::size_t j = 0; j < 2; ++j) {
            long s = 0;
            for (std::size_t i = 0; i < 4; ++i) s += v[i] * a[i][j].get_si();
            zero = zero && s == 0;
          }
          if (!zero) continue;
          Mat ext(3, 4);
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) ext(i, j) = span(i, j);
          for (std::size_t j = 0; j < 4; ++j) ext(2, j) = v[j];
          EXPECT_EQ(hnf_basis(ext), span);
        }
}
