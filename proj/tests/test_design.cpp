#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "latdesign/catalog.hpp"
#include "latdesign/design.hpp"
#include "oracles.hpp"

using namespace latdesign;

namespace {

DesignOptions exact() {
  DesignOptions o;
  o.mode = DesignMode::Exact;
  return o;
}

// In the plane, X is a t-design iff sum of z^k vanishes for 1 <= k <= t.
// Coordinates are exact Gaussian integers of the ambient basis images.
unsigned planar_strength(const Lattice& l, const Rat& m, unsigned t_max) {
  const auto pts = oracle::box_shell(l, m);
  const Mat& b = *l.basis();
  for (unsigned k = 1; k <= t_max; ++k) {
    Rat re(0), im(0);
    for (const auto& x : pts) {
      const Rat u = b(0, 0) * static_cast<long>(x[0]) + b(1, 0) * static_cast<long>(x[1]);
      const Rat v = b(0, 1) * static_cast<long>(x[0]) + b(1, 1) * static_cast<long>(x[1]);
      Rat pr(1), pi(0);
      for (unsigned j = 0; j < k; ++j) {
        const Rat nr = pr * u - pi * v, ni = pr * v + pi * u;
        pr = nr;
        pi = ni;
      }
      re += pr;
      im += pi;
    }
    if (re != 0 || im != 0) return k - 1;
  }
  return t_max;
}

// Brute-force sum over X of (x . beta)^k.
Rat brute_moment(const ShellSet& x, const std::vector<Rat>& beta, unsigned k) {
  Rat total(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rat s(0);
    for (std::size_t j = 0; j < x.dim(); ++j) s += beta[j] * static_cast<long>(x.row(i)[j]);
    total += pow(s, k);
  }
  return total;
}

ShellSet half_shell(const ShellSet& x) {
  std::vector<std::int32_t> coords;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto r = x.row(i);
    std::size_t last = x.dim();
    while (last > 0 && r[last - 1] == 0) --last;
    if (last && r[last - 1] > 0) coords.insert(coords.end(), r.begin(), r.end());
  }
  return ShellSet(x.lattice_ptr(), x.norm(), coords);
}

}  // namespace

TEST(Design, CkClosedForm) {
  EXPECT_EQ(c_k(3, Rat(6), 2), Rat(2));
  EXPECT_EQ(c_k(23, Rat(4600), 4), oracle::q(3 * 4600, 23 * 25));
  EXPECT_EQ(c_k(7, Rat(56), 6), oracle::q(15 * 56, 7 * 9 * 11));
  EXPECT_THROW(c_k(3, Rat(6), 3), std::invalid_argument);
}

TEST(Design, PlanarShellsAgainstGaussianOracle) {
  const std::vector<Lattice> planes{
      catalog::build("Z2"), Lattice::from_basis(Mat{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}}, Rat(1), "D2"),
      Lattice::from_basis(Mat{{Rat(1), Rat(0)}, {Rat(1), Rat(2)}}, Rat(1), "rect"),
      Lattice::from_basis(Mat{{Rat(3), Rat(1)}, {Rat(0), Rat(2)}}, Rat(1), "skew")};
  for (const auto& l : planes) {
    const std::string name = l.label();
    for (unsigned m = 1; m <= 40; ++m) {
      const auto x = enumerate_shell(l, Rat(m));
      if (x.size() < 2) continue;
      const unsigned expected = planar_strength(l, Rat(m), 13);
      const auto st = design_strength(x, 13, exact());
      EXPECT_EQ(st.t, expected) << name << " m=" << m;
      EXPECT_EQ(design_strength(x, 13).t, expected) << name << " m=" << m << " auto";
    }
  }
}

TEST(Design, MomentSumsMatchRhsOnDesigns) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-5, 5);
  for (const auto& [name, m, t] : std::vector<std::tuple<std::string, int, unsigned>>{
           {"E8", 2, 7}, {"O7", 3, 5}, {"L1621", 3, 5}, {"Z7", 3, 5}, {"D4", 2, 5}}) {
    const auto x = enumerate_shell(catalog::build(name), Rat(m));
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Rat> beta(x.dim());
      for (auto& b : beta) b = oracle::q(d(rng), 1 + trial);
      for (unsigned k = 1; k <= t; ++k) {
        EXPECT_EQ(moment_sum_dual(x, beta, k), brute_moment(x, beta, k));
        EXPECT_EQ(brute_moment(x, beta, k), design_rhs(x, beta, k)) << name << " k=" << k;
      }
    }
  }
}

TEST(Design, AmbientAndCoordinateMomentsAgree) {
  const auto x = enumerate_shell(catalog::build("L1621"), Rat(3));
  std::vector<Rat> alpha(16);
  for (std::size_t i = 0; i < 16; ++i) alpha[i] = oracle::q(static_cast<long>(i % 5) - 2, 3);
  const auto coords = x.lattice().rational_coordinates_of(alpha);
  ASSERT_TRUE(coords.has_value());
  for (unsigned k : {2u, 4u, 6u}) EXPECT_EQ(moment_sum(x, alpha, k), moment_sum_coords(x, *coords, k));
}

TEST(Design, KnownStrengths) {
  const auto e8 = enumerate_shell(catalog::build("E8"), Rat(2));
  EXPECT_EQ(design_strength(e8, 9, exact()).t, 7u);
  const auto o23 = enumerate_shell(catalog::build("O23"), Rat(3));
  EXPECT_TRUE(is_t_design(o23, 7, exact()));
  const auto o7 = enumerate_shell(catalog::build("O7"), Rat(3));
  EXPECT_TRUE(is_t_design(o7, 5, exact()));
  EXPECT_FALSE(is_t_design(o7, 6, exact()));
  const auto z7 = enumerate_shell(catalog::build("Z7"), Rat(1));
  const auto st = design_strength(z7, 5, exact());
  EXPECT_EQ(st.t, 3u);
  EXPECT_FALSE(st.capped);
  EXPECT_FALSE(st.evidence.back().holds);
}

TEST(Design, StrengthIsMonotone) {
  for (const auto& [name, m] : std::vector<std::pair<std::string, int>>{{"Z4", 2}, {"Z3", 5}, {"A4", 2}, {"D4", 4}}) {
    const auto x = enumerate_shell(catalog::build(name), Rat(m));
    bool prev = true;
    for (unsigned t = 1; t <= 8; ++t) {
      const bool now = is_t_design(x, t, exact());
      EXPECT_FALSE(now && !prev) << name << " t=" << t;
      prev = now;
    }
  }
}

TEST(Design, TensorAndScreenAgree) {
  for (const auto& name : {"Z3", "Z4", "A3", "D4", "E8"}) {
    for (int m = 1; m <= 6; ++m) {
      const auto x = enumerate_shell(catalog::build(name), Rat(m));
      if (x.size() < 2 || x.size() > 10000) continue;
      for (unsigned k : {2u, 4u, 6u, 8u})
        EXPECT_EQ(tensor_check(x, k).holds, screen_check(x, k, 200, 99).holds) << name << " m=" << m << " k=" << k;
    }
  }
}

TEST(Design, OddMomentsOfAntipodalSetsVanish) {
  for (const auto& [name, m] : std::vector<std::pair<std::string, int>>{{"Z7", 3}, {"O7", 3}, {"A4", 2}}) {
    const auto x = enumerate_shell(catalog::build(name), Rat(m));
    ASSERT_TRUE(is_antipodal(x));
    for (unsigned k : {1u, 3u, 5u, 7u}) EXPECT_TRUE(tensor_check(x, k).holds) << name << " k=" << k;
  }
}

TEST(Design, HalfShellIsNotAntipodalAndFailsOddDegree) {
  const auto x = half_shell(enumerate_shell(catalog::build("Z3"), Rat(1)));
  ASSERT_EQ(x.size(), 3u);
  EXPECT_FALSE(is_antipodal(x));
  EXPECT_FALSE(tensor_check(x, 1).holds);
  EXPECT_EQ(design_strength(x, 3, exact()).t, 0u);
}

TEST(Design, ParallelTensorIsDeterministic) {
  const auto x = enumerate_shell(catalog::build("L1622"), Rat(3));
  for (unsigned k : {4u, 6u}) {
    const auto a = tensor_check(x, k, 1), b = tensor_check(x, k, 3);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.mismatches, b.mismatches);
    EXPECT_EQ(a.first_mismatch, b.first_mismatch);
    EXPECT_EQ(a.lhs, b.lhs);
  }
  EXPECT_EQ(screen_check(x, 6, 50, 4, 1).witness, screen_check(x, 6, 50, 4, 3).witness);
}

TEST(Design, DistanceSetAgainstBruteForce) {
  for (const auto& [name, m] : std::vector<std::pair<std::string, int>>{{"O7", 3}, {"L1621", 3}, {"Z4", 3}, {"D4", 2}}) {
    const auto x = enumerate_shell(catalog::build(name), Rat(m));
    std::set<Rat> brute;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) brute.insert(x.lattice().inner(x.vector(i), x.vector(j)));
    EXPECT_EQ(distance_set(x), std::vector<Rat>(brute.begin(), brute.end())) << name;
  }
}

TEST(Design, ConfigurationOfO7Shell) {
  const auto c = configuration(enumerate_shell(catalog::build("O7"), Rat(4)), 7);
  EXPECT_EQ(c.d, 7u);
  EXPECT_EQ(c.n, 126u);
  EXPECT_EQ(c.s, 4u);
  EXPECT_EQ(c.t, 5u);
}

TEST(Design, BasisChangeKeepsStrength) {
  std::mt19937_64 rng(2);
  const Lattice& l = catalog::build("D4");
  const Lattice moved = change_basis(l, oracle::unimodular(4, rng, 12));
  for (int m = 2; m <= 6; m += 2)
    EXPECT_EQ(design_strength(enumerate_shell(moved, Rat(m)), 8, exact()).t,
              design_strength(enumerate_shell(l, Rat(m)), 8, exact()).t);
}
