#include <gtest/gtest.h>

#include "latdesign/catalog.hpp"
#include "latdesign/classification.hpp"
#include "latdesign/reference.hpp"

using namespace latdesign;
using namespace latdesign::classification;

namespace {

ShellSet s(const std::string& name, int m) { return enumerate_shell(catalog::build(name), Rat(m)); }

// Brute-force P_gamma(alpha, beta) over all pairs, nullopt when it varies.
std::optional<std::uint64_t> brute_p(const ShellSet& x, const Rat& g, const Rat& a, const Rat& b) {
  std::optional<std::uint64_t> value;
  bool seen = false;
  const Lattice& l = x.lattice();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (l.inner(x.vector(i), x.vector(j)) != g) continue;
      std::uint64_t c = 0;
      for (std::size_t k = 0; k < x.size(); ++k)
        c += l.inner(x.vector(i), x.vector(k)) == a && l.inner(x.vector(k), x.vector(j)) == b;
      if (!seen) value = c, seen = true;
      else if (value && *value != c) value.reset();
    }
  return value;
}

}  // namespace

TEST(Classification, NeighborProfileAgainstBruteForce) {
  const auto x = s("O7", 3);
  for (std::size_t i : {0ul, 17ul, 55ul}) {
    NeighborProfile p;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const Rat ip = x.lattice().inner(x.vector(i), x.vector(j));
      p.n0 += ip == 0;
      p.n1 += ip == 1;
      p.n2 += ip == 2;
    }
    EXPECT_EQ(neighbor_profile(x, i), p);
  }
}

TEST(Classification, NiFormulasOnAllNine) {
  for (const auto& name : reference::nine_lattices()) {
    const auto r = check_ni_formulas(s(name, 3));
    EXPECT_TRUE(r.ok) << name;
    EXPECT_EQ(r.violations, 0u);
  }
  EXPECT_EQ(check_ni_formulas(s("L1621", 3)).profile, (NeighborProfile{500, 255, 6}));
}

TEST(Classification, NiRequiresADesign) {
  EXPECT_THROW(check_ni_formulas(s("E8", 2)), PreconditionError);
}

TEST(Classification, MinimalVectorFormulas) {
  for (const auto& name : {"Z7", "L1621", "L1622", "L1623"}) {
    const auto r = check_pi_formulas(catalog::build(name));
    EXPECT_TRUE(r.ok) << name;
    EXPECT_EQ(r.dim, 9 * r.min - 2);
  }
}

TEST(Classification, IntersectionNumbersAgainstBruteForce) {
  const auto x = s("O7", 3);
  const auto table = intersection_numbers(x, Rat(1));
  for (const auto& e : table.entries) {
    const auto b = brute_p(x, Rat(1), e.alpha, e.beta);
    ASSERT_EQ(table.at(e.alpha, e.beta).has_value(), b.has_value());
    if (b) EXPECT_EQ(*table.at(e.alpha, e.beta), *b);
  }
}

TEST(Classification, P2ClosedFormsOnLambda16) {
  for (const auto& name : {"L1621", "L1622", "L1623"}) EXPECT_TRUE(check_p2_closed_forms(s(name, 3)).ok) << name;
}

TEST(Classification, RootNeighborCountsAndPrintedForm) {
  const auto r = s2_neighbor_counts(catalog::build("L1622"));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.ip0, 78u);
  EXPECT_EQ(r.printed_ip0, Rat(14));
  EXPECT_FALSE(r.printed_ip0_holds);
}

TEST(Classification, IrreducibleTypes) {
  const auto types = irreducible_types(8);
  // A1..A8, D4..D8, E6, E7, E8
  EXPECT_EQ(types.size(), 8u + 5u + 3u);
  EXPECT_EQ((RootType{'E', 8}).roots(), 240u);
  EXPECT_EQ((RootType{'D', 4}).roots(), 24u);
  EXPECT_EQ((RootType{'A', 2}).roots(), 6u);
  EXPECT_EQ((RootType{'E', 8}).neighbors(), 56u);
  EXPECT_EQ((RootType{'A', 1}).neighbors(), 0u);
}

TEST(Classification, RootDecompositions) {
  EXPECT_EQ(root_decompose(s("E8", 2)).name(), "E8");
  EXPECT_EQ(root_decompose(s("L1621", 2)).name(), "(A1)^16");
  EXPECT_EQ(root_decompose(s("L1622", 2)).name(), "(D4)^4");
  EXPECT_EQ(root_decompose(s("L1623", 2)).name(), "(D8)^2");
  EXPECT_EQ(root_decompose(s("Z4", 2)).name(), "D4");
  const auto d = root_decompose(s("A4", 2));
  EXPECT_EQ(d.name(), "A4");
  EXPECT_EQ(d.total_rank, 4u);
  EXPECT_EQ(d.total_roots, 20u);
}

TEST(Classification, AdmissibleSearchAndElimination) {
  const auto a = enumerate_admissible_root_systems(16);
  EXPECT_EQ(a.cases.size(), 9u);
  const auto e = eliminate_cases();
  EXPECT_EQ(e.survivors, (std::vector<std::string>{"(A1)^16", "(D4)^4", "(D8)^2"}));
  for (const auto& c : e.cases)
    if (c.name == "D16" || c.name == "(E8)^2") {
      EXPECT_EQ(c.n2, 90u);
      EXPECT_FALSE(c.representable);
    }
}

TEST(Classification, M1PrimeFormulaAgainstModels) {
  for (const RootType t : {RootType{'A', 4}, RootType{'D', 5}, RootType{'D', 8}, RootType{'A', 7}}) {
    const auto model = enumerate_m1_prime(t);
    EXPECT_EQ(model.formula_failures, 0u) << t.name();
    EXPECT_GT(model.functionals, 0u);
    auto values = m1_prime_values(t);
    for (auto v : model.values) EXPECT_TRUE(values.count(v)) << t.name() << " " << v;
  }
}

TEST(Classification, ClassifyLambda16) {
  const auto c = classify(catalog::build("L1623"));
  EXPECT_TRUE(c.ok);
  ASSERT_TRUE(c.roots.has_value());
  EXPECT_EQ(c.roots->name(), "(D8)^2");
  const auto e8 = classify(catalog::build("E8"));
  EXPECT_FALSE(e8.ok);
}
