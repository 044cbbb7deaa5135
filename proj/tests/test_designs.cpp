#include <gtest/gtest.h>

#include "latdesign/catalog.hpp"
#include "latdesign/designs.hpp"

using namespace latdesign;
using namespace latdesign::designs;

namespace {

IncidenceMatrix fano_plane() {
  return IncidenceMatrix::from_blocks(7, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}});
}

}  // namespace

TEST(Designs, VerifyFanoAndTrivialDesigns) {
  EXPECT_TRUE(verify_design(fano_plane(), 2, 7, 3, 1));
  EXPECT_FALSE(verify_design(fano_plane(), 2, 7, 3, 2));
  EXPECT_FALSE(verify_design(fano_plane(), 3, 7, 3, 1));
  IncidenceMatrix ones;
  ones.v = 7;
  ones.rows.assign(7, std::vector<std::uint8_t>(7, 1));
  EXPECT_TRUE(verify_design(ones, 2, 7, 7, 7));
  EXPECT_TRUE(verify_design(ones, 3, 7, 7, 7));
}

TEST(Designs, BlocksRoundTrip) {
  const auto m = fano_plane();
  EXPECT_EQ(IncidenceMatrix::from_blocks(7, m.block_list()), m);
}

TEST(Designs, CodesOfSmallMatrices) {
  const auto hamming = code_from_incidence(fano_plane());
  EXPECT_EQ(hamming.params(), "[7, 4, 3]");
  EXPECT_EQ(hamming.weights, (std::vector<std::uint64_t>{1, 0, 0, 7, 7, 0, 0, 1}));
  IncidenceMatrix zero;
  zero.v = 5;
  zero.rows.assign(3, std::vector<std::uint8_t>(5, 0));
  const auto z = code_from_incidence(zero);
  EXPECT_EQ(z.dimension(), 0u);
  EXPECT_FALSE(z.min_distance().has_value());
}

TEST(Designs, PrintedDesignAndItsLattice) {
  const auto m = printed_design();
  EXPECT_EQ(m.blocks(), 16u);
  EXPECT_TRUE(verify_design(m, 2, 16, 6, 2));
  EXPECT_EQ(code_from_incidence(m).params(), "[16, 6, 6]");
  const Lattice l = lattice_from_design(m);
  EXPECT_EQ(determinant(l), Rat(16));
  EXPECT_EQ(theta_prefix(l, 5).counts, theta_prefix(catalog::build("L1621"), 5).counts);
}

TEST(Designs, SignClassesOfL1621) {
  const Lattice& l = catalog::build("L1621");
  const auto classes = sign_classes(enumerate_shell(l, Rat(3)), detect_frame(enumerate_shell(l, Rat(2))));
  ASSERT_EQ(classes.size(), 16u);
  for (const auto& c : classes) {
    EXPECT_EQ(c.members.size(), 64u);
    EXPECT_EQ(c.support.size(), 6u);
  }
  const auto m = incidence_from_classes(classes, 16);
  EXPECT_TRUE(verify_design(m, 2, 16, 6, 2));
}

TEST(Designs, FrameDetectionNeedsA1Power) {
  EXPECT_THROW(detect_frame(enumerate_shell(catalog::build("L1622"), Rat(2))), PreconditionError);
}

TEST(Designs, SubsystemsOfL1623) {
  const Lattice& l = catalog::build("L1623");
  const auto m = incidence_from_classes(sign_classes(enumerate_shell(l, Rat(3)), standard_frame(l)), 16);
  EXPECT_EQ(code_from_incidence(m).params(), "[16, 8, 4]");
  const auto subs = design_subsystems(m, 16, 2);
  EXPECT_FALSE(subs.empty());
  for (const auto& s : subs) EXPECT_TRUE(verify_design(s, 2, 16, 6, 2));
}

TEST(Designs, FanoSubsetsOfZ7) {
  const auto f = fano_subsets();
  EXPECT_EQ(f.size(), 30u);
  for (const auto& s : f) {
    EXPECT_TRUE(s.isometric);
    EXPECT_EQ(s.vectors.size(), 56u);
  }
  const auto fam = max_disjoint_family(f);
  EXPECT_EQ(fam.size, 2u);
  EXPECT_EQ(fam.disjoint_triples, 0u);
  ASSERT_EQ(fam.witness.size(), 2u);
  EXPECT_TRUE(disjoint(f[fam.witness[0]], f[fam.witness[1]]));
  const auto [a, b] = cyclic_pair();
  EXPECT_TRUE(disjoint(a, b));
  EXPECT_FALSE(disjoint(a, a));
}

TEST(Designs, FingerprintIsPermutationInvariant) {
  const std::vector<std::vector<std::int64_t>> g{{3, 1, 0}, {1, 3, -1}, {0, -1, 3}};
  const std::vector<std::vector<std::int64_t>> p{{3, -1, 0}, {-1, 3, 1}, {0, 1, 3}};  // rows 2, 1, 0 relabelled
  EXPECT_EQ(fingerprint(g), fingerprint(p));
}
