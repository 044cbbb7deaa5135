#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latdesign/design.hpp"
#include "latdesign/shells.hpp"

namespace latdesign::classification {

/// One named comparison of a closed form against an observed value.
struct Check {
  std::string name;
  std::string expected;
  std::string observed;
  bool ok = false;
};

struct NeighborProfile {
  std::uint64_t n0 = 0, n1 = 0, n2 = 0;
  bool operator==(const NeighborProfile&) const = default;
};

/// Counts of x in X with (x0, x) = 0, 1, 2.
NeighborProfile neighbor_profile(const ShellSet& x, std::size_t x0);
/// Closed forms for (n0, n1, n2) of a norm-3 5-design in dimension n.
std::array<Rat, 3> ni_closed_forms(std::size_t n, std::size_t size);

struct NiReport {
  bool ok = false;
  std::array<Rat, 3> expected;
  NeighborProfile profile;       // at x0 = row 0
  std::size_t violations = 0;    // rows whose profile differs from the closed forms
  std::vector<Check> checks;
};

/// Requires X to be a norm-3 shell that is a 5-design; checks every x0.
NiReport check_ni_formulas(const ShellSet& x, const DesignOptions& opts = {});

struct MinVecProfile {
  std::uint64_t p0 = 0, p1 = 0;
  std::uint64_t out_of_range = 0;  // x with (x, t) outside {0, +-1}
};

MinVecProfile minvec_profile(const ShellSet& x, const LatticeVector& t);

struct PiReport {
  bool ok = false;
  Rat min;
  std::size_t dim = 0;
  Rat expected_min, expected_p0, expected_p1;
  std::size_t minimal_vectors = 0;
  std::size_t violations = 0;
  std::vector<Check> checks;
};

/// For min(L) < 3 with s_3(L) a 5-design, checks (t,t) = (n+2)/9 and the
/// p0, p1 closed forms for every minimal vector t.
PiReport check_pi_formulas(const Lattice& l, const DesignOptions& opts = {});

struct FormulaReport {
  bool ok = false;
  std::vector<Check> checks;
};

/// min(L) = 2: 256 | |X|, |X| >= 512, |s_2| = |X|/16 - 32 and the
/// dimension-16 neighbor forms.
FormulaReport divisibility_and_s2(const Lattice& l, const DesignOptions& opts = {});

struct IntersectionEntry {
  Rat alpha, beta;
  bool constant = false;
  std::uint64_t min = 0, max = 0;
};

struct IntersectionTable {
  Rat gamma;
  std::uint64_t pairs = 0;
  std::vector<IntersectionEntry> entries;  // every (alpha, beta) seen in some pair
  /// Count if pair-independent, nullopt if it varies; 0 if never seen.
  std::optional<std::uint64_t> at(const Rat& alpha, const Rat& beta) const;
};

/// P_gamma(alpha, beta) over all ordered pairs (x, y) with (x, y) = gamma.
IntersectionTable intersection_numbers(const ShellSet& x, const Rat& gamma);

/// a1..a5 for gamma = 2 as closed forms in |X|.
std::array<Rat, 5> p2_closed_forms(std::size_t size);
FormulaReport check_p2_closed_forms(const ShellSet& x);

struct S2Report {
  bool ok = false;
  std::uint64_t ip1 = 0, ip0 = 0;  // at the first root; constancy is a check
  Rat expected_ip1;
  Rat printed_ip0;    // |X|/64 - 18 as printed
  Rat corrected_ip0;  // |s_2| - 2 - 2 ip1 = 3|X|/64 - 18
  bool printed_ip0_holds = false;
  std::vector<Check> checks;
};

/// Root neighbor counts, the x0-to-root identity and the double count.
S2Report s2_neighbor_counts(const Lattice& l);

struct RootType {
  char family = 'A';  // A, D, E
  unsigned rank = 1;
  std::uint64_t roots() const;
  /// Number of roots at inner product 1 with a fixed root.
  std::uint64_t neighbors() const;
  std::string name() const;
  auto operator<=>(const RootType&) const = default;
};

/// Irreducible types of rank <= max_rank (A_n n>=1, D_n n>=4, E6, E7, E8).
std::vector<RootType> irreducible_types(unsigned max_rank);

struct RootComponent {
  RootType type;
  std::vector<std::size_t> members;  // row indices into the norm-2 shell
};

struct RootDecomposition {
  std::vector<RootComponent> components;  // sorted by type
  unsigned total_rank = 0;
  std::uint64_t total_roots = 0;
  std::string name() const;  // e.g. (A1)^16, D16, (D4)^4
};

std::string system_name(std::vector<RootType> types);

/// Partitions a norm-2 shell into irreducible components.
RootDecomposition root_decompose(const ShellSet& s2);

struct AdmissibleCase {
  std::vector<RootType> system;
  std::string name;
  std::uint64_t size = 0;  // |X|
  std::uint64_t n2 = 0;
};

struct AdmissibleSearch {
  std::uint64_t unions = 0;
  std::uint64_t rejected_divisibility = 0;
  std::uint64_t rejected_neighbors = 0;
  std::vector<AdmissibleCase> cases;
};

AdmissibleSearch enumerate_admissible_root_systems(unsigned rank = 16);

/// m1' values allowed by the closed forms (0 means x0 is orthogonal to the
/// component): A_n (n-D)(D+1), D_n n(n-1)/2 and 2(n-1), E8 {46, 60}.
std::set<std::uint64_t> m1_prime_values(const RootType& type);
/// Closed form for a given D (nullopt outside the allowed range).
std::optional<std::uint64_t> m1_prime_formula(const RootType& type, unsigned d);

struct ModelM1 {
  std::set<std::uint64_t> values;
  std::uint64_t functionals = 0;
  std::uint64_t formula_failures = 0;
};

/// Enumerates every linear functional on the standard model of an A_n, D_n
/// or E8 root system whose values on roots are integers in {0, +-1}, and
/// records the number of roots taking the value 1. For A_n and D_n each
/// functional is also checked against the closed form at its D.
ModelM1 enumerate_m1_prime(const RootType& type);

struct M1Observation {
  std::uint64_t count = 0;
  bool ips_in_range = true;
  bool allowed = false;          // count is in m1_prime_values
  std::optional<unsigned> d;     // D recovered from the count when unique
};

M1Observation m1_prime(const ShellSet& s2, const RootComponent& comp, std::span<const std::int32_t> x0);

struct EliminationCase {
  std::string name;
  std::uint64_t size = 0;
  std::uint64_t n2 = 0;
  std::set<std::uint64_t> values;   // m1' per component
  bool parity_argument = false;     // all values even, n2 odd
  bool representable = false;
  std::vector<std::uint64_t> witness;  // nonzero parts of a representation
  std::string reason;
};

struct EliminationReport {
  std::vector<EliminationCase> cases;
  std::vector<std::string> survivors;
};

EliminationReport eliminate_cases();

struct LatticeClassification {
  bool ok = false;
  std::string lattice;
  Rat min;
  std::size_t dim = 0;
  std::size_t shell_size = 0;
  std::optional<NiReport> ni;
  std::optional<PiReport> pi;
  std::optional<FormulaReport> divisibility;
  std::optional<FormulaReport> p2;
  std::optional<S2Report> s2;
  std::optional<RootDecomposition> roots;
  std::optional<FormulaReport> m1;  // per-x0 component sums equal n2
  std::vector<std::string> notes;
};

/// Runs every applicable check on s_3(L).
LatticeClassification classify(const Lattice& l, const DesignOptions& opts = {});

}  // namespace latdesign::classification
