#pragma once

#include <string>
#include <vector>

#include "latdesign/lattice.hpp"
#include "latdesign/shells.hpp"

namespace latdesign {

class UnknownNameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace catalog {

/// Names accepted by build(): Z<n>, A<n>, D<n>, E6, E7, E8, Lambda8, Leech,
/// O1, O7, O16, O22, O23, L1621, L1622, L1623 and the root systems
/// A1^16, D4^4, D8^2, sqrt2A1^16. Zn(7)-style spellings are also accepted.
std::vector<std::string> names();
std::string canonical_name(const std::string& name);

/// Deterministic construction; results are cached (build once, read many).
const Lattice& build(const std::string& name);

/// Glue vector f_i (1 <= i <= 13) in 16-dim orthonormal coordinates.
AmbientVector glue(int i);
/// Unit-coordinate sum: sum of epsilon_i over the given 1-based indices.
AmbientVector epsilon_sum(std::initializer_list<int> indices, std::size_t dim = 16);

/// Generators of the extended binary Golay code (12 x 24, 0/1).
std::vector<std::vector<int>> golay_generator();

struct CosetCheck {
  bool ok = false;
  bool contained = false;
  Rat det_ratio;
  bool shift_in_big = false;
  bool shift_in_small = false;
};

/// big = small u (shift + small), decided by index arithmetic: small must be
/// contained in big (checked, else PreconditionError), the index must be 2
/// (determinant ratio 4) and shift must lie in big but not in small. Index 1
/// with shift in small is the degenerate true case.
CosetCheck verify_coset_decomposition(const Lattice& big, const Lattice& small, const AmbientVector& shift);

struct Inclusion {
  std::string small, big;
  bool expected = true;
  bool holds = false;
};

/// Both Lambda16 chains, O16 in L1621, (sqrt2 A1)^16 in (A1)^16, and the
/// non-inclusion of Z1 in O1.
std::vector<Inclusion> containment_chain();

}  // namespace catalog
}  // namespace latdesign
