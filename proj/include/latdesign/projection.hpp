#pragma once

#include "latdesign/lattice.hpp"
#include "latdesign/shells.hpp"

namespace latdesign {

class UnsupportedCaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Projection {
  Lattice lattice;
  int assumption = 0;  // 1: some (e, x) odd; 2: all even, some = 2 mod 4
  Rat source_det;
  Rat det;
  Rat min;
};

/// Projection of {x in L : (e, x) even} onto the hyperplane orthogonal to a
/// minimal vector e of an even lattice of minimum 4. The conclusion (odd,
/// integral, min >= 3, determinant unchanged or divided by 4) is asserted.
Projection project_along_minimal(const Lattice& lattice, const LatticeVector& e, const EnumerationOptions& opts = {});

}  // namespace latdesign
