#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "latdesign/rational.hpp"

namespace latdesign {

using IntRow = std::vector<Int>;
using IntMatrix = std::vector<IntRow>;

class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HermiteForm {
  IntMatrix h;          // echelon rows; rows [rank, m) are zero
  IntMatrix transform;  // unimodular, transform * input == h
  std::size_t rank = 0;
};

/// Row Hermite normal form of an integer matrix: upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
HermiteForm hermite_form(IntMatrix a, bool track_transform = false);

/// Canonical Z-basis of the row span of rational generators. Denominators
/// are cleared with their lcm, the integer HNF is taken and the
/// denominator restored; the result depends only on the generated module.
/// When required_rank is set and the module has smaller rank, throws
/// RankDeficiencyError.
Mat hnf_basis(const Mat& generators, std::optional<std::size_t> required_rank = std::nullopt);

/// Basis of {c in Z^m : c * a == 0} for an integer m x k matrix a.
IntMatrix integer_kernel(const IntMatrix& a);

/// Integer matrix from a rational one scaled by the given factor; throws if
/// the scaled entries are not integral.
IntMatrix scaled_integer_matrix(const Mat& m, const Int& scale);
Mat to_rational(const IntMatrix& m, std::size_t cols);

}  // namespace latdesign
