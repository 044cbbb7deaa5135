#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "latdesign/enumerate.hpp"
#include "latdesign/lattice.hpp"
#include "latdesign/parallel.hpp"

namespace latdesign {

struct EnumerationOptions {
  int workers = 0;                      // <= 0: default_workers()
  std::size_t max_vectors = 100000000;  // shell size guardrail
  bool use_serial_reference = false;    // single-threaded recursive path
};

/// All vectors of one norm, stored as a dense row-major block of integer
/// basis coordinates in canonical (lexicographic) order.
class ShellSet {
 public:
  ShellSet(std::shared_ptr<const Lattice> lattice, Rat norm, std::vector<std::int32_t> coords);

  const Lattice& lattice() const { return *lattice_; }
  std::shared_ptr<const Lattice> lattice_ptr() const { return lattice_; }
  const Rat& norm() const { return norm_; }
  std::size_t dim() const { return lattice_->dim(); }
  std::size_t size() const { return dim() == 0 ? 0 : coords_.size() / dim(); }
  bool empty() const { return coords_.empty(); }

  std::span<const std::int32_t> row(std::size_t i) const { return {coords_.data() + i * dim(), dim()}; }
  LatticeVector vector(std::size_t i) const;
  const std::vector<std::int32_t>& data() const { return coords_; }
  /// Index of a vector, or size() when absent (binary search).
  std::size_t find(std::span<const std::int32_t> v) const;

  /// Integer matrix Y (size x dim) with Y = X G', G' the integer-scaled Gram
  /// matrix; (x_i, x_j) = (Y_i . x_j) / denominator.
  std::vector<std::int64_t> gram_products() const;
  std::int64_t denominator() const;

 private:
  std::shared_ptr<const Lattice> lattice_;
  Rat norm_;
  std::vector<std::int32_t> coords_;
};

struct ThetaPrefix {
  std::size_t max_norm = 0;
  std::vector<std::uint64_t> counts;  // counts[m] = |s_m(L)|, m = 0..max_norm
};

ShellSet enumerate_shell(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts = {});
ShellSet enumerate_shell(std::shared_ptr<const Lattice> lattice, const Rat& norm,
                         const EnumerationOptions& opts = {});
/// Count only, without storing vectors.
std::uint64_t shell_size(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts = {});
bool shell_nonempty(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts = {});
/// Counts for integral norms 0..max_norm (non-integral norms are ignored).
ThetaPrefix theta_prefix(const Lattice& lattice, std::size_t max_norm, const EnumerationOptions& opts = {});
/// Smallest nonzero norm.
Rat minimum(const Lattice& lattice, const EnumerationOptions& opts = {});
ShellSet minimal_shell(const Lattice& lattice, const EnumerationOptions& opts = {});

}  // namespace latdesign
