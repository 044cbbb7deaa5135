#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "latdesign/rational.hpp"

namespace latdesign {

/// Fincke-Pohst style short vector search over an integer-scaled Gram
/// matrix. Pruning intervals come from a floating point LDL^T factorization
/// (computed exactly once, then rounded) widened by a safety margin; the norm
/// of every visited vector is tracked exactly in integers, so the admitted
/// set never depends on rounding.
class ShortVectorKernel {
 public:
  /// Called for each vector with lo <= x^T G' x <= hi, where G' is the
  /// integer-scaled Gram matrix. `slot` identifies the calling worker.
  /// Returning false requests early termination.
  using Visitor = std::function<bool(int slot, const std::int64_t* x, std::int64_t scaled_norm)>;

  explicit ShortVectorKernel(const Mat& gram);

  std::size_t dim() const { return n_; }
  /// Gram entries are multiplied by this to become integers.
  std::int64_t denominator() const { return den_; }
  const std::vector<std::int64_t>& scaled_gram() const { return g_; }
  std::int64_t scaled(const Rat& norm) const;

  /// Visits one representative of each pair {x, -x}: the last nonzero
  /// coordinate is positive. Single-threaded recursive reference.
  void run_serial(std::int64_t lo, std::int64_t hi, const Visitor& visit) const;

  /// Same vector set as run_serial, split into prefix tasks scheduled with
  /// OpenMP over `workers` threads (slots 0..workers-1). Visit order is
  /// unspecified.
  void run_parallel(std::int64_t lo, std::int64_t hi, int workers, const Visitor& visit) const;

 private:
  struct State;
  void recurse(State& st, std::size_t level, std::int64_t lo, std::int64_t hi, int slot, const Visitor& visit,
               std::atomic<bool>& stop) const;
  void collect(State& st, std::size_t level, std::size_t split, std::int64_t hi,
               std::vector<std::int64_t>& out) const;
  void set_level(State& st, std::size_t level, std::int64_t value) const;
  bool level_range(const State& st, std::size_t level, std::int64_t hi, std::int64_t& a, std::int64_t& b) const;

  std::size_t n_ = 0;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> g_;  // n x n row-major, integer scaled
  std::vector<long double> d_;   // LDL^T diagonal (scaled)
  std::vector<long double> l_;   // unit lower factor, l_[j * n + i] for j > i
};

}  // namespace latdesign
