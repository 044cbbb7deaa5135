#include "latdesign/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latdesign {

struct ShortVectorKernel::State {
  explicit State(std::size_t n)
      : x(n, 0), fpart(n + 1, 0), epart(n + 1, 0), cen((n + 1) * n, 0), acc((n + 1) * n, 0), zero_above(n + 1, 1) {}
  std::vector<std::int64_t> x;
  std::vector<long double> fpart;    // sum over levels >= i of d_l y_l^2
  std::vector<std::int64_t> epart;   // exact form on coordinates >= i
  std::vector<long double> cen;      // cen[i*n+l] = sum_{j>=i} L_jl x_j
  std::vector<std::int64_t> acc;     // acc[i*n+l] = sum_{j>=i} G_lj x_j
  std::vector<unsigned char> zero_above;  // x_j == 0 for all j > i
};

ShortVectorKernel::ShortVectorKernel(const Mat& gram) : n_(gram.rows()) {
  if (!gram.is_square() || n_ == 0) throw DimensionError("kernel needs a nonempty square Gram matrix");
  const Int den = gram.common_denominator();
  den_ = to_int64(den);
  g_.resize(n_ * n_);
  Mat scaled = gram * Rat(den);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) g_[i * n_ + j] = to_int64(scaled(i, j));

  // Exact LDL^T, rounded once.
  std::vector<Rat> d(n_);
  std::vector<Rat> l(n_ * n_, Rat(0));
  for (std::size_t j = 0; j < n_; ++j) {
    Rat s = scaled(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l[j * n_ + k] * l[j * n_ + k] * d[k];
    if (s <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    d[j] = s;
    for (std::size_t i = j + 1; i < n_; ++i) {
      Rat t = scaled(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l[i * n_ + k] * l[j * n_ + k] * d[k];
      l[i * n_ + j] = t / s;
    }
  }
  d_.resize(n_);
  l_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    d_[i] = static_cast<long double>(d[i].get_d());
    for (std::size_t j = 0; j < i; ++j) {
      // Split the conversion to keep more than double precision.
      const double hi = l[i * n_ + j].get_d();
      const Rat rest = l[i * n_ + j] - Rat(hi);
      l_[i * n_ + j] = static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
    }
  }
}

std::int64_t ShortVectorKernel::scaled(const Rat& norm) const {
  const Rat s = norm * den_;
  if (!is_integer(s)) return -1;
  return to_int64(s);
}

void ShortVectorKernel::set_level(State& st, std::size_t i, std::int64_t v) const {
  const std::size_t n = n_;
  st.x[i] = v;
  const long double y = static_cast<long double>(v) + st.cen[(i + 1) * n + i];
  st.fpart[i] = st.fpart[i + 1] + d_[i] * y * y;
  st.epart[i] = st.epart[i + 1] + v * (g_[i * n + i] * v + 2 * st.acc[(i + 1) * n + i]);
  const long double* lrow = &l_[i * n];
  const std::int64_t* grow = &g_[i * n];
  long double* cdst = &st.cen[i * n];
  const long double* csrc = &st.cen[(i + 1) * n];
  std::int64_t* adst = &st.acc[i * n];
  const std::int64_t* asrc = &st.acc[(i + 1) * n];
  for (std::size_t l = 0; l < i; ++l) {
    cdst[l] = csrc[l] + lrow[l] * v;
    adst[l] = asrc[l] + grow[l] * v;
  }
  if (i > 0) st.zero_above[i - 1] = st.zero_above[i] && v == 0;
}

bool ShortVectorKernel::level_range(const State& st, std::size_t i, std::int64_t hi, std::int64_t& a,
                                    std::int64_t& b) const {
  const long double bound = static_cast<long double>(hi);
  const long double margin = 1e-9L * (1.0L + bound);
  const long double rem = bound - st.fpart[i + 1];
  if (rem < -margin) return false;
  const long double c = -st.cen[(i + 1) * n_ + i];
  const long double r = std::sqrt((rem > 0 ? rem : 0.0L) / d_[i]);
  const long double slack = 1e-9L * (1.0L + std::fabs(c) + r);
  a = static_cast<std::int64_t>(std::ceil(c - r - slack));
  b = static_cast<std::int64_t>(std::floor(c + r + slack));
  if (st.zero_above[i]) a = std::max<std::int64_t>(a, i == 0 ? 1 : 0);
  return a <= b;
}

void ShortVectorKernel::recurse(State& st, std::size_t i, std::int64_t lo, std::int64_t hi, int slot,
                                const Visitor& visit, std::atomic<bool>& stop) const {
  std::int64_t a, b;
  if (!level_range(st, i, hi, a, b)) return;
  for (std::int64_t v = a; v <= b; ++v) {
    set_level(st, i, v);
    if (i == 0) {
      const std::int64_t e = st.epart[0];
      if (e >= lo && e <= hi && !visit(slot, st.x.data(), e)) {
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    } else {
      recurse(st, i - 1, lo, hi, slot, visit, stop);
      if (stop.load(std::memory_order_relaxed)) return;
    }
  }
}

void ShortVectorKernel::run_serial(std::int64_t lo, std::int64_t hi, const Visitor& visit) const {
  if (hi < 0 || hi < lo) return;
  State st(n_);
  std::atomic<bool> stop{false};
  recurse(st, n_ - 1, lo, hi, 0, visit, stop);
}

void ShortVectorKernel::collect(State& st, std::size_t i, std::size_t split, std::int64_t hi,
                                std::vector<std::int64_t>& out) const {
  std::int64_t a, b;
  if (!level_range(st, i, hi, a, b)) return;
  for (std::int64_t v = a; v <= b; ++v) {
    set_level(st, i, v);
    if (i == split) {
      out.insert(out.end(), st.x.begin() + static_cast<std::ptrdiff_t>(split), st.x.end());
    } else {
      collect(st, i - 1, split, hi, out);
    }
  }
}

void ShortVectorKernel::run_parallel(std::int64_t lo, std::int64_t hi, int workers, const Visitor& visit) const {
  if (hi < 0 || hi < lo) return;
  if (workers <= 1 || n_ < 3) {
    run_serial(lo, hi, visit);
    return;
  }
  // Grow the prefix depth until there are enough tasks to balance.
  const std::size_t target = static_cast<std::size_t>(workers) * 64;
  std::vector<std::int64_t> prefixes;
  std::size_t split = n_ - 1;
  for (;;) {
    prefixes.clear();
    State st(n_);
    collect(st, n_ - 1, split, hi, prefixes);
    const std::size_t count = prefixes.size() / (n_ - split);
    if (count >= target || split <= 1 || split <= n_ / 2) break;
    --split;
  }
  const std::size_t width = n_ - split;
  const std::size_t tasks = prefixes.size() / width;
  std::atomic<bool> stop{false};

#pragma omp parallel num_threads(workers)
  {
    State st(n_);
    const int slot = omp_get_thread_num();
#pragma omp for schedule(dynamic, 1)
    for (std::size_t t = 0; t < tasks; ++t) {
      if (stop.load(std::memory_order_relaxed)) continue;
      for (std::size_t k = 0; k < width; ++k) {
        const std::size_t level = n_ - 1 - k;
        set_level(st, level, prefixes[t * width + (level - split)]);
      }
      recurse(st, split - 1, lo, hi, slot, visit, stop);
    }
  }
}

}  // namespace latdesign
