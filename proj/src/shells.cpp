#include "latdesign/shells.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

namespace latdesign {
namespace {

struct Prepared {
  ReducedBasis reduced;
  ShortVectorKernel kernel;
  bool identity;
};

bool is_identity(const IntMatrix& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      if (t[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

Prepared prepare(const Lattice& lattice) {
  ReducedBasis rb = reduce_basis(lattice);
  ShortVectorKernel k(rb.lattice.gram());
  const bool id = is_identity(rb.transform);
  return Prepared{std::move(rb), std::move(k), id};
}

void run(const Prepared& p, std::int64_t lo, std::int64_t hi, const EnumerationOptions& opts, int workers,
         const ShortVectorKernel::Visitor& visit) {
  if (opts.use_serial_reference)
    p.kernel.run_serial(lo, hi, visit);
  else
    p.kernel.run_parallel(lo, hi, workers, visit);
}

std::int32_t narrow(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
    throw std::overflow_error("shell coordinate does not fit 32 bits");
  return static_cast<std::int32_t>(v);
}

std::int64_t scaled_norm(const ShortVectorKernel& k, const Rat& norm) {
  if (norm <= 0) throw std::invalid_argument("shell norm must be positive");
  return k.scaled(norm);
}

}  // namespace

ShellSet::ShellSet(std::shared_ptr<const Lattice> lattice, Rat norm, std::vector<std::int32_t> coords)
    : lattice_(std::move(lattice)), norm_(std::move(norm)), coords_(std::move(coords)) {
  if (coords_.size() % lattice_->dim() != 0) throw DimensionError("shell storage is not a whole number of rows");
}

LatticeVector ShellSet::vector(std::size_t i) const {
  auto r = row(i);
  return LatticeVector{std::vector<std::int64_t>(r.begin(), r.end())};
}

std::size_t ShellSet::find(std::span<const std::int32_t> v) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto r = row(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), v.begin(), v.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size()) {
    auto r = row(lo);
    if (std::equal(r.begin(), r.end(), v.begin(), v.end())) return lo;
  }
  return size();
}

std::int64_t ShellSet::denominator() const { return to_int64(lattice_->gram().common_denominator()); }

std::vector<std::int64_t> ShellSet::gram_products() const {
  const std::size_t n = dim(), m = size();
  const std::int64_t den = denominator();
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = to_int64(lattice_->gram()(i, j) * den);
  std::vector<std::int64_t> y(m * n, 0);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < m; ++r) {
    const std::int32_t* x = coords_.data() + r * n;
    std::int64_t* out = y.data() + r * n;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      const std::int64_t* gi = &g[i * n];
      for (std::size_t j = 0; j < n; ++j) out[j] += x[i] * gi[j];
    }
  }
  return y;
}

ShellSet enumerate_shell(std::shared_ptr<const Lattice> lattice, const Rat& norm, const EnumerationOptions& opts) {
  const Prepared p = prepare(*lattice);
  const std::int64_t target = scaled_norm(p.kernel, norm);
  const std::size_t n = lattice->dim();
  if (target < 0) return ShellSet(lattice, norm, {});

  const int workers = resolve_workers(opts.workers);
  std::vector<std::vector<std::int32_t>> buffers(static_cast<std::size_t>(std::max(workers, 1)));
  std::atomic<std::size_t> total{0};
  std::atomic<bool> overflow{false};
  const std::size_t half_cap = opts.max_vectors / 2;

  std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i][j] = to_int64(p.reduced.transform[i][j]);

  run(p, target, target, opts, workers, [&](int slot, const std::int64_t* x, std::int64_t) {
    if (total.fetch_add(1, std::memory_order_relaxed) + 1 > half_cap) {
      overflow.store(true);
      return false;
    }
    auto& buf = buffers[static_cast<std::size_t>(slot)];
    if (p.identity) {
      for (std::size_t j = 0; j < n; ++j) buf.push_back(narrow(x[j]));
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (x[i] != 0) s += x[i] * u[i][j];
        buf.push_back(narrow(s));
      }
    }
    return true;
  });
  if (overflow.load())
    throw ResourceError("shell of norm " + to_string(norm) + " exceeds the cap of " +
                        std::to_string(opts.max_vectors) + " vectors");

  const std::size_t half = total.load();
  std::vector<std::int32_t> flat;
  flat.reserve(2 * half * n);
  for (auto& b : buffers) {
    flat.insert(flat.end(), b.begin(), b.end());
    std::vector<std::int32_t>().swap(b);
  }
  for (std::size_t r = 0; r < half; ++r)
    for (std::size_t j = 0; j < n; ++j) flat.push_back(-flat[r * n + j]);

  // Canonical order.
  const std::size_t m = 2 * half;
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const std::int32_t* pa = flat.data() + static_cast<std::size_t>(a) * n;
    const std::int32_t* pb = flat.data() + static_cast<std::size_t>(b) * n;
    return std::lexicographical_compare(pa, pa + n, pb, pb + n);
  });
  std::vector<std::int32_t> sorted(m * n);
  for (std::size_t r = 0; r < m; ++r)
    std::copy_n(flat.data() + static_cast<std::size_t>(order[r]) * n, n, sorted.data() + r * n);
  return ShellSet(std::move(lattice), norm, std::move(sorted));
}

ShellSet enumerate_shell(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts) {
  return enumerate_shell(std::make_shared<const Lattice>(lattice), norm, opts);
}

std::uint64_t shell_size(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts) {
  const Prepared p = prepare(lattice);
  const std::int64_t target = scaled_norm(p.kernel, norm);
  if (target < 0) return 0;
  std::atomic<std::uint64_t> total{0};
  run(p, target, target, opts, resolve_workers(opts.workers), [&](int, const std::int64_t*, std::int64_t) {
    total.fetch_add(1, std::memory_order_relaxed);
    return true;
  });
  return 2 * total.load();
}

bool shell_nonempty(const Lattice& lattice, const Rat& norm, const EnumerationOptions& opts) {
  const Prepared p = prepare(lattice);
  const std::int64_t target = scaled_norm(p.kernel, norm);
  if (target < 0) return false;
  std::atomic<bool> found{false};
  run(p, target, target, opts, resolve_workers(opts.workers), [&](int, const std::int64_t*, std::int64_t) {
    found.store(true);
    return false;
  });
  return found.load();
}

ThetaPrefix theta_prefix(const Lattice& lattice, std::size_t max_norm, const EnumerationOptions& opts) {
  if (max_norm == 0) throw std::invalid_argument("theta prefix needs max norm >= 1");
  const Prepared p = prepare(lattice);
  const std::int64_t den = p.kernel.denominator();
  const std::int64_t hi = static_cast<std::int64_t>(max_norm) * den;
  const int workers = resolve_workers(opts.workers);
  std::vector<std::vector<std::uint64_t>> hist(static_cast<std::size_t>(std::max(workers, 1)),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(hi) + 1, 0));
  run(p, 1, hi, opts, workers, [&](int slot, const std::int64_t*, std::int64_t e) {
    ++hist[static_cast<std::size_t>(slot)][static_cast<std::size_t>(e)];
    return true;
  });
  ThetaPrefix out;
  out.max_norm = max_norm;
  out.counts.assign(max_norm + 1, 0);
  out.counts[0] = 1;
  for (const auto& h : hist)
    for (std::size_t m = 1; m <= max_norm; ++m) out.counts[m] += 2 * h[m * static_cast<std::size_t>(den)];
  return out;
}

Rat minimum(const Lattice& lattice, const EnumerationOptions& opts) {
  const Prepared p = prepare(lattice);
  const auto& g = p.kernel.scaled_gram();
  const std::size_t n = p.kernel.dim();
  std::int64_t hi = g[0];
  for (std::size_t i = 1; i < n; ++i) hi = std::min(hi, g[i * n + i]);
  std::atomic<std::int64_t> best{hi};
  run(p, 1, hi, opts, resolve_workers(opts.workers), [&](int, const std::int64_t*, std::int64_t e) {
    std::int64_t cur = best.load(std::memory_order_relaxed);
    while (e < cur && !best.compare_exchange_weak(cur, e, std::memory_order_relaxed)) {
    }
    return true;
  });
  Rat m(static_cast<long>(best.load()));
  m /= static_cast<long>(p.kernel.denominator());
  return m;
}

ShellSet minimal_shell(const Lattice& lattice, const EnumerationOptions& opts) {
  return enumerate_shell(lattice, minimum(lattice, opts), opts);
}

}  // namespace latdesign
