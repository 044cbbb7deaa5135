#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "latdesign/lattice.hpp"
#include "latdesign/shells.hpp"

namespace oracle {

using latdesign::Int;
using latdesign::Lattice;
using latdesign::Mat;
using latdesign::Rat;

using Vec = std::vector<std::int64_t>;

/// mpq_class(a, b) is not reduced; comparisons need canonical values.
inline Rat q(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

inline Rat norm_of(const Mat& g, const Vec& x) {
  Rat s(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += g(i, j) * Rat(static_cast<long>(x[i] * x[j]));
  return s;
}

/// Every x with x^T G x <= max lies in |x_i| <= sqrt(max (G^-1)_ii).
inline std::vector<std::int64_t> box(const Mat& g, const Rat& max) {
  const Mat gi = g.inverse();
  std::vector<std::int64_t> b(g.rows());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Rat lim = gi(i, i) * max;
    std::int64_t v = 0;
    while (Rat(static_cast<long>((v + 1) * (v + 1))) <= lim) ++v;
    b[i] = v;
  }
  return b;
}

/// All vectors of norm exactly m, sorted lexicographically.
inline std::vector<Vec> box_shell(const Lattice& l, const Rat& m) {
  const Mat& g = l.gram();
  const auto b = box(g, m);
  const std::size_t n = b.size();
  std::vector<Vec> out;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -b[i];
  while (true) {
    if (norm_of(g, x) == m) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == b[i]) x[i] = -b[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vec> rows(const latdesign::ShellSet& s) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto r = s.row(i);
    out.emplace_back(r.begin(), r.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Product of random elementary row operations and sign flips.
inline latdesign::IntMatrix unimodular(std::size_t n, std::mt19937_64& rng, std::size_t steps) {
  latdesign::IntMatrix u(n, latdesign::IntRow(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto a = pick(rng), c = pick(rng);
    if (a == c) {
      for (auto& v : u[a]) v = -v;
    } else {
      const int k = (rng() & 1) ? 1 : -1;
      for (std::size_t j = 0; j < n; ++j) u[a][j] += k * u[c][j];
    }
  }
  return u;
}

/// Positive definite integral Gram matrix B B^T from a random integer B.
inline Mat random_gram(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  while (true) {
    Mat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
    if (b.determinant() != 0) return b * b.transpose();
  }
}

}  // namespace oracle
