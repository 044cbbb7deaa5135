#include "latdesign/hnf.hpp"

#include <algorithm>
#include <utility>

namespace latdesign {
namespace {

void combine_rows(IntRow& x, IntRow& y, const Int& a, const Int& b, const Int& c, const Int& d) {
  // (x, y) <- (a x + b y, c x + d y)
  Int nx, ny;
  for (std::size_t j = 0; j < x.size(); ++j) {
    nx = a * x[j] + b * y[j];
    ny = c * x[j] + d * y[j];
    x[j] = nx;
    y[j] = ny;
  }
}

void sub_multiple(IntRow& x, const IntRow& y, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (y[j] != 0) x[j] -= q * y[j];
}

}  // namespace

HermiteForm hermite_form(IntMatrix a, bool track_transform) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  IntMatrix u;
  if (track_transform) {
    u.assign(m, IntRow(m, Int(0)));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  }

  std::size_t r = 0;
  Int g, s, t, fa, fb, q;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (track_transform) std::swap(u[p], u[r]);
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a[i][c] == 0) continue;
      const Int x = a[r][c];
      const Int y = a[i][c];
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      fa = -y / g;
      fb = x / g;
      combine_rows(a[r], a[i], s, t, fa, fb);
      if (track_transform) combine_rows(u[r], u[i], s, t, fa, fb);
    }
    if (a[r][c] < 0) {
      for (auto& v : a[r]) v = -v;
      if (track_transform)
        for (auto& v : u[r]) v = -v;
    }
    const Int& pivot = a[r][c];
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), pivot.get_mpz_t());
      if (q == 0) continue;
      const IntRow pr = a[r];
      sub_multiple(a[i], pr, q);
      if (track_transform) sub_multiple(u[i], u[r], q);
    }
    ++r;
  }
  return HermiteForm{std::move(a), std::move(u), r};
}

IntMatrix scaled_integer_matrix(const Mat& m, const Int& scale) {
  IntMatrix out(m.rows(), IntRow(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_int(m(i, j) * Rat(scale));
  return out;
}

Mat to_rational(const IntMatrix& m, std::size_t cols) {
  Mat out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rat(m[i][j]);
  return out;
}

Mat hnf_basis(const Mat& generators, std::optional<std::size_t> required_rank) {
  const Int den = generators.common_denominator();
  HermiteForm hf = hermite_form(scaled_integer_matrix(generators, den));
  if (required_rank && hf.rank < *required_rank)
    throw RankDeficiencyError("generators have rank " + std::to_string(hf.rank) + ", expected " +
                              std::to_string(*required_rank));
  Mat out(hf.rank, generators.cols());
  const Rat inv_den = Rat(1) / Rat(den);
  for (std::size_t i = 0; i < hf.rank; ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) out(i, j) = Rat(hf.h[i][j]) * inv_den;
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  HermiteForm hf = hermite_form(a, true);
  IntMatrix kernel;
  for (std::size_t i = hf.rank; i < hf.h.size(); ++i) kernel.push_back(hf.transform[i]);
  // Canonical form of the kernel module itself.
  if (kernel.empty()) return kernel;
  HermiteForm kf = hermite_form(kernel);
  kf.h.resize(kf.rank);
  return kf.h;
}

}  // namespace latdesign
