#include "latdesign/design.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace latdesign {
namespace {

using i128 = __int128;

Int to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Int hi(static_cast<unsigned long>(u >> 64));
  Int lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Int out = (hi << 64) + lo;
  return neg ? Int(-out) : out;
}

Int factorial(unsigned k) {
  Int f(1);
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

Int double_factorial_odd(unsigned k) {  // 1*3*...*(k-1), k even
  Int f(1);
  for (unsigned i = 1; i < k; i += 2) f *= i;
  return f;
}

class Binomials {
 public:
  Binomials(std::size_t a_max, std::size_t b_max) : bmax_(b_max), t_((a_max + 1) * (b_max + 1), 0) {
    for (std::size_t a = 0; a <= a_max; ++a)
      for (std::size_t b = 0; b <= b_max; ++b) {
        std::uint64_t v;
        if (b == 0) v = 1;
        else if (a == 0) v = 0;
        else v = at(a - 1, b - 1) + at(a - 1, b);
        t_[a * (bmax_ + 1) + b] = v;
      }
  }
  std::uint64_t at(std::size_t a, std::size_t b) const { return t_[a * (bmax_ + 1) + b]; }

 private:
  std::size_t bmax_;
  std::vector<std::uint64_t> t_;
};

std::uint64_t monomial_count(std::size_t n, unsigned k) {
  long double c = 1;
  for (unsigned j = 1; j <= k; ++j) c = c * static_cast<long double>(n + j - 1) / j;
  return static_cast<std::uint64_t>(std::llround(c));
}

// Colex rank of a sorted multiset i_0 <= ... <= i_{k-1}.
std::uint64_t multiset_rank(const Binomials& bin, const std::vector<std::size_t>& idx) {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) r += bin.at(idx[j] + j, j + 1);
  return r;
}

// Advances a sorted multiset over {0..n-1} to its colex successor.
bool next_multiset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t upper = (j + 1 < k) ? idx[j + 1] : n - 1;
    if (idx[j] < upper) {
      ++idx[j];
      for (std::size_t l = 0; l < j; ++l) idx[l] = 0;
      return true;
    }
  }
  return false;
}

Int multinomial(const std::vector<std::size_t>& idx) {
  Int out = factorial(static_cast<unsigned>(idx.size()));
  std::size_t run = 1;
  for (std::size_t j = 1; j <= idx.size(); ++j) {
    if (j < idx.size() && idx[j] == idx[j - 1]) {
      ++run;
    } else {
      out /= factorial(static_cast<unsigned>(run));
      run = 1;
    }
  }
  return out;
}

std::vector<std::size_t> half_rows(const ShellSet& x) {
  std::vector<std::size_t> out;
  const std::size_t n = x.dim();
  for (std::size_t r = 0; r < x.size(); ++r) {
    auto v = x.row(r);
    for (std::size_t j = n; j-- > 0;)
      if (v[j] != 0) {
        if (v[j] > 0) out.push_back(r);
        break;
      }
  }
  return out;
}

// Integer H = d G^{-1} with d the least such factor.
struct InverseForm {
  Mat ginv;
  Int d;
  std::vector<Int> h;  // n x n
};

InverseForm inverse_form(const Lattice& l) {
  InverseForm f;
  f.ginv = l.gram().inverse();
  f.d = f.ginv.common_denominator();
  const std::size_t n = l.dim();
  f.h.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.h[i * n + j] = to_int(f.ginv(i, j) * Rat(f.d));
  return f;
}

// Coefficients of (beta^T H beta)^(k/2) indexed by colex multiset rank.
std::vector<Int> quadratic_power(const std::vector<Int>& h, std::size_t n, unsigned k, const Binomials& bin) {
  std::vector<Int> p{Int(1)};
  for (unsigned deg = 0; deg < k; deg += 2) {
    std::vector<Int> next(monomial_count(n, deg + 2));
    std::vector<std::size_t> idx(deg, 0);
    std::vector<std::size_t> merged(deg + 2);
    std::uint64_t rank = 0;
    Int term;
    for (bool more = true; more; more = deg > 0 && next_multiset(idx, n), ++rank) {
      const Int& c = p[rank];
      if (c != 0) {
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = a; b < n; ++b) {
            const Int& hab = h[a * n + b];
            if (hab == 0) continue;
            term = c * hab;
            if (a != b) term *= 2;
            // Insert a <= b into the sorted multiset.
            std::size_t u = 0, w = 0;
            bool pa = false, pb = false;
            while (w < deg + 2) {
              if (!pa && (u == deg || a <= idx[u])) {
                merged[w++] = a;
                pa = true;
              } else if (pa && !pb && (u == deg || b <= idx[u])) {
                merged[w++] = b;
                pb = true;
              } else {
                merged[w++] = idx[u++];
              }
            }
            next[multiset_rank(bin, merged)] += term;
          }
      }
      if (deg == 0) break;
    }
    p = std::move(next);
  }
  return p;
}

template <typename Acc>
void accumulate(const ShellSet& x, const std::vector<std::size_t>& rows, unsigned k, const Binomials& bin,
                std::vector<Acc>& tensor, int workers) {
  const std::size_t n = x.dim();
  const std::size_t m = tensor.size();
  const int threads = std::max(1, workers);
  std::vector<std::vector<Acc>> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    local.assign(m, 0);
    std::vector<std::size_t> support;
    std::vector<std::int64_t> val;
    std::vector<std::uint64_t> rank_stack(k + 1);
    std::vector<std::int64_t> prod_stack(k + 1);
    std::vector<std::size_t> pos_stack(k + 1);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t t = 0; t < rows.size(); ++t) {
      auto v = x.row(rows[t]);
      support.clear();
      val.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0) {
          support.push_back(j);
          val.push_back(v[j]);
        }
      const std::size_t z = support.size();
      // Iterative walk over non-decreasing position sequences of length k.
      std::size_t level = 0;
      rank_stack[0] = 0;
      prod_stack[0] = 1;
      pos_stack[0] = 0;
      while (true) {
        if (level + 1 == k) {
          const std::uint64_t base = rank_stack[level];
          const std::int64_t pr = prod_stack[level];
          for (std::size_t p = pos_stack[level]; p < z; ++p)
            local[base + bin.at(support[p] + level, level + 1)] += static_cast<Acc>(pr) * val[p];
          if (level == 0) break;
          --level;
          ++pos_stack[level];
        } else {
          const std::size_t p = pos_stack[level];
          if (p >= z) {
            if (level == 0) break;
            --level;
            ++pos_stack[level];
            continue;
          }
          rank_stack[level + 1] = rank_stack[level] + bin.at(support[p] + level, level + 1);
          prod_stack[level + 1] = prod_stack[level] * val[p];
          pos_stack[level + 1] = p;
          ++level;
        }
      }
    }
  }
  for (auto& part : partial)
    for (std::size_t i = 0; i < m; ++i) tensor[i] += part[i];
}

std::int64_t max_abs_coord(const ShellSet& x) {
  std::int64_t mx = 0;
  for (auto c : x.data()) mx = std::max<std::int64_t>(mx, std::abs(static_cast<std::int64_t>(c)));
  return mx;
}

}  // namespace

Rat c_k(std::size_t n, const Rat& size, unsigned k) {
  if (k < 2 || k % 2) throw std::invalid_argument("c_k needs an even degree k >= 2");
  Rat num(double_factorial_odd(k));
  Rat den(1);
  for (unsigned j = 0; j < k / 2; ++j) den *= static_cast<unsigned long>(n + 2 * j);
  return num / den * size;
}

Rat moment_sum_dual(const ShellSet& x, std::span<const Rat> beta, unsigned k) {
  const std::size_t n = x.dim();
  if (beta.size() != n) throw DimensionError("beta has wrong length");
  Rat total(0), s;
  for (std::size_t r = 0; r < x.size(); ++r) {
    auto v = x.row(r);
    s = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0) s += beta[j] * static_cast<long>(v[j]);
    total += pow(s, k);
  }
  return total;
}

Rat moment_sum_coords(const ShellSet& x, std::span<const Rat> alpha_coords, unsigned k) {
  if (alpha_coords.size() != x.dim()) throw DimensionError("alpha has wrong length");
  return moment_sum_dual(x, mul_row(alpha_coords, x.lattice().gram()), k);
}

Rat moment_sum(const ShellSet& x, std::span<const Rat> alpha, unsigned k) {
  const Lattice& l = x.lattice();
  if (!l.has_basis()) throw std::invalid_argument("ambient moments need a lattice basis");
  if (alpha.size() != l.ambient_dim()) throw DimensionError("alpha has wrong ambient length");
  // (x, alpha) = x . (scale * B alpha)
  const Mat& b = *l.basis();
  std::vector<Rat> beta(l.dim(), Rat(0));
  for (std::size_t i = 0; i < l.dim(); ++i) beta[i] = dot(b.row(i), alpha) * l.ambient_scale();
  return moment_sum_dual(x, beta, k);
}

Rat design_rhs(const ShellSet& x, std::span<const Rat> beta, unsigned k) {
  if (k % 2) return Rat(0);
  const Mat ginv = x.lattice().gram().inverse();
  const Rat q = quadratic_form(ginv, beta, beta);
  return c_k(x.dim(), Rat(static_cast<unsigned long>(x.size())), k) * pow(x.norm() * q, k / 2);
}

bool is_antipodal(const ShellSet& x) {
  std::vector<std::int32_t> neg(x.dim());
  for (std::size_t r = 0; r < x.size(); ++r) {
    auto v = x.row(r);
    for (std::size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];
    if (x.find(neg) == x.size()) return false;
  }
  return true;
}

double tensor_work(const ShellSet& x, unsigned k) {
  const std::size_t n = x.dim();
  std::vector<double> per(n + 1, 0);
  for (std::size_t z = 0; z <= n; ++z) {
    long double c = 1;
    for (unsigned j = 1; j <= k; ++j) c = c * static_cast<long double>(z + j - 1) / j;
    per[z] = static_cast<double>(c);
  }
  double w = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    std::size_t z = 0;
    for (auto c : x.row(r)) z += c != 0;
    w += per[z];
  }
  return (k % 2 == 0) ? w / 2 : w;
}

TensorCheck tensor_check(const ShellSet& x, unsigned k, int workers) {
  if (x.empty()) throw std::invalid_argument("design test on an empty set");
  if (k == 0) return TensorCheck{true, 1, 0, {}, {}, {}};
  const std::size_t n = x.dim();
  const Binomials bin(n + k + 1, k + 1);
  const std::uint64_t m = monomial_count(n, k);
  const bool even = k % 2 == 0;
  std::vector<std::size_t> rows;
  if (even) {
    rows = half_rows(x);
    if (rows.size() * 2 != x.size()) rows.clear();
  }
  const bool halved = !rows.empty();
  if (!halved) {
    rows.resize(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) rows[r] = r;
  }

  // Overflow guard for 64-bit accumulation.
  const long double bound = static_cast<long double>(rows.size()) * std::pow(static_cast<long double>(max_abs_coord(x)), k);
  std::vector<Int> tensor(m);
  const int threads = resolve_workers(workers);
  if (bound < 4.0e18L) {
    std::vector<std::int64_t> t(m, 0);
    accumulate(x, rows, k, bin, t, threads);
    for (std::size_t i = 0; i < m; ++i) tensor[i] = Int(static_cast<long>(t[i]));
  } else if (bound < 1.0e37L) {
    std::vector<i128> t(m, 0);
    accumulate(x, rows, k, bin, t, threads);
    for (std::size_t i = 0; i < m; ++i) tensor[i] = to_mpz(t[i]);
  } else {
    throw ResourceError("moment tensor entries exceed 128-bit accumulation");
  }
  if (halved)
    for (auto& v : tensor) v *= 2;

  TensorCheck out;
  out.monomials = m;
  std::vector<std::size_t> idx(k, 0);
  if (!even) {
    std::uint64_t rank = 0;
    do {
      if (tensor[rank] != 0) {
        if (out.mismatches++ == 0) {
          out.first_mismatch.assign(idx.begin(), idx.end());
          out.lhs = to_string(tensor[rank]);
          out.rhs = "0";
        }
      }
      ++rank;
    } while (next_multiset(idx, n));
    out.holds = out.mismatches == 0;
    return out;
  }

  // multinomial * T * prod(n+2j) * d^(k/2) * mden^(k/2) == (k-1)!! |X| mnum^(k/2) P
  const InverseForm inv = inverse_form(x.lattice());
  const std::vector<Int> p = quadratic_power(inv.h, n, k, bin);
  Int a(1);
  for (unsigned j = 0; j < k / 2; ++j) a *= static_cast<unsigned long>(n + 2 * j);
  a *= pow(inv.d, k / 2);
  a *= pow(Int(x.norm().get_den()), k / 2);
  Int b = double_factorial_odd(k) * static_cast<unsigned long>(x.size()) * pow(Int(x.norm().get_num()), k / 2);
  std::uint64_t rank = 0;
  Int lhs, rhs;
  do {
    lhs = multinomial(idx) * tensor[rank] * a;
    rhs = b * p[rank];
    if (lhs != rhs && out.mismatches++ == 0) {
      out.first_mismatch.assign(idx.begin(), idx.end());
      out.lhs = to_string(lhs);
      out.rhs = to_string(rhs);
    }
    ++rank;
  } while (next_multiset(idx, n));
  out.holds = out.mismatches == 0;
  return out;
}

ScreenCheck screen_check(const ShellSet& x, unsigned k, unsigned trials, std::uint64_t seed, int workers) {
  if (x.empty()) throw std::invalid_argument("design test on an empty set");
  const std::size_t n = x.dim();
  const bool even = k % 2 == 0;
  std::vector<std::size_t> rows;
  if (even) {
    rows = half_rows(x);
    if (rows.size() * 2 != x.size()) rows.clear();
  }
  const bool halved = !rows.empty();
  if (!halved) {
    rows.resize(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) rows[r] = r;
  }
  const Mat ginv = x.lattice().gram().inverse();
  const Rat ck = even ? c_k(n, Rat(static_cast<unsigned long>(x.size())), k) : Rat(0);
  const std::int64_t range = 64;
  const std::int64_t maxc = max_abs_coord(x);
  const long double smax = static_cast<long double>(n) * maxc * range;
  const bool wide_ok = static_cast<long double>(rows.size()) * std::pow(smax, k) < 1.0e37L;

  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
  std::uniform_int_distribution<std::int64_t> dist(-range, range);
  const int threads = resolve_workers(workers);
  ScreenCheck out;
  out.holds = true;
  std::vector<std::int64_t> beta(n);
  for (unsigned trial = 0; trial < trials; ++trial) {
    bool nonzero = false;
    for (auto& bv : beta) {
      bv = dist(rng);
      nonzero = nonzero || bv != 0;
    }
    if (!nonzero) beta[0] = 1;
    Int lhs(0);
    if (wide_ok) {
      std::vector<i128> part(static_cast<std::size_t>(threads), 0);
#pragma omp parallel num_threads(threads)
      {
        i128 acc = 0;
#pragma omp for schedule(static)
        for (std::size_t t = 0; t < rows.size(); ++t) {
          auto v = x.row(rows[t]);
          std::int64_t s = 0;
          for (std::size_t j = 0; j < n; ++j) s += static_cast<std::int64_t>(v[j]) * beta[j];
          i128 p = 1;
          for (unsigned e = 0; e < k; ++e) p *= s;
          acc += p;
        }
        part[static_cast<std::size_t>(omp_get_thread_num())] = acc;
      }
      i128 total = 0;
      for (auto pv : part) total += pv;
      lhs = to_mpz(total);
    } else {
      Int s, p;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        auto v = x.row(rows[t]);
        std::int64_t sv = 0;
        for (std::size_t j = 0; j < n; ++j) sv += static_cast<std::int64_t>(v[j]) * beta[j];
        s = static_cast<long>(sv);
        mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), k);
        lhs += p;
      }
    }
    if (halved) lhs *= 2;
    Rat rhs(0);
    if (even) {
      std::vector<Rat> b(n);
      for (std::size_t j = 0; j < n; ++j) b[j] = static_cast<long>(beta[j]);
      rhs = ck * pow(x.norm() * quadratic_form(ginv, b, b), k / 2);
    }
    ++out.trials;
    if (Rat(lhs) != rhs) {
      out.holds = false;
      out.witness = beta;
      out.lhs = to_string(lhs);
      out.rhs = to_string(rhs);
      break;
    }
  }
  return out;
}

namespace {

DegreeEvidence check_degree(const ShellSet& x, unsigned k, bool antipodal, const DesignOptions& opts) {
  DegreeEvidence ev;
  ev.degree = k;
  if (k % 2 == 1) {
    if (antipodal) {
      ev.method = "antipodal";
      ev.holds = true;
      return ev;
    }
    const TensorCheck t = tensor_check(x, k, opts.workers);
    ev.method = "odd-tensor";
    ev.holds = t.holds;
    ev.monomials = t.monomials;
    ev.witness = t.first_mismatch;
    ev.lhs = t.lhs;
    ev.rhs = t.rhs;
    return ev;
  }
  ev.work = tensor_work(x, k);
  const bool exact =
      opts.mode == DesignMode::Exact ||
      (opts.mode == DesignMode::Auto && ev.work <= opts.exact_budget && (x.size() <= opts.large_shell || k <= 4));
  if (opts.screen_trials > 0 || !exact) {
    const ScreenCheck s = screen_check(x, k, std::max(1u, opts.screen_trials), opts.seed, opts.workers);
    ev.trials = s.trials;
    if (!s.holds) {
      ev.method = "screen";
      ev.holds = false;
      ev.witness = s.witness;
      ev.lhs = s.lhs;
      ev.rhs = s.rhs;
      return ev;
    }
  }
  if (!exact) {
    ev.method = "screen";
    ev.holds = true;
    return ev;
  }
  const TensorCheck t = tensor_check(x, k, opts.workers);
  ev.method = "tensor";
  ev.holds = t.holds;
  ev.monomials = t.monomials;
  ev.witness = t.first_mismatch;
  ev.lhs = t.lhs;
  ev.rhs = t.rhs;
  return ev;
}

}  // namespace

DesignStrength design_strength(const ShellSet& x, unsigned t_max, const DesignOptions& opts) {
  if (x.empty()) throw std::invalid_argument("design strength of an empty set");
  DesignStrength out;
  const bool antipodal = is_antipodal(x);
  for (unsigned t = 1; t <= t_max; ++t) {
    DegreeEvidence ev = check_degree(x, t, antipodal, opts);
    const bool holds = ev.holds;
    out.evidence.push_back(std::move(ev));
    if (!holds) {
      out.t = t - 1;
      return out;
    }
  }
  out.t = t_max;
  out.capped = true;
  return out;
}

bool is_t_design(const ShellSet& x, unsigned t, const DesignOptions& opts) {
  if (x.empty()) throw std::invalid_argument("design test on an empty set");
  const bool antipodal = is_antipodal(x);
  for (unsigned k = 1; k <= t; ++k)
    if (!check_degree(x, k, antipodal, opts).holds) return false;
  return true;
}

std::vector<Rat> distance_set(const ShellSet& x, const EnumerationOptions& opts) {
  if (x.size() < 2) throw std::invalid_argument("distance set needs at least two vectors");
  const Lattice& l = x.lattice();
  const std::size_t n = x.dim();
  const std::int64_t den = x.denominator();
  const Rat m = x.norm();
  const std::int64_t ms = to_int64(m * den);  // norm in units of 1/den
  const bool antipodal = is_antipodal(x);

  // Candidates gamma = v / den with -ms < v < ms; the vector x - y has norm
  // 2m - 2 gamma and x + y has norm 2m + 2 gamma.
  std::set<std::int64_t> found;
  if (antipodal) found.insert(-ms);
  std::set<std::int64_t> open;
  for (std::int64_t v = -ms + 1; v < ms; ++v) {
    const Rat gamma = Rat(static_cast<long>(v)) / den;
    if (!shell_nonempty(l, 2 * m - 2 * gamma, opts)) continue;
    if (!shell_nonempty(l, 2 * m + 2 * gamma, opts)) continue;
    open.insert(v);
  }

  const std::vector<std::int64_t> y = x.gram_products();
  const std::size_t total = x.size();
  for (std::size_t i = 0; i < total && !open.empty(); ++i) {
    const std::int64_t* yi = y.data() + i * n;
    for (std::size_t j = 0; j < total && !open.empty(); ++j) {
      if (j == i) continue;
      auto v = x.row(j);
      std::int64_t s = 0;
      for (std::size_t c = 0; c < n; ++c) s += yi[c] * v[c];
      if (open.erase(s)) {
        found.insert(s);
        if (antipodal && s != -ms && open.erase(-s)) found.insert(-s);
      } else if (!antipodal && s == -ms) {
        found.insert(s);
      }
    }
  }
  std::vector<Rat> out;
  for (auto v : found) out.push_back(Rat(static_cast<long>(v)) / den);
  return out;
}

Configuration configuration(const ShellSet& x, unsigned t_max, const DesignOptions& opts) {
  Configuration c;
  c.d = x.dim();
  c.n = x.size();
  EnumerationOptions eo;
  eo.workers = opts.workers;
  c.distances = distance_set(x, eo);
  c.s = c.distances.size();
  c.strength = design_strength(x, t_max, opts);
  c.t = c.strength.t;
  c.capped = c.strength.capped;
  return c;
}

}  // namespace latdesign
