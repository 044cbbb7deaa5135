#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latdesign/shells.hpp"

namespace latdesign {

/// c_k = 1*3*...*(k-1) / (n (n+2) ... (n+k-2)) * size, for even k >= 2.
Rat c_k(std::size_t n, const Rat& size, unsigned k);

/// Exact sum over X of (x, alpha)^k for an ambient vector alpha (the
/// lattice needs a basis).
Rat moment_sum(const ShellSet& x, std::span<const Rat> alpha, unsigned k);
/// Same with alpha given by rational coordinates in the lattice basis.
Rat moment_sum_coords(const ShellSet& x, std::span<const Rat> alpha_coords, unsigned k);
/// Sum over X of (x . beta)^k where beta pairs with basis coordinates.
Rat moment_sum_dual(const ShellSet& x, std::span<const Rat> beta, unsigned k);
/// Right hand side c_k m^(k/2) (beta^T G^-1 beta)^(k/2) of the design identity.
Rat design_rhs(const ShellSet& x, std::span<const Rat> beta, unsigned k);

enum class DesignMode { Auto, Exact, Screen };

struct DesignOptions {
  DesignMode mode = DesignMode::Auto;
  unsigned screen_trials = 200;
  std::uint64_t seed = 20240101;
  /// Auto mode runs the exact tensor only if the monomial work (sum over
  /// half the shell of the number of degree-k monomials in each vector's
  /// support) stays under this bound.
  double exact_budget = 2.5e10;
  /// Auto mode on shells larger than this uses the screen above degree 4.
  std::size_t large_shell = 1000000;
  int workers = 0;
};

struct DegreeEvidence {
  unsigned degree = 0;
  std::string method;  // antipodal | tensor | screen | odd-tensor
  bool holds = false;
  std::uint64_t monomials = 0;
  double work = 0;
  unsigned trials = 0;
  /// For a failed check: the offending monomial (tensor) or the beta vector
  /// (screen), with both sides of the identity.
  std::vector<std::int64_t> witness;
  std::string lhs, rhs;
};

struct TensorCheck {
  bool holds = false;
  std::uint64_t monomials = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::int64_t> first_mismatch;  // multiset of coordinate indices
  std::string lhs, rhs;
};

/// Coefficient-wise comparison of the degree-k moment tensor (k even) with
/// c_k m^(k/2) times the tensor of (beta^T G^-1 beta)^(k/2). For odd k the
/// tensor is compared with zero.
TensorCheck tensor_check(const ShellSet& x, unsigned k, int workers = 0);

struct ScreenCheck {
  bool holds = false;
  unsigned trials = 0;
  std::vector<std::int64_t> witness;
  std::string lhs, rhs;
};

/// Evaluates the degree-k identity at random integer beta. A mismatch is an
/// exact disproof; agreement on every trial is only evidence.
ScreenCheck screen_check(const ShellSet& x, unsigned k, unsigned trials, std::uint64_t seed, int workers = 0);

/// Work estimate for tensor_check.
double tensor_work(const ShellSet& x, unsigned k);

bool is_antipodal(const ShellSet& x);

struct DesignStrength {
  unsigned t = 0;
  bool capped = false;
  std::vector<DegreeEvidence> evidence;
};

bool is_t_design(const ShellSet& x, unsigned t, const DesignOptions& opts = {});
DesignStrength design_strength(const ShellSet& x, unsigned t_max, const DesignOptions& opts = {});

/// Pairwise inner products of distinct vectors, ascending.
std::vector<Rat> distance_set(const ShellSet& x, const EnumerationOptions& opts = {});

struct Configuration {
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  unsigned t = 0;
  bool capped = false;
  std::vector<Rat> distances;
  DesignStrength strength;
};

Configuration configuration(const ShellSet& x, unsigned t_max, const DesignOptions& opts = {});

}  // namespace latdesign
