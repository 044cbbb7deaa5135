#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latdesign/hnf.hpp"
#include "latdesign/rational.hpp"

namespace latdesign {

/// Integer coordinates with respect to a lattice basis.
struct LatticeVector {
  std::vector<std::int64_t> coords;

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;
  LatticeVector operator-() const;
  bool operator==(const LatticeVector&) const = default;
  auto operator<=>(const LatticeVector&) const = default;
};

using AmbientVector = std::vector<Rat>;

/// A positive definite Z-lattice given by its Gram matrix, optionally with an
/// explicit basis in rational ambient coordinates. The ambient inner product
/// is `ambient_scale` times the standard dot product, which realizes
/// embeddings such as sqrt(2) E8 or sqrt(3) Z without irrationals.
class Lattice {
 public:
  static Lattice from_gram(Mat gram, std::string label = {});
  static Lattice from_basis(Mat basis, Rat ambient_scale = Rat(1), std::string label = {});

  std::size_t dim() const { return gram_.rows(); }
  const Mat& gram() const { return gram_; }
  const std::optional<Mat>& basis() const { return basis_; }
  bool has_basis() const { return basis_.has_value(); }
  std::size_t ambient_dim() const { return basis_ ? basis_->cols() : 0; }
  const Rat& ambient_scale() const { return scale_; }
  const std::string& label() const { return label_; }
  Lattice with_label(std::string label) const;

  bool is_integral() const { return gram_.is_integral(); }
  bool is_even() const;

  Rat inner(const LatticeVector& a, const LatticeVector& b) const;
  Rat norm(const LatticeVector& a) const { return inner(a, a); }
  /// Inner product of a lattice vector with an arbitrary ambient vector.
  Rat inner_ambient(const LatticeVector& a, std::span<const Rat> v) const;
  AmbientVector ambient(const LatticeVector& v) const;
  /// Ambient inner product (scale times dot product).
  Rat ambient_inner(std::span<const Rat> a, std::span<const Rat> b) const;
  /// Coordinates of an ambient vector in this basis; nullopt when the
  /// vector is outside the lattice (or outside its span).
  std::optional<LatticeVector> coordinates_of(std::span<const Rat> v) const;
  /// Rational coordinates in this basis; nullopt when outside the span.
  std::optional<std::vector<Rat>> rational_coordinates_of(std::span<const Rat> v) const;

  bool operator==(const Lattice&) const = default;

 private:
  Lattice() = default;
  Mat gram_;
  std::optional<Mat> basis_;
  Rat scale_{1};
  std::string label_;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rat determinant(const Lattice& lattice);

/// Lattice generated by `base` together with ambient glue vectors.
Lattice sublattice_with_glue(const Lattice& base, const std::vector<AmbientVector>& glue);

/// Re-based copy of `lattice` with its canonical HNF basis (ambient based
/// lattices only).
Lattice canonical_rebase(const Lattice& lattice);

Lattice orthogonal_complement(const Lattice& lattice, const LatticeVector& v);
Lattice orthogonal_complement(const Lattice& lattice, std::span<const LatticeVector> vs);

Lattice rescale(const Lattice& lattice, const Rat& factor);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_power(const Lattice& a, std::size_t copies);

/// Change of basis by an integer matrix with independent rows.
Lattice change_basis(const Lattice& lattice, const IntMatrix& rows);

struct ReducedBasis {
  Lattice lattice;
  IntMatrix transform;  // unimodular; new basis = transform * old basis
};

/// LLL-style conditioning of the basis. Decisions are taken in extended
/// floating point, but every step is an exact unimodular integer operation
/// and the returned Gram matrix is recomputed exactly.
ReducedBasis reduce_basis(const Lattice& lattice, long double delta = 0.99L);

/// Same point set in the ambient space (both lattices need bases).
bool same_lattice(const Lattice& a, const Lattice& b);
bool contains(const Lattice& lattice, std::span<const Rat> ambient_vector);
bool is_sublattice(const Lattice& small, const Lattice& big);

void write_lattice(std::ostream& out, const Lattice& lattice);
Lattice read_lattice(std::istream& in);
std::string to_text(const Lattice& lattice);
Lattice from_text(const std::string& text);
Lattice load_lattice(const std::string& path);
void save_lattice(const std::string& path, const Lattice& lattice);

}  // namespace latdesign
