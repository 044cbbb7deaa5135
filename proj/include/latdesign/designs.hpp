#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latdesign/lattice.hpp"
#include "latdesign/shells.hpp"

namespace latdesign::designs {

/// 0/1 incidence matrix: one row per block, one column per point.
struct IncidenceMatrix {
  std::size_t v = 0;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t blocks() const { return rows.size(); }
  static IncidenceMatrix from_blocks(std::size_t v, const std::vector<std::vector<int>>& blocks);
  std::vector<std::vector<int>> block_list() const;
  bool operator==(const IncidenceMatrix&) const = default;
};

/// The 16 x 16 matrix of a 2-(16,6,2) design printed with the A1^16 case.
IncidenceMatrix printed_design();

/// Orthogonal root directions (one root per +- pair), in lattice coordinates.
struct Frame {
  std::vector<LatticeVector> roots;
};

/// Requires s2 to decompose as (A1)^16.
Frame detect_frame(const ShellSet& s2);
/// The frame e_{2i-1} + e_{2i}, e_{2i-1} - e_{2i} (i = 1..8) of a 16-dim
/// lattice with an orthonormal-coordinate basis; every root must lie in L.
Frame standard_frame(const Lattice& l);

struct SignClass {
  std::vector<int> support;           // frame indices, ascending
  std::vector<std::size_t> members;   // row indices into the shell
};

/// Classes of X under sign changes along the frame. Frame inner products
/// must lie in {0, +-1}; each class must contain every sign pattern.
std::vector<SignClass> sign_classes(const ShellSet& x, const Frame& frame);

/// Block rows from class supports; throws if supports differ in size.
IncidenceMatrix incidence_from_classes(const std::vector<SignClass>& classes, std::size_t v);

/// True iff M has v points, all blocks of size k, and every t-subset of
/// points lies in exactly lambda blocks.
bool verify_design(const IncidenceMatrix& m, unsigned t, std::size_t v, std::size_t k, std::uint64_t lambda);

struct BinaryCode {
  std::size_t length = 0;
  std::vector<std::uint32_t> basis;  // row-reduced generators as bit masks
  std::vector<std::uint64_t> weights;  // weight distribution, index = weight
  std::size_t dimension() const { return basis.size(); }
  std::optional<std::size_t> min_distance() const;
  std::string params() const;  // "[n, k, d]"
};

BinaryCode code_from_incidence(const IncidenceMatrix& m);

/// Sub-collections of `count` blocks forming a 2-(v, k, lambda) design.
std::vector<IncidenceMatrix> design_subsystems(const IncidenceMatrix& blocks, std::size_t count, std::uint64_t lambda,
                                               std::size_t limit = 100000);

/// (A1)^16 plus one norm-3 vector per block, built in orthonormal
/// coordinates via sqrt2 e_{2i-1} -> e_{2i-1} + e_{2i}, sqrt2 e_{2i} -> e_{2i-1} - e_{2i}.
/// `signs` optionally flips the sign of chosen block coordinates.
Lattice lattice_from_design(const IncidenceMatrix& m, const std::vector<std::vector<int>>& signs = {});

using Z7Vector = std::array<int, 7>;

struct FanoSubset {
  std::array<std::array<int, 3>, 7> lines;
  std::vector<Z7Vector> vectors;  // 56 vectors, all sign patterns on each line
  bool isometric = false;         // fingerprint equals that of s3(O7)
};

/// All 2-(7,3,1) line systems on 7 labelled points, in canonical order.
std::vector<FanoSubset> fano_subsets();

/// The two cyclic families generated by (+-1,+-1,0,+-1,0,0,0) and
/// (+-1,0,+-1,+-1,0,0,0).
std::pair<FanoSubset, FanoSubset> cyclic_pair();

bool disjoint(const FanoSubset& a, const FanoSubset& b);

struct DisjointFamily {
  std::size_t size = 0;
  std::vector<std::size_t> witness;
  std::uint64_t disjoint_pairs = 0;
  std::uint64_t disjoint_triples = 0;
};

DisjointFamily max_disjoint_family(const std::vector<FanoSubset>& subsets);

/// Sorted per-vector inner-product multisets of a configuration given by its
/// Gram matrix rows.
std::vector<std::vector<std::int64_t>> fingerprint(const std::vector<std::vector<std::int64_t>>& gram);

}  // namespace latdesign::designs
