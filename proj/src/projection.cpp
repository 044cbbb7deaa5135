#include "latdesign/projection.hpp"

namespace latdesign {

Projection project_along_minimal(const Lattice& lattice, const LatticeVector& e, const EnumerationOptions& opts) {
  const std::size_t n = lattice.dim();
  if (n < 2) throw PreconditionError("projection needs dimension at least 2");
  if (!lattice.is_even()) throw PreconditionError("projection needs an even integral lattice");
  if (e.size() != n) throw DimensionError("coordinate length mismatch");
  if (lattice.norm(e) != 4) throw PreconditionError("e is not a vector of norm 4");
  const Rat min = minimum(lattice, opts);
  if (min != 4) throw PreconditionError("lattice minimum is " + to_string(min) + ", not 4");

  // v_i = (e, b_i)
  std::vector<Int> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s(0);
    for (std::size_t j = 0; j < n; ++j) s += lattice.gram()(i, j) * static_cast<long>(e.coords[j]);
    v[i] = to_int(s);
  }
  auto mod = [](const Int& a, long m) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
  };
  std::optional<std::size_t> odd;
  bool two_mod_four = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (mod(v[i], 2) == 1 && !odd) odd = i;
    if (mod(v[i], 4) == 2) two_mod_four = true;
  }
  const int assumption = odd ? 1 : (two_mod_four ? 2 : 0);
  if (assumption == 0) throw UnsupportedCaseError("neither projection assumption holds for this minimal vector");

  // Generators of L_e' in L-coordinates.
  IntMatrix gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntRow r(n, Int(0));
    if (mod(v[i], 2) == 0) {
      r[i] = 1;
    } else if (i == *odd) {
      r[i] = 2;
    } else {
      r[i] = 1;
      r[*odd] = 1;
    }
    gens.push_back(std::move(r));
  }
  HermiteForm sub = hermite_form(gens);

  // p(x) = x - ((x, e) / 4) e, in rational L-coordinates.
  Mat p(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Rat xe(0);
    for (std::size_t j = 0; j < n; ++j) xe += Rat(sub.h[r][j] * v[j]);
    xe /= 4;
    for (std::size_t j = 0; j < n; ++j) p(r, j) = Rat(sub.h[r][j]) - xe * static_cast<long>(e.coords[j]);
  }
  const Mat q = hnf_basis(p, n - 1);
  if (q.rows() != n - 1) throw std::logic_error("projected generators do not have rank n-1");

  Lattice out = lattice.has_basis()
                    ? Lattice::from_basis(q * *lattice.basis(), lattice.ambient_scale())
                    : Lattice::from_gram(q * lattice.gram() * q.transpose());
  out = reduce_basis(out).lattice;

  const Rat det_l = determinant(lattice);
  const Rat det_p = determinant(out);
  if (!out.is_integral()) throw std::logic_error("projected lattice is not integral");
  if (out.is_even()) throw std::logic_error("projected lattice is even, expected odd");
  const Rat expected = assumption == 1 ? det_l : det_l / 4;
  if (det_p != expected)
    throw std::logic_error("projected determinant " + to_string(det_p) + " differs from " + to_string(expected));
  const Rat pmin = minimum(out, opts);
  if (pmin < 3) throw std::logic_error("projected lattice has minimum below 3");
  return Projection{std::move(out), assumption, det_l, det_p, pmin};
}

}  // namespace latdesign
