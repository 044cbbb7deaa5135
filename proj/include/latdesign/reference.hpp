#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latdesign::reference {

/// Published theta coefficients, q^0 up to the last listed power.
struct ThetaTable {
  std::string lattice;
  std::vector<std::uint64_t> coefficients;
  std::size_t check_to;  // truncation used by the acceptance checks
};

const std::vector<ThetaTable>& theta_tables();
const ThetaTable& theta_table(const std::string& lattice);

/// One published (d, n, s, t) row for the shell of norm m.
struct ConfigRow {
  std::string lattice;
  unsigned m;
  std::size_t d, n, s;
  unsigned t;
  bool misprint = false;  // printed t is not a valid strength (O7, m = 8)
};

const std::vector<ConfigRow>& configuration_rows();

struct Determinant {
  std::string lattice;
  std::uint64_t det;
};

const std::vector<Determinant>& determinants();

/// The nine lattices whose norm-3 shell is a 5-design.
const std::vector<std::string>& nine_lattices();

}  // namespace latdesign::reference
