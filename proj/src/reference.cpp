#include "latdesign/reference.hpp"

#include <stdexcept>

namespace latdesign::reference {

const std::vector<ThetaTable>& theta_tables() {
  static const std::vector<ThetaTable> t{
      {"Z7", {1, 14, 84, 280, 574, 840, 1288, 2368, 3444, 3542, 4424, 7560, 9240}, 12},
      {"O1", {1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2}, 12},
      {"O7", {1, 0, 0, 56, 126, 0, 0, 576, 756, 0, 0, 1512, 2072}, 12},
      {"O16", {1, 0, 0, 512, 4320, 18432, 61440, 193536, 522720, 1126400, 2211840, 4584960, 8960640}, 8},
      {"O22",
       {1, 0, 0, 2816, 49896, 456192, 2821632, 13229568, 50332590, 163175936, 467596800, 1214196480, 2900976144},
       5},
      {"O23",
       {1, 0, 0, 4600, 93150, 953856, 6476800, 32788800, 133204500, 458086400, 1384998912, 3771829800, 9403968600},
       5},
      {"L1621", {1, 0, 32, 1024, 8160, 36864, 127360, 387072, 1016288, 2252800, 4564416, 9169920, 17395328}, 8},
      {"L1622", {1, 0, 96, 2048, 15840, 73728, 259200, 774144, 2003424, 4505600, 9269568, 18339840, 34264704}, 8},
      {"L1623", {1, 0, 224, 4096, 31200, 147456, 522880, 1548288, 3977696, 9011200, 18679872, 36679680, 68003456}, 8},
  };
  return t;
}

const ThetaTable& theta_table(const std::string& lattice) {
  for (const auto& t : theta_tables())
    if (t.lattice == lattice) return t;
  throw std::out_of_range("no theta table for " + lattice);
}

const std::vector<ConfigRow>& configuration_rows() {
  static const std::vector<ConfigRow> rows{
      {"O7", 3, 7, 56, 3, 5},          {"O7", 4, 7, 126, 4, 5},         {"O7", 7, 7, 576, 7, 5},
      {"O7", 8, 7, 756, 8, 53, true},  {"O7", 11, 7, 1512, 11, 5},      {"O7", 12, 7, 2072, 12, 5},
      {"O16", 3, 16, 512, 4, 5},       {"O16", 4, 16, 4320, 6, 7},      {"O16", 5, 16, 18432, 8, 5},
      {"O16", 6, 16, 61440, 10, 7},    {"O16", 7, 16, 193536, 12, 5},   {"O16", 8, 16, 522720, 14, 7},
      {"O22", 3, 22, 2816, 4, 5},      {"O22", 4, 22, 49896, 6, 5},     {"O22", 5, 22, 456192, 8, 5},
      {"O23", 3, 23, 4600, 4, 7},      {"O23", 4, 23, 93150, 6, 7},     {"O23", 5, 23, 953856, 8, 7},
      {"L1621", 2, 16, 32, 2, 3},      {"L1621", 3, 16, 1024, 6, 5},    {"L1621", 4, 16, 8160, 8, 3},
      {"L1621", 5, 16, 36864, 10, 5},  {"L1621", 6, 16, 127360, 12, 3}, {"L1621", 7, 16, 387072, 14, 5},
      {"L1621", 8, 16, 1016288, 16, 3}, {"L1621", 9, 16, 2252800, 18, 5},
      {"L1622", 2, 16, 96, 4, 3},      {"L1622", 3, 16, 2048, 6, 5},    {"L1622", 4, 16, 15840, 8, 3},
      {"L1622", 5, 16, 73728, 10, 5},  {"L1622", 6, 16, 259200, 12, 3}, {"L1622", 7, 16, 774144, 14, 5},
      {"L1622", 8, 16, 2003424, 16, 3},
      {"L1623", 2, 16, 224, 4, 3},     {"L1623", 3, 16, 4096, 6, 5},    {"L1623", 4, 16, 31200, 8, 3},
      {"L1623", 5, 16, 147456, 10, 5}, {"L1623", 6, 16, 522880, 12, 3}, {"L1623", 7, 16, 1548288, 14, 5},
  };
  return rows;
}

const std::vector<Determinant>& determinants() {
  static const std::vector<Determinant> d{{"O1", 3},  {"O22", 3},   {"O7", 64},   {"O16", 64},  {"O23", 1},
                                          {"L1621", 16}, {"L1622", 4}, {"L1623", 1}, {"Z7", 1}};
  return d;
}

const std::vector<std::string>& nine_lattices() {
  static const std::vector<std::string> n{"Z7", "L1621", "L1622", "L1623", "O1", "O7", "O16", "O22", "O23"};
  return n;
}

}  // namespace latdesign::reference
