#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "latdesign/report.hpp"

using namespace latdesign;

// One line per acceptance criterion; failing checks are listed below it.
int main(int argc, char** argv) {
  report::Options opts;
  std::string json_out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") {
      opts.scope = report::Scope::Quick;
    } else if (a == "--json" && i + 1 < argc) {
      json_out = argv[++i];
    } else if (a == "--criterion" && i + 1 < argc) {
      opts.criteria.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--quick] [--criterion N]... [--json FILE]\n";
      return 2;
    }
  }
  const report::Report r = report::run_report(opts);
  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    std::size_t n = 0, bad = 0;
    double seconds = 0;
    for (const auto& it : r.items)
      if (it.criterion == c) ++n, bad += !it.ok(), seconds += it.seconds;
    if (n == 0) continue;
    all = all && bad == 0;
    std::cout << "criterion " << c << " (" << report::criterion_title(c) << "): " << (bad ? "FAIL" : "PASS") << "  "
              << n - bad << "/" << n << " checks, " << std::fixed << std::setprecision(1) << seconds << " s\n";
    for (const auto& it : r.items)
      if (it.criterion == c && !it.ok())
        std::cout << "    " << it.status << ": " << it.lattice << " " << it.section << " / " << it.name
                  << "  expected [" << it.expected << "] observed [" << it.observed << "]\n";
  }
  if (!json_out.empty()) std::ofstream(json_out) << report::to_json(r) << '\n';
  return all ? 0 : 1;
}
