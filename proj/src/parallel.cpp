#include "latdesign/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace latdesign {
namespace {

std::atomic<int> g_workers{0};

int initial_workers() {
  if (const char* env = std::getenv("LATDESIGN_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w > 0) return w;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace

int default_workers() {
  int w = g_workers.load();
  if (w <= 0) {
    w = initial_workers();
    g_workers.store(w);
  }
  return w;
}

void set_default_workers(int workers) { g_workers.store(workers > 0 ? workers : initial_workers()); }

int resolve_workers(int requested) { return requested > 0 ? requested : default_workers(); }

}  // namespace latdesign
