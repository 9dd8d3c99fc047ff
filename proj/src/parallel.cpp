#include "egh/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace egh {

namespace {

int g_override = 0;

int env_threads() {
  static const int cached = [] {
    const char* s = std::getenv("EGH_LAB_THREADS");
    if (!s) return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || v <= 0) return 0;
    return static_cast<int>(v);
  }();
  return cached;
}

}  // namespace

int thread_count() {
  if (g_override > 0) return g_override;
  int env = env_threads();
  if (env > 0) return env;
  return omp_get_max_threads();
}

void set_thread_count(int n) { g_override = n > 0 ? n : 0; }

}  // namespace egh
