#pragma once

namespace egh {

// Thread count used by the OpenMP kernels. Reads EGH_LAB_THREADS once;
// unset or invalid means the OpenMP default.
int thread_count();

// Override for tests and benchmarks; n <= 0 restores the default.
void set_thread_count(int n);

}  // namespace egh
