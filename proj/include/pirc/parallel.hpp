#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pirc {

// Worker count handed to the parallel kernels. 0 means the OpenMP default
// (OMP_NUM_THREADS or the hardware count).
struct Parallelism {
  int threads = 0;
};

inline int resolve_threads(Parallelism par) {
  if (par.threads > 0) return par.threads;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pirc
