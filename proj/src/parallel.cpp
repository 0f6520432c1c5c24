#include "fermicorr/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fermicorr {

int default_jobs() {
  if (const char* env = std::getenv("FERMICORR_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  const unsigned n = std::thread::hardware_concurrency();
  return n > 0 ? static_cast<int>(n) : 1;
#endif
}

void parallel_for(long n, int jobs, const std::function<void(long)>& body) {
  if (jobs <= 0) jobs = default_jobs();
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(fermicorr_parallel_for)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) body(i);
}

}  // namespace fermicorr
