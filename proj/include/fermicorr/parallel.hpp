#pragma once

#include <functional>

namespace fermicorr {

// Worker count: explicit argument > FERMICORR_JOBS > hardware parallelism.
int default_jobs();

// Runs body(0..n-1). jobs <= 1 is the serial reference path; jobs > 1 fans
// out with OpenMP. Bodies must write only to per-index slots so that the two
// paths produce identical results.
void parallel_for(long n, int jobs, const std::function<void(long)>& body);

}  // namespace fermicorr
