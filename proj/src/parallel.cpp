#include "csqs/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace csqs {

int resolve_workers(int requested) {
  int workers = requested > 0 ? requested : omp_get_num_procs();
  if (const char* cap = std::getenv(kThreadsEnv)) {
    try {
      const int limit = std::stoi(cap);
      if (limit > 0) workers = std::min(workers, limit);
    } catch (const std::exception&) {
      // unparsable cap is ignored
    }
  }
  return std::max(1, workers);
}

}  // namespace csqs
