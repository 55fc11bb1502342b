#include "fdk/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace fdk {

int default_jobs() {
  if (const char* env = std::getenv("FDK_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : default_jobs(); }

}  // namespace fdk
