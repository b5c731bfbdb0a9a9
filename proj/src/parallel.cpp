#include "qgc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qgc {

int worker_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("QGC_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < n) n = cap;
    } catch (...) {
      // unparsable cap is ignored
    }
  }
  return n;
}

}  // namespace qgc
