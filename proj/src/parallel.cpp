#include "radonlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace radonlab {

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RADONLAB_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // unparsable cap: ignore
    }
  }
  return std::max(1u, n);
}

}  // namespace radonlab
