#include "sphereflow/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sphereflow {

int worker_count() {
  if (const char* env = std::getenv("SPHEREFLOW_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sphereflow
