#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace utsp {

// Environment variable that caps the number of worker threads.
inline constexpr const char* kWorkersEnv = "UTSP_WORKERS";

inline unsigned worker_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs body(worker_index) on `workers` threads and joins them. With one
// worker the body runs on the calling thread.
template <typename Body>
void run_workers(unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&body, w] { body(w); });
  for (auto& t : pool) t.join();
}

}  // namespace utsp
