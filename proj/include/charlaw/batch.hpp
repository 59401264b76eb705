// Reproducible batch generation across worker threads.
//
// Sample i is drawn from RngStream(seed).substream(i / kBlockSize), in block
// order, so the produced values depend on (seed, count) only: any worker
// count yields the same batch.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "charlaw/linalg.hpp"
#include "charlaw/random.hpp"

namespace charlaw {

inline constexpr std::size_t kBlockSize = 256;

struct SampleBatch {
  std::string sampler_id;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<Complex> values;

  std::size_t count() const noexcept { return values.size(); }
};

/// Fills `count` values of type T by calling draw(rng) in per-block substreams.
template <typename T, typename Draw>
std::vector<T> generate_parallel(std::size_t count, std::uint64_t seed, unsigned workers, Draw draw) {
  std::vector<T> out(count);
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  const RngStream root(seed);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));

  auto run_blocks = [&](unsigned w) {
    for (std::size_t b = w; b < blocks; b += workers) {
      RngStream rng = root.substream(b);
      const std::size_t end = std::min(count, (b + 1) * kBlockSize);
      for (std::size_t i = b * kBlockSize; i < end; ++i) out[i] = draw(rng);
    }
  };

  if (workers == 1) {
    run_blocks(0);
    return out;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_blocks(w);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace charlaw
