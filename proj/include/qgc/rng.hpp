#ifndef QGC_RNG_HPP
#define QGC_RNG_HPP

#include <cstdint>
#include <random>

namespace qgc {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for sub-stream `index` of a run keyed by `seed`. Chunked kernels use
/// one sub-stream per chunk so the sample sequence is independent of thread
/// count and schedule.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic N(0,1) stream: mt19937_64 plus an explicit Box-Muller
/// transform, so the draw sequence does not depend on the standard library's
/// normal_distribution implementation.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Samples per RNG chunk in the Monte-Carlo kernels.
inline constexpr int kChunkSamples = 1024;

}  // namespace qgc

#endif
