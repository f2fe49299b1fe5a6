#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace specsbm {

// (master, stream) names a reproducible bit stream. Replication r uses stream r,
// so any replication can be regenerated without running the ones before it.
struct RngSeed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  // A sub-stream for one purpose within a replication ("graph", "kmeans", ...).
  RngSeed derive(std::string_view purpose) const noexcept;
  RngSeed derive(std::uint64_t salt) const noexcept;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(RngSeed seed);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace specsbm
