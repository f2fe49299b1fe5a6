#include "specsbm/rng.hpp"

#include "specsbm/error.hpp"

namespace specsbm {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// FNV-1a; stable across platforms unlike std::hash.
std::uint64_t hash_text(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngSeed RngSeed::derive(std::uint64_t salt) const noexcept {
  return {splitmix64(master ^ splitmix64(salt)), splitmix64(stream + 0x632be59bd9b4e019ULL * (salt + 1))};
}

RngSeed RngSeed::derive(std::string_view purpose) const noexcept { return derive(hash_text(purpose)); }

Rng::Rng(RngSeed seed) : engine_(splitmix64(splitmix64(seed.master) ^ splitmix64(seed.stream + 0x2545f4914f6cdd1dULL))) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::below needs a positive bound");
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

}  // namespace specsbm
