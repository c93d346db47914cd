#ifndef STEER_RNG_HPP
#define STEER_RNG_HPP

#include <cstdint>
#include <random>

namespace steer {

// splitmix64, used only to mix seed components.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives independent per-sample generators from (global seed, experiment,
/// sample) so parallel and serial runs draw identical streams.
struct SeedStream {
  std::uint64_t global_seed = 0;

  std::mt19937_64 derive(std::uint64_t experiment, std::uint64_t sample) const {
    std::uint64_t s = mix64(global_seed);
    s = mix64(s ^ experiment);
    s = mix64(s ^ sample);
    return std::mt19937_64(s);
  }
};

}  // namespace steer

#endif
