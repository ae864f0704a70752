#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace nafd {

using Rng = std::mt19937_64;

// Independent sub-streams keyed on (master seed, trial, stream tag). Draw order
// inside one stream never depends on how trials are scheduled across workers.
enum class Stream : std::uint64_t {
  kGeometry = 1,
  kUplink = 2,
  kDownlink = 3,
  kInterRau = 4,
  kInterUser = 5,
  kPilot = 6,
  kBfTraining = 7,
  kInterferenceTraining = 8,
  kQuantizer = 9,
  kSolver = 10,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t trial, Stream tag) {
  return splitmix64(splitmix64(splitmix64(master) ^ trial) ^ static_cast<std::uint64_t>(tag));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t trial, Stream tag) {
  return Rng(substream_seed(master, trial, tag));
}

// Circularly-symmetric complex Gaussian with the given variance.
inline std::complex<double> complex_normal(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double s = std::sqrt(0.5 * variance);
  const double re = n(rng);
  const double im = n(rng);
  return {s * re, s * im};
}

}  // namespace nafd
