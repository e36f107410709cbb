#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mhvg {

/// Failure to read or write a file (open, rename, I/O).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input content (CSV cells, headers, manifests, ...).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One step of the splitmix64 sequence. Used as the seed-expansion scheme
/// everywhere in the library: it is tiny, well known, and fully specified,
/// so derived seeds are identical on every platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// The index-th seed derived from a master seed: element `index` of the
/// splitmix64 stream started at `master`. Batch runs give instance i the
/// seed derive_seed(master, i), so any instance can be regenerated alone.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t out = 0;
  for (std::uint64_t k = 0; k <= index; ++k) out = splitmix64(state);
  return out;
}

/// Two-level variant for nested batches (e.g. per model, then per instance).
inline std::uint64_t derive_seed2(std::uint64_t master, std::uint64_t outer,
                                  std::uint64_t inner) {
  return derive_seed(derive_seed(master, outer), inner);
}

/// Deterministic standard-normal source: mt19937_64 (bit-exact per the
/// standard) plus an explicit Box-Muller transform on 53-bit uniforms.
/// std::normal_distribution is implementation-defined, so it is avoided;
/// with this generator a seed reproduces the same stream everywhere.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (Box-Muller; the paired value is cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log() needs u1 > 0
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mhvg
