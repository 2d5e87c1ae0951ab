#ifndef XPDET_RNG_HPP
#define XPDET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace xpdet {

// Deterministic random stream. std::mt19937_64 is fully specified by the
// standard; the value transforms below are hand-rolled so that identical
// seeds yield identical sequences on every platform (the std distributions
// are implementation-defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Box-Muller; consumes exactly two uniforms per draw.
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
  }

  // Knuth for small rates, normal approximation above (adequate for the
  // bulk point counts this project samples).
  std::uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 30.0) {
      const double limit = std::exp(-lambda);
      double prod = uniform01();
      std::uint64_t n = 0;
      while (prod > limit) {
        ++n;
        prod *= uniform01();
      }
      return n;
    }
    double v = std::round(normal(lambda, std::sqrt(lambda)));
    return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
  }

  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Per-frame stream derived from (seed, frame_id, purpose). Frames can be
// processed in any order or in parallel without changing results.
inline RngStream derive_stream(std::uint64_t seed, std::string_view frame_id,
                               std::string_view purpose = "") {
  std::uint64_t h = detail::fnv1a64(frame_id);
  if (!purpose.empty()) h = detail::splitmix64(h ^ detail::fnv1a64(purpose));
  return RngStream(detail::splitmix64(seed ^ h));
}

}  // namespace xpdet

#endif  // XPDET_RNG_HPP
