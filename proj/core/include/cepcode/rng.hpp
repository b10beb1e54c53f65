#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace cep {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seedable, splittable generator with platform-stable output: all variates
// are derived from raw mt19937_64 words, never from libstdc++ distribution
// objects, so identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  // Independent stream addressed by (seed, a, b).
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) + a) ^
               splitmix64(b + 0x14057b7ef767814fULL));
  }

  std::uint64_t next() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  std::uint64_t uniformInt(std::uint64_t bound) {  // [0, bound)
    if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound - 1;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return x % bound;
  }

  double gaussian() {  // N(0, 1), Box-Muller
    if (hasSpare_) {
      hasSpare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    hasSpare_ = true;
    return r * std::cos(t);
  }

  // Circular complex Gaussian, E|z|^2 = variance.
  std::complex<double> complexGaussian(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = s * gaussian();
    const double im = s * gaussian();
    return {re, im};
  }

 private:
  explicit Rng(std::uint64_t raw, int) : gen_(raw) {}
  std::mt19937_64 gen_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace cep
