#pragma once

#include <cstdint>
#include <random>

#include "fermicorr/types.hpp"

namespace fermicorr {

// Deterministic seed derivation for independent per-task streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 is bit-exact across implementations; the distribution transforms
// below are hand-rolled so that streams are reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream)));
  }

  // uniform on (0, 1]
  double u01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = u01();
    const double v = u01();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * M_PI * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases
// divided out.
Matrix random_unitary(Rng& rng, int dim);

// (G + G†)/2 from a complex Ginibre draw, rescaled to unit spectral norm.
Matrix random_hermitian_unit(Rng& rng, int dim);

// Wishart-like positive matrix G·G† normalized to unit trace.
Matrix random_positive(Rng& rng, int dim, bool real_entries = false);

}  // namespace fermicorr
