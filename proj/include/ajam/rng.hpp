#pragma once

#include <cstdint>
#include <random>

namespace ajam {

/// Seedable generator with a platform-independent output stream.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are not, so the transforms live here:
///   uniform()  - top 53 bits of one draw scaled to [0, 1)
///   below(n)   - modulo with rejection of the biased low range
///   gaussian() - Marsaglia polar method, second deviate cached
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n);

  double gaussian();

  bool bernoulli(double p) { return uniform() < p; }

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace ajam
