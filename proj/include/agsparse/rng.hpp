#pragma once

#include <cstdint>

namespace agsparse {

// Deterministic 64-bit generators used by the simulation code. The streams
// are fixed by construction (no std::random distributions), so a given seed
// reproduces the same data bit-for-bit on any build of this library.

// SplitMix64 step; used for seeding and for deriving child seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Child seed for an indexed substream (replicate, cell, ...). Distinct
// (stream, substream) pairs give well-separated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t substream = 0);

// Inverse standard normal CDF (Acklam's rational approximation plus one
// Halley refinement; relative error < 1e-9 over (1e-15, 1-1e-15)).
double inverse_normal_cdf(double p);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via inverse-CDF transform of uniform().
  double normal();

 private:
  std::uint64_t s_[4];
};

}  // namespace agsparse
