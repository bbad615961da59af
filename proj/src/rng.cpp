#include "agsparse/rng.hpp"

#include <cmath>

#include "agsparse/errors.hpp"

namespace agsparse {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t substream) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64_next(s);
  s ^= stream * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64_next(s);
  s ^= substream * 0xd1b54a32d192ed03ULL;
  h ^= splitmix64_next(s);
  return h;
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// Acklam's rational approximation coefficients.
constexpr double kA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
constexpr double kC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("inverse_normal_cdf: p must lie in (0, 1)");
  }
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    double r = std::sqrt(-2.0 * std::log(p));
    x = (((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r +
         kC[5]) /
        ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r +
         kA[5]) *
        q /
        (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r +
         1.0);
  } else {
    double r = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((kC[0] * r + kC[1]) * r + kC[2]) * r + kC[3]) * r + kC[4]) * r +
          kC[5]) /
        ((((kD[0] * r + kD[1]) * r + kD[2]) * r + kD[3]) * r + 1.0);
  }
  // One Halley step against the exact CDF.
  constexpr double kSqrt2 = 1.4142135623730951;
  constexpr double kSqrt2Pi = 2.5066282746310002;
  double e = 0.5 * std::erfc(-x / kSqrt2) - p;
  double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

Rng::Rng(std::uint64_t seed) {
  // xoshiro256++ state filled by SplitMix64.
  for (auto& s : s_) s = splitmix64_next(seed);
}

std::uint64_t Rng::next_u64() {
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // (u + 0.5) / 2^53 keeps p strictly inside (0, 1).
  double p = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  return inverse_normal_cdf(p);
}

}  // namespace agsparse
