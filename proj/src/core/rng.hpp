// Reproducible randomness for the Monte Carlo runs: a counter-based
// 64-bit mixing generator (splitmix-style finalizer over key + counter)
// with one independent substream per trial, and standard normals via the
// inverse CDF so the draws are bit-identical across platforms and worker
// counts.
#pragma once

#include <cstdint>

namespace kacz {

// Finalizing mix; bijective on 64 bits.
std::uint64_t mix64(std::uint64_t z);

// Quantile of the standard normal, accurate to ~1e-15 relative error.
double inverse_normal_cdf(double p);

class TrialStream {
public:
  TrialStream(std::uint64_t seed, std::uint64_t trial_index);

  std::uint64_t next_u64();
  double next_uniform();  // in (0, 1), never hits the ends
  double next_normal();

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace kacz
