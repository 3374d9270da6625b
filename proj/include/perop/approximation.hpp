#pragma once

#include "perop/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace perop {

// One rung of the finite-exponent approximation ladder: every eigenvalue is
// snapped to the nearest 2^level-th root of unity, so the snapped operator
// satisfies T^(2^level) = I exactly while staying within 2*pi/2^level of the
// original in operator norm (the diagonal difference is a sup of chords, each
// at most half a grid arc).
struct ApproximationResult {
  int level;
  SpectrumSpec snapped;       // conjugate already folded in; all values exact
  double bound;               // arc bound 2*pi / 2^level, always valid
  double tight_bound;         // chord of half a grid step, 2*sin(pi/2^level)
  double observed_error;      // max |alpha_j - snapped_j| over sampled j
  BigInt exponent_bound;      // 2^level; the snapped exponent divides it
  // Enumerated families (roots_enum, irrational_dense) have no closed-form
  // snapped tail; their snap is materialized only up to `probe` and flagged.
  bool probe_limited;
  std::int64_t probe;         // sampling horizon used for observed_error
};

// level in [1, 62].  Families with an eventually-constant closed form snap
// structurally (the error bound then covers every index, not just sampled
// ones); enumerated families materialize a probe-limited prefix, or throw
// UnsupportedFamily when allow_probe_limited is false.
ApproximationResult approximate(const SpectrumSpec& spec, int level,
                                std::int64_t probe,
                                bool allow_probe_limited = true);

// approximate() for level = 1..level_max; errors are non-increasing in level
// up to the sampling caveat above.
std::vector<ApproximationResult> convergence_table(const SpectrumSpec& spec,
                                                   int level_max,
                                                   std::int64_t probe);

}  // namespace perop
