#pragma once

namespace mgm {

inline constexpr double kGoldenP = 0.61803398874989484820;    // (sqrt(5) - 1) / 2
inline constexpr double kGoldenRatio = 1.61803398874989484820;

// Right endpoint of the interval on which the transversality condition for
// power series with coefficients from the golden-mean shift is known to hold.
// Absolute-continuity statements are restricted to contraction ratios below it.
inline constexpr double kTransversalityBound = 0.739;

// Same endpoint for the unconstrained class {1 + sum a_k x^k, |a_k| <= 1}.
inline constexpr double kUnconstrainedTransversalityBound = 0.649;

}  // namespace mgm
