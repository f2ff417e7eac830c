#pragma once

#include <cstdint>

#include "bunkbed/numbers.hpp"

namespace bunkbed {

// SplitMix64, the 64-bit counter-based generator of Steele, Lea & Flood
// ("Fast splittable pseudorandom number generators", OOPSLA 2014), in the
// form of Vigna's reference implementation: the state advances by the
// golden-gamma constant and each output is a finalizing mix of the state.
// Output i is a pure function of (seed, i), so any draw can be reproduced
// from the seed and a counter.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // Independent stream for e.g. a trial index: the stream seed is the
    // mix of (seed advanced by (stream+1) gammas), documented so record
    // replay can re-derive it.
    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();

    // uniform in [0,1), 53 random bits
    double next_unit();

    // uniform in [0, n), n >= 1, rejection-sampled (no modulo bias)
    std::uint64_t next_below(std::uint64_t n);

    // uniform in [lo, hi] inclusive
    int next_int(int lo, int hi);

  private:
    std::uint64_t state_;
};

// num/den with num uniform in [0, max_numerator] and den in [1, max_denominator].
Rational random_rational(SplitMix64& rng, int max_numerator, int max_denominator);

// Strictly positive variant (num in [1, max_numerator]).
Rational random_positive_rational(SplitMix64& rng, int max_numerator, int max_denominator);

} // namespace bunkbed
