#include "bunkbed/rng.hpp"

namespace bunkbed {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SplitMix64 SplitMix64::for_stream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix(seed + (stream + 1) * kGoldenGamma));
}

std::uint64_t SplitMix64::next() {
    state_ += kGoldenGamma;
    return mix(state_);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
    // rejection sampling on the top range to avoid modulo bias
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n + 1) % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % n;
}

int SplitMix64::next_int(int lo, int hi) {
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational random_rational(SplitMix64& rng, int max_numerator, int max_denominator) {
    const auto num = rng.next_below(static_cast<std::uint64_t>(max_numerator) + 1);
    const auto den = 1 + rng.next_below(static_cast<std::uint64_t>(max_denominator));
    return Rational(BigInt(num), BigInt(den));
}

Rational random_positive_rational(SplitMix64& rng, int max_numerator, int max_denominator) {
    const auto num = 1 + rng.next_below(static_cast<std::uint64_t>(max_numerator));
    const auto den = 1 + rng.next_below(static_cast<std::uint64_t>(max_denominator));
    return Rational(BigInt(num), BigInt(den));
}

} // namespace bunkbed
