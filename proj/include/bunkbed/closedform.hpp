#pragma once

#include <optional>

#include "bunkbed/numbers.hpp"

namespace bunkbed::closedform {

// Memoized exact factorial; thread-safe. binomial(n,k) = 0 for k > n or
// k < 0, with C(0,0) = 1.
const BigInt& factorial(int n);
BigInt binomial(int n, int k);
BigInt falling_factorial(int n, int t); // n!/(n-t)!

// The term table of the A_n/B_n formulas:
//   a_{t,k} = (n-2k-2)!/(n-2k-2-t)! * C(t+k, k)
//   b_{t,k} = (n-2k-2)!/(n-2k-2-t)! * C(t+k-1, k-1) * (t+k)(t+k+1)
//   c_{t,k} = (n-2k-3)!/(n-2k-3-t)! * C(t+k, k) * (t+k+1)
//   p_k = (2k)! C(n-2,2k) (sum_t a_{t,k}) (sum_t b_{t,k})
//   q_k = (2k+1)! C(n-2,2k+1) (sum_t c_{t,k})^2
BigInt term_a(int n, int t, int k);
BigInt term_b(int n, int t, int k);
BigInt term_c(int n, int t, int k);
BigInt term_p(int n, int k); // 1 <= k <= (n-2)/2
BigInt term_q(int n, int k); // 0 <= k <= (n-3)/2
BigInt sum_c(int n, int k);  // sum_{t=0}^{n-2k-3} c_{t,k}

// A_n = sum_k p_k, B_n = sum_k q_k (empty sum = 0). Throws OutOfRange for
// n < 3.
BigInt closed_form_A(int n);
BigInt closed_form_B(int n);

// Exact consecutive-term ratios; each field present iff k lies in the
// corresponding estimate's index range (q: 0 <= k <= (n-5)/2,
// p: 1 <= k <= (n-4)/2). Throws OutOfRange when neither applies.
struct TermRatios {
    std::optional<Rational> q_ratio; // q_{k+1}/q_k
    std::optional<Rational> p_ratio; // p_{k+1}/p_k
};
TermRatios term_ratios(int n, int k);

// Certified rational enclosures from the exponential series, width < 1e-30.
struct CertifiedBound {
    Rational lower;
    Rational upper;
};
const CertifiedBound& certified_e();
const CertifiedBound& certified_e_squared();

// Checks ratio <= bound_constant/denominator with the certified enclosure:
// holds_certified uses the lower end (a proof), holds_upper the upper end.
struct RatioBoundCheck {
    Rational ratio;
    bool holds_certified;
    bool holds_upper;
};
RatioBoundCheck check_q_ratio_bound(int n, int k); // vs e^2/(k+1)^2
RatioBoundCheck check_p_ratio_bound(int n, int k); // vs e^2/(k(k+1))

struct AsymptoticReference {
    double e_squared;  // sum 2^m/m!
    double series_a;   // sum 1/((m!)^2 (m+1))
    double series_b;   // sum 1/(m!)^2
    double a_ref;      // e^2 * series_a * (n-3) * ((n-2)!)^2
    double b_ref;      // e^2 * series_b * (n-2) * ((n-2)!)^2
    double a_ratio;    // A_n / a_ref
    double b_ratio;    // B_n / b_ref
};

// Series constants recomputed by partial summation until the next term is
// below 1e-18; the ratios divide exact counts by the exact integer part of
// the reference before any floating conversion, so large n do not overflow.
AsymptoticReference asymptotic_reference(int n); // n >= 4

} // namespace bunkbed::closedform
