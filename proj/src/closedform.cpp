#include "bunkbed/closedform.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <string>

namespace bunkbed::closedform {

namespace {

// deque: growth must not invalidate references already handed out
std::mutex factorial_mutex;
std::deque<BigInt> factorial_table = {BigInt(1)};

} // namespace

const BigInt& factorial(int n) {
    if (n < 0) throw OutOfRange("factorial of negative");
    std::lock_guard<std::mutex> lock(factorial_mutex);
    while (static_cast<int>(factorial_table.size()) <= n)
        factorial_table.push_back(factorial_table.back() *
                                  static_cast<int>(factorial_table.size()));
    return factorial_table[n];
}

BigInt binomial(int n, int k) {
    if (n < 0 || k < 0) throw OutOfRange("binomial of negative");
    if (k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

BigInt falling_factorial(int n, int t) {
    if (n < 0 || t < 0 || t > n) throw OutOfRange("falling factorial out of range");
    return factorial(n) / factorial(n - t);
}

BigInt term_a(int n, int t, int k) {
    return falling_factorial(n - 2 * k - 2, t) * binomial(t + k, k);
}

BigInt term_b(int n, int t, int k) {
    return falling_factorial(n - 2 * k - 2, t) * binomial(t + k - 1, k - 1) * (t + k) *
           (t + k + 1);
}

BigInt term_c(int n, int t, int k) {
    return falling_factorial(n - 2 * k - 3, t) * binomial(t + k, k) * (t + k + 1);
}

BigInt term_p(int n, int k) {
    if (k < 1 || 2 * k > n - 2) throw OutOfRange("p_k needs 1 <= k <= (n-2)/2");
    BigInt sum_a = 0, sum_b = 0;
    for (int t = 0; t <= n - 2 * k - 2; ++t) {
        sum_a += term_a(n, t, k);
        sum_b += term_b(n, t, k);
    }
    return factorial(2 * k) * binomial(n - 2, 2 * k) * sum_a * sum_b;
}

BigInt sum_c(int n, int k) {
    if (k < 0 || 2 * k > n - 3) throw OutOfRange("sum_c needs 0 <= k <= (n-3)/2");
    BigInt total = 0;
    for (int t = 0; t <= n - 2 * k - 3; ++t) total += term_c(n, t, k);
    return total;
}

BigInt term_q(int n, int k) {
    if (k < 0 || 2 * k > n - 3) throw OutOfRange("q_k needs 0 <= k <= (n-3)/2");
    const BigInt s = sum_c(n, k);
    return factorial(2 * k + 1) * binomial(n - 2, 2 * k + 1) * s * s;
}

BigInt closed_form_A(int n) {
    if (n < 3) throw OutOfRange("A_n defined for n >= 3");
    BigInt total = 0;
    for (int k = 1; 2 * k <= n - 2; ++k) total += term_p(n, k);
    return total;
}

BigInt closed_form_B(int n) {
    if (n < 3) throw OutOfRange("B_n defined for n >= 3");
    BigInt total = 0;
    for (int k = 0; 2 * k <= n - 3; ++k) total += term_q(n, k);
    return total;
}

TermRatios term_ratios(int n, int k) {
    TermRatios ratios;
    if (k >= 0 && 2 * k <= n - 5)
        ratios.q_ratio = Rational(term_q(n, k + 1), term_q(n, k));
    if (k >= 1 && 2 * k <= n - 4)
        ratios.p_ratio = Rational(term_p(n, k + 1), term_p(n, k));
    if (!ratios.q_ratio && !ratios.p_ratio)
        throw OutOfRange("k outside both estimate ranges for n=" + std::to_string(n));
    return ratios;
}

const CertifiedBound& certified_e() {
    // e = sum 1/i!; the partial sum is a lower bound, and the tail after
    // i = N is below 2/(N+1)!.
    static const CertifiedBound bound = [] {
        Rational lower = 0;
        const int terms = 45;
        for (int i = 0; i <= terms; ++i) lower += Rational(1, factorial(i));
        const Rational tail(2, factorial(terms + 1));
        return CertifiedBound{lower, lower + tail};
    }();
    return bound;
}

const CertifiedBound& certified_e_squared() {
    // e^2 = sum 2^i/i!; tail after i = N is below 2 * 2^(N+1)/(N+1)!.
    static const CertifiedBound bound = [] {
        Rational lower = 0;
        const int terms = 70;
        BigInt power = 1;
        for (int i = 0; i <= terms; ++i) {
            lower += Rational(power, factorial(i));
            power *= 2;
        }
        const Rational tail(2 * power, factorial(terms + 1));
        return CertifiedBound{lower, lower + tail};
    }();
    return bound;
}

RatioBoundCheck check_q_ratio_bound(int n, int k) {
    const auto ratios = term_ratios(n, k);
    if (!ratios.q_ratio) throw OutOfRange("k outside the q-estimate range");
    const Rational denom((k + 1) * (k + 1));
    RatioBoundCheck check{*ratios.q_ratio, false, false};
    check.holds_certified = check.ratio <= certified_e_squared().lower / denom;
    check.holds_upper = check.ratio <= certified_e_squared().upper / denom;
    return check;
}

RatioBoundCheck check_p_ratio_bound(int n, int k) {
    const auto ratios = term_ratios(n, k);
    if (!ratios.p_ratio) throw OutOfRange("k outside the p-estimate range");
    const Rational denom(k * (k + 1));
    RatioBoundCheck check{*ratios.p_ratio, false, false};
    check.holds_certified = check.ratio <= certified_e_squared().lower / denom;
    check.holds_upper = check.ratio <= certified_e_squared().upper / denom;
    return check;
}

AsymptoticReference asymptotic_reference(int n) {
    if (n < 4) throw OutOfRange("asymptotic reference defined for n >= 4");
    AsymptoticReference ref{};

    double term = 1.0;
    ref.e_squared = 0.0;
    for (int m = 0; term >= 1e-18; ++m) {
        ref.e_squared += term;
        term *= 2.0 / (m + 1);
    }
    double fact = 1.0;
    ref.series_a = 0.0;
    ref.series_b = 0.0;
    for (int m = 0;; ++m) {
        const double sq = 1.0 / (fact * fact);
        if (sq < 1e-18) break;
        ref.series_b += sq;
        ref.series_a += sq / (m + 1);
        fact *= (m + 1);
    }

    // divide exactly first so ((n-2)!)^2 never has to fit in a double
    const BigInt weight = factorial(n - 2) * factorial(n - 2);
    const double a_scaled = to_double(Rational(closed_form_A(n), weight * (n - 3)));
    const double b_scaled = to_double(Rational(closed_form_B(n), weight * (n - 2)));
    ref.a_ref = ref.e_squared * ref.series_a * (n - 3) * to_double(weight);
    ref.b_ref = ref.e_squared * ref.series_b * (n - 2) * to_double(weight);
    ref.a_ratio = a_scaled / (ref.e_squared * ref.series_a);
    ref.b_ratio = b_scaled / (ref.e_squared * ref.series_b);
    return ref;
}

} // namespace bunkbed::closedform
