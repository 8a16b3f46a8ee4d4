#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rach {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

// log C(n, k); -inf outside the domain.
inline double log_binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return kNegInf;
    if (k == 0 || k == n) return 0.0;
    return log_factorial(double(n)) - log_factorial(double(k)) - log_factorial(double(n - k));
}

// Stirling replacement for C(n, r) used above the exactness threshold:
// n^r / (sqrt(2 pi r) (r/e)^r). Exact values are kept for r = 0 and r = 1.
inline double log_binomial_stirling(long n, long r) {
    if (r < 0 || n < 0 || r > n) return kNegInf;
    if (r == 0) return 0.0;
    if (r == 1) return std::log(double(n));
    return double(r) * std::log(double(n)) - 0.5 * std::log(2.0 * M_PI * double(r)) -
           double(r) * (std::log(double(r)) - 1.0);
}

inline double choose2(double n) { return n * (n - 1) / 2.0; }

inline std::uint64_t binom_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

inline double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace rach
