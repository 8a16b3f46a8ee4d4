#include "rach/rng.hpp"

#include <algorithm>

namespace rach {

namespace {

double log_pmf(long n, long k, double lp, double lq) {
    return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
           std::lgamma(double(n - k) + 1) + double(k) * lp + double(n - k) * lq;
}

}  // namespace

long binomial(Rng& rng, long n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const double u = rng.next_double();
    const double lp = std::log(p), lq = std::log1p(-p);
    const long mode = std::min<long>(n, static_cast<long>((double(n) + 1) * p));
    double pm = std::exp(log_pmf(n, mode, lp, lq));
    // walk both sides of the mode, largest mass first
    double lo_p = pm, hi_p = pm;
    long lo = mode, hi = mode;
    double acc = pm;
    if (u < acc) return mode;
    while (lo > 0 || hi < n) {
        // next term below: pmf(lo-1) = pmf(lo) * lo*q / ((n-lo+1)*p)
        double below = (lo > 0) ? lo_p * (double(lo) * (1 - p)) / (double(n - lo + 1) * p) : 0.0;
        double above = (hi < n) ? hi_p * (double(n - hi) * p) / (double(hi + 1) * (1 - p)) : 0.0;
        if (below >= above) {
            --lo;
            lo_p = below;
            acc += below;
            if (u < acc) return lo;
        } else {
            ++hi;
            hi_p = above;
            acc += above;
            if (u < acc) return hi;
        }
        if (below == 0.0 && above == 0.0) break;
    }
    return mode;  // u in the rounding tail
}

void sample_distinct_sorted(Rng& rng, int T, int R, std::vector<int>& out) {
    out.clear();
    // Floyd's algorithm: R draws, no rejection loops for R close to T.
    for (int j = T - R; j < T; ++j) {
        int t = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(j + 1)));
        if (std::find(out.begin(), out.end(), t) != out.end())
            out.push_back(j);
        else
            out.push_back(t);
    }
    std::sort(out.begin(), out.end());
}

}  // namespace rach
