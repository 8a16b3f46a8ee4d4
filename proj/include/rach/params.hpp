#pragma once

#include <stdexcept>

namespace rach {

// Knobs of the analytic chain model. T slots per cycle, K preambles,
// entry fraction E, average contender pool L, sleep probability.
// Above approx_threshold the combinatorial tables switch to their
// large-T approximations (normal approximation for the chain
// probabilities, Stirling form for the arrangement counts).
struct ModelParams {
    int T = 500;
    int K = 54;
    double E = 0.6;
    double L = 1e5;
    double p_sleep = 0.0;
    int approx_threshold = 100;

    double N() const { return E * double(T); }

    void validate() const {
        if (T < 1) throw std::invalid_argument("ModelParams: T must be positive");
        if (K < 1) throw std::invalid_argument("ModelParams: K must be positive");
        if (!(E > 0.0) || E > 1.0) throw std::invalid_argument("ModelParams: E must be in (0,1]");
        if (!(L > 0.0)) throw std::invalid_argument("ModelParams: L must be positive");
        if (p_sleep < 0.0 || p_sleep > 1.0)
            throw std::invalid_argument("ModelParams: p_sleep must be in [0,1]");
        if (approx_threshold < 1)
            throw std::invalid_argument("ModelParams: approx_threshold must be positive");
        if (E * K * T > L)
            throw std::invalid_argument("ModelParams: E*K*T exceeds L, entry probability above 1");
    }

    bool use_approx() const { return T > approx_threshold; }
};

// P = E K T / L, the probability that a pooled device enters the cycle.
double entry_probability(const ModelParams& p);

}  // namespace rach
