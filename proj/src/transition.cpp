#include "rach/transition.hpp"

#include <cmath>

#include "rach/combinatorics.hpp"

namespace rach {

double entry_probability(const ModelParams& p) {
    p.validate();
    return p.E * p.K * p.T / p.L;
}

TransitionTables slot_wait_distributions(const ModelParams& p) {
    p.validate();
    if (p.T < 3) throw std::invalid_argument("slot_wait_distributions: T must be >= 3");
    const int T = p.T;
    const double denom = double(T) * (T - 1);
    TransitionTables t;
    t.alpha.resize(T - 1);
    t.beta.resize(T - 1);
    for (int j = 0; j <= T - 2; ++j) t.alpha[j] = t.beta[j] = 2.0 * (T - j - 1) / denom;
    t.gamma.resize(T - 2);
    for (int j = 0; j <= T - 3; ++j) t.gamma[j] = 2.0 * (T - j - 2) / denom;
    t.gamma_residual = 2.0 / T;
    return t;
}

double pt1(const ModelParams& p) {
    p.validate();
    if (p.T < 2) throw std::invalid_argument("pt1: T must be >= 2");
    if (p.N() < 1.0) throw std::invalid_argument("pt1: N = E*T must be >= 1");
    return std::pow(1.0 - 2.0 / p.T, p.N() - 1.0);
}

double big_gamma2(const ModelParams& p) { return 1.0 - pt1(p); }

double big_gamma3(const ModelParams& p) {
    p.validate();
    if (p.T < 4) throw std::invalid_argument("big_gamma3: T must be >= 4");
    if (p.N() < 2.0) throw std::invalid_argument("big_gamma3: N must be >= 2");
    const double N = p.N();
    const double tc2 = choose2(double(p.T));
    const double p_tau = 1.0 - choose2(double(p.T - 2)) / tc2;
    return (1.0 / (tc2 * p_tau)) *
           (1.0 - (1.0 + (N - 1.0) * p_tau) * std::pow(1.0 - p_tau, N - 1.0));
}

double psi(const ModelParams& p, const std::vector<double>& beta,
           const std::vector<double>& p_sic2) {
    const int T = p.T;
    double acc = beta.at(0);
    double surv = 1.0;
    for (int i = 1; i <= T - 2; ++i) {
        surv *= 1.0 - p_sic2.at(i);
        acc += surv * beta.at(i);
    }
    return (1.0 - pt1(p)) * acc;
}

double pt2(const ModelParams& p, double psi_value) {
    if (psi_value < 0.0 || psi_value > 1.0) throw std::invalid_argument("pt2: psi outside [0,1]");
    const double v = std::pow(1.0 - 2.0 / p.T, psi_value * p.N() - 1.0);
    return std::min(1.0, v);
}

}  // namespace rach
