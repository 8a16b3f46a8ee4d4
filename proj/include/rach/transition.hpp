#pragma once

#include <vector>

#include "rach/params.hpp"

namespace rach {

// Transition machinery of the chain for one parameterization.
// alpha[j], beta[j] index j = 0..T-2; gamma[j] indexes j = 0..T-3.
// gamma covers waits of 0..T-3 slots; the 2/T mass where no waiting
// slot remains (r_max = T-1) is reported separately as gamma_residual
// and routed straight to sleep by the steady-state assembly.
struct TransitionTables {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
    double gamma_residual = 0.0;
    double p_t1 = 0.0;
    double psi = 0.0;
    double p_t2 = 0.0;
    double big_gamma2 = 0.0;
    double big_gamma3 = 0.0;
};

// Wait-slot distributions only (alpha/beta/gamma + residual). T >= 3.
TransitionTables slot_wait_distributions(const ModelParams& p);

// First-transmission success probability (1 - 2/T)^(N-1); real-valued N.
double pt1(const ModelParams& p);

// Probability the first transmission collides; complement of pt1.
double big_gamma2(const ModelParams& p);

// Probability both transmissions collide, per the closed form with
// p_tau = 1 - C(T-2,2)/C(T,2). Requires N >= 2, T >= 4.
double big_gamma3(const ModelParams& p);

// Probability a first-transmission failure survives all stage-2 SIC
// states and reaches the second transmission.
double psi(const ModelParams& p, const std::vector<double>& beta,
           const std::vector<double>& p_sic2);

// Second-transmission success probability; exponent psi*N - 1 clamps the
// value to 1 when fewer than one contender is expected.
double pt2(const ModelParams& p, double psi_value);

}  // namespace rach
