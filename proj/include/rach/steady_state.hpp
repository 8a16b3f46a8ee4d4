#pragma once

#include <vector>

#include "rach/sic_tables.hpp"

namespace rach {

// Stationary weights of the chain, normalized with b00 = 1 so that b40 is
// the per-pooled-device success probability per cycle (entrant mass P per
// unit of pool). That normalization is what reproduces the published
// per-cycle figures; per-entrant and per-cycle views are derived:
//   per_entrant()            = b40 / b10
//   successes_per_cycle(L)   = b40 * L  (= per_entrant * E*K*T)
struct SteadyState {
    double b00 = 1.0;
    double b10 = 0.0;
    std::vector<double> b2;  // j = 0..T-2
    std::vector<double> b3;  // j = 0..T-3
    double b40 = 0.0;

    double per_entrant() const { return b10 > 0.0 ? b40 / b10 : 0.0; }
    double successes_per_cycle(double pool) const { return b40 * pool; }
};

SteadyState steady_state(const ModelParams& p, const AnalyticTables& tables);

// Convenience: tables + steady state in one call.
struct AnalyticModel {
    ModelParams params;
    AnalyticTables tables;
    SteadyState steady;
};
AnalyticModel solve(const ModelParams& p, Psic3Form form = Psic3Form::kChainAttachment);

}  // namespace rach
