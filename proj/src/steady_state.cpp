#include "rach/steady_state.hpp"

namespace rach {

SteadyState steady_state(const ModelParams& p, const AnalyticTables& t) {
    const int T = p.T;
    const auto& beta = t.transitions.beta;
    const auto& gamma = t.transitions.gamma;
    const auto& p2 = t.sic.p_sic2;
    const auto& p3 = t.sic.p_sic3;

    SteadyState s;
    s.b00 = 1.0;
    s.b10 = entry_probability(p) * s.b00;

    // b2[j] = (1-Pt1) [beta_j + sum_{k>j} beta_k prod_{l=j+1}^{k} (1-p2[l])] b10
    std::vector<double> reach2(T - 1, 0.0);
    reach2[T - 2] = beta[T - 2];
    for (int j = T - 3; j >= 0; --j) reach2[j] = beta[j] + (1.0 - p2[j + 1]) * reach2[j + 1];
    s.b2.resize(T - 1);
    const double fail1 = 1.0 - t.transitions.p_t1;
    for (int j = 0; j <= T - 2; ++j) s.b2[j] = fail1 * reach2[j] * s.b10;

    // b3[j] mirrors b2 with gamma and stage-3 hazards, fed by b20; the
    // gamma residual 2/T bypasses stage 3 entirely.
    std::vector<double> reach3(T - 2, 0.0);
    reach3[T - 3] = gamma[T - 3];
    for (int j = T - 4; j >= 0; --j) reach3[j] = gamma[j] + (1.0 - p3[j + 1]) * reach3[j + 1];
    s.b3.resize(T - 2);
    const double fail2 = 1.0 - t.transitions.p_t2;
    for (int j = 0; j <= T - 3; ++j) s.b3[j] = fail2 * reach3[j] * s.b2[0];

    s.b40 = t.transitions.p_t1 * s.b10 + t.transitions.p_t2 * s.b2[0];
    for (int l = 1; l <= T - 2; ++l) s.b40 += p2[l] * s.b2[l];
    for (int l = 0; l <= T - 3; ++l) s.b40 += p3[l] * s.b3[l];
    return s;
}

AnalyticModel solve(const ModelParams& p, Psic3Form form) {
    AnalyticModel m;
    m.params = p;
    m.tables = compute_tables(p, form);
    m.steady = steady_state(p, m.tables);
    return m;
}

}  // namespace rach
