#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rach/simulator.hpp"
#include "rach/steady_state.hpp"

namespace rach {

// Shared experiment settings; each subcommand reads the fields it uses.
// Flat key=value config files carry the same names as the CLI flags and
// flags win over file values.
struct ExperimentSpec {
    std::vector<int> t_grid{500, 1000};
    std::vector<int> k_grid{54};
    std::vector<double> e_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<int> r_grid{1, 2, 3, 4, 5};
    std::vector<double> pe_grid{0.0, 0.2, 0.4};
    double pool = 1e5;
    int trials = 100;
    std::uint64_t seed = 42;
    std::string out = "out.csv";
    // single-value fallbacks used where a grid is not swept
    int k = 54;
    int r = 2;
    double e = 0.6;
    double pe = 0.0;
    int t = 500;
};

std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config(ExperimentSpec& spec, const std::map<std::string, std::string>& kv);

// Mean successes per cycle for one SIC parameter point, trials independent
// streams of base_seed. Per-trial values returned for raw CSV rows.
struct PointStats {
    double mean_successes = 0.0;
    double mean_entrants = 0.0;
    std::vector<long> per_trial;
};
PointStats simulate_point(const SicConfig& cfg, double pool, int trials, std::uint64_t seed);

// Figure sweeps; every writer emits per-trial rows plus aggregated means.
// Returns the path written.
std::string sweep_e(const ExperimentSpec& spec);
std::string sweep_r(const ExperimentSpec& spec);
std::string sweep_t(const ExperimentSpec& spec);
std::string sweep_k(const ExperimentSpec& spec);
std::string sweep_pe(const ExperimentSpec& spec);

// Mechanism comparison over a shared finite pool (drain trajectories).
std::string compare(const ExperimentSpec& spec);

// Validation gate: exhaustive-enumeration checks, analytic-vs-simulation
// agreement and golden values. Writes a pass/fail table plus the oracle
// frequency dump next to `out`. Returns the number of failed checks.
// `perturb_psic2` offsets the stage-2 SIC vector before checking; the
// negative-control hook used by tests.
int validate(const ExperimentSpec& spec, double perturb_psic2 = 0.0);

}  // namespace rach
