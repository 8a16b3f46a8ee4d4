#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rach/ledger.hpp"
#include "rach/rng.hpp"

namespace rach {

// Proposed mechanism: ACB gate C, Y = E*K*T expected accesses per cycle,
// R replicas in distinct slots, optional packet-error probability.
struct SicConfig {
    int T = 1482;
    int K = 54;
    double E = 0.6;
    int R = 2;
    double acb_c = 1e-5;
    double z_estimate = 0.0;  // Z, successes per cycle assumed by the ACB update
    double p_e = 0.0;
    double p_sleep = 0.0;

    double Y() const { return E * K * T; }
    void validate() const;
};

struct EabConfig {
    double acb_a = 0.8;
    int T = 1482;
    int K = 54;
    void validate() const;
};

struct FrmConfig {
    double acb_b = 1e-5;
    double w = 54.0;  // average accesses admitted per frame
    double x = 20.0;  // average successes assumed by the ACB update
    int K = 54;
    void validate() const;
};

struct CycleResult {
    long successes_first_tx = 0;  // natural singleton at a replica's own slot
    long successes_sic = 0;       // exposed by interference cancellation
    long entrants = 0;
    std::vector<long> per_slot_successes;
    long unresolved_devices = 0;

    long successes() const { return successes_first_tx + successes_sic; }
};

// Optional line-based event log: cycle,slot,preamble,device,outcome.
class TraceSink {
public:
    explicit TraceSink(std::ostream& os) : os_(os) {}
    void event(long cycle, int slot, int preamble, long device, const char* outcome);

private:
    std::ostream& os_;
};

// One contention cycle of the proposed mechanism over a pool of sleeping
// devices. Every pooled device enters with probability min(1, C*Y); each
// entrant transmits in R distinct slots with a fresh uniform preamble per
// transmission, stopping after success. The decoder peels to fixpoint at
// every slot boundary. A decode fails its packet-error draw with
// probability p_e: the device stays unsuccessful and its ledger entries
// keep blocking their cells.
CycleResult run_sic_cycle(const SicConfig& cfg, long pool_size, std::uint64_t seed,
                          TraceSink* trace = nullptr, long cycle_index = 0);

// Buffer-reusing variant of run_sic_cycle for sweep loops.
class SicCycleEngine {
public:
    SicCycleEngine(int T, int K);
    CycleResult run(const SicConfig& cfg, long pool_size, std::uint64_t seed,
                    TraceSink* trace = nullptr, long cycle_index = 0);

private:
    FrameLedger ledger_;
    std::vector<std::vector<DeviceId>> schedule_;
    std::vector<int> slots_;
    std::vector<FrameLedger::Resolution> resolutions_;
};

// One 3GPP-EAB cycle over a fresh pool: ACB draw against A, one slot and
// one preamble per entrant, singleton cells succeed. No SIC.
CycleResult run_eab_cycle(const EabConfig& cfg, long pool_size, std::uint64_t seed);

// One FRM frame: entry with probability min(1, B*W), one preamble each,
// singleton preambles succeed.
CycleResult run_frm_frame(const FrmConfig& cfg, long pool_size, std::uint64_t seed);

// ACB updates. Both clamp so at most one frame/cycle worth of accesses is
// admitted once the estimated backlog falls below it.
double update_acb_frm(double b_t, const FrmConfig& cfg);
double update_acb_sic(double c_c, const SicConfig& cfg);

enum class Mechanism { kEab, kFrm, kSic };

struct DrainResult {
    double cycles_used = 0.0;            // mean over seeds
    std::vector<double> successes_per_cycle;  // mean trajectory over seeds
    long total_devices = 0;
    double mean_per_frame_successes = 0.0;    // first-cycle average per frame
};

struct DrainConfig {
    Mechanism mechanism = Mechanism::kSic;
    SicConfig sic;
    EabConfig eab;
    FrmConfig frm;
    int frames_per_cycle = 1482;  // FRM aggregation granularity
    int max_cycles = 200;
};

// Repeated cycles with the mechanism's ACB update until the whole
// population has succeeded; trajectory averaged over the given seeds.
DrainResult run_drain_experiment(const DrainConfig& cfg, long total_devices,
                                 const std::vector<std::uint64_t>& seeds);

}  // namespace rach
