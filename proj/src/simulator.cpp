#include "rach/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rach {

void SicConfig::validate() const {
    if (T < 2 || K < 1) throw std::invalid_argument("SicConfig: bad T/K");
    if (R < 1 || R >= T) throw std::invalid_argument("SicConfig: need 1 <= R < T");
    if (!(E > 0.0) || E > 1.0) throw std::invalid_argument("SicConfig: E must be in (0,1]");
    if (acb_c < 0.0 || acb_c > 1.0) throw std::invalid_argument("SicConfig: acb_c in [0,1]");
    if (p_e < 0.0 || p_e > 1.0) throw std::invalid_argument("SicConfig: p_e in [0,1]");
}

void EabConfig::validate() const {
    if (acb_a < 0.0 || acb_a > 1.0) throw std::invalid_argument("EabConfig: acb_a in [0,1]");
    if (T < 1 || K < 1) throw std::invalid_argument("EabConfig: bad T/K");
}

void FrmConfig::validate() const {
    if (!(w > 0.0)) throw std::invalid_argument("FrmConfig: w must be positive");
    if (x < 0.0) throw std::invalid_argument("FrmConfig: x must be >= 0");
    if (K < 1) throw std::invalid_argument("FrmConfig: bad K");
}

void TraceSink::event(long cycle, int slot, int preamble, long device, const char* outcome) {
    os_ << cycle << ',' << slot << ',' << preamble << ',' << device << ',' << outcome << '\n';
}

SicCycleEngine::SicCycleEngine(int T, int K) : ledger_(T, K), schedule_(T) {}

CycleResult SicCycleEngine::run(const SicConfig& cfg, long pool_size, std::uint64_t seed,
                                TraceSink* trace, long cycle_index) {
    cfg.validate();
    if (pool_size < 0) throw std::invalid_argument("run_sic_cycle: pool_size < 0");
    Rng rng = Rng::stream(seed, 0);
    CycleResult res;
    res.per_slot_successes.assign(cfg.T, 0);

    const double p_enter = std::min(1.0, cfg.acb_c * cfg.Y());
    const long n = binomial(rng, pool_size, p_enter);
    res.entrants = n;
    if (n == 0) return res;

    // Replica schedule per slot; preambles drawn at transmission time so
    // cancelled replicas consume no randomness.
    for (auto& s : schedule_) s.clear();
    for (long d = 0; d < n; ++d) {
        sample_distinct_sorted(rng, cfg.T, cfg.R, slots_);
        for (int s : slots_) schedule_[s].push_back(static_cast<DeviceId>(d));
    }

    ledger_.reset(n, cfg.R);
    std::function<bool(const FrameLedger::Resolution&)> gate;
    if (cfg.p_e > 0.0) {
        gate = [&](const FrameLedger::Resolution& r) {
            if (rng.bernoulli(cfg.p_e)) {
                if (trace) trace->event(cycle_index, r.slot, r.preamble, r.device, "pe_drop");
                return false;
            }
            return true;
        };
    }

    for (int s = 0; s < cfg.T; ++s) {
        for (DeviceId d : schedule_[s]) {
            if (ledger_.resolved(d)) continue;  // success cancels later replicas
            const int p = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(cfg.K)));
            ledger_.add(s, p, d);
        }
        resolutions_.clear();
        ledger_.peel(s, resolutions_, gate);
        for (const auto& r : resolutions_) {
            ++res.per_slot_successes[s];
            if (r.direct) {
                ++res.successes_first_tx;
                if (trace) trace->event(cycle_index, r.slot, r.preamble, r.device, "success");
            } else {
                ++res.successes_sic;
                if (trace) trace->event(cycle_index, r.slot, r.preamble, r.device, "sic_success");
            }
        }
    }
    res.unresolved_devices = n - res.successes();
    if (trace) {
        for (DeviceId d = 0; d < n; ++d)
            if (!ledger_.resolved(d)) trace->event(cycle_index, -1, -1, d, "collision");
    }
    return res;
}

CycleResult run_sic_cycle(const SicConfig& cfg, long pool_size, std::uint64_t seed,
                          TraceSink* trace, long cycle_index) {
    SicCycleEngine engine(cfg.T, cfg.K);
    return engine.run(cfg, pool_size, seed, trace, cycle_index);
}

CycleResult run_eab_cycle(const EabConfig& cfg, long pool_size, std::uint64_t seed) {
    cfg.validate();
    if (pool_size < 0) throw std::invalid_argument("run_eab_cycle: pool_size < 0");
    Rng rng = Rng::stream(seed, 0);
    CycleResult res;
    res.per_slot_successes.assign(cfg.T, 0);
    const long n = binomial(rng, pool_size, cfg.acb_a);
    res.entrants = n;

    // One (slot, preamble) pick per entrant; singleton cells succeed.
    std::vector<std::int32_t> count(size_t(cfg.T) * cfg.K, 0);
    std::vector<std::int32_t> pick(n);
    for (long d = 0; d < n; ++d) {
        const int s = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(cfg.T)));
        const int p = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(cfg.K)));
        pick[d] = s * cfg.K + p;
        ++count[pick[d]];
    }
    for (long d = 0; d < n; ++d) {
        if (count[pick[d]] == 1) {
            ++res.successes_first_tx;
            ++res.per_slot_successes[pick[d] / cfg.K];
        }
    }
    res.unresolved_devices = n - res.successes();
    return res;
}

CycleResult run_frm_frame(const FrmConfig& cfg, long pool_size, std::uint64_t seed) {
    cfg.validate();
    if (pool_size < 0) throw std::invalid_argument("run_frm_frame: pool_size < 0");
    Rng rng = Rng::stream(seed, 0);
    CycleResult res;
    res.per_slot_successes.assign(1, 0);
    const long n = binomial(rng, pool_size, std::min(1.0, cfg.acb_b * cfg.w));
    res.entrants = n;
    std::vector<std::int32_t> count(cfg.K, 0);
    std::vector<std::int32_t> pick(n);
    for (long d = 0; d < n; ++d) {
        pick[d] = static_cast<std::int32_t>(rng.bounded(static_cast<std::uint32_t>(cfg.K)));
        ++count[pick[d]];
    }
    for (long d = 0; d < n; ++d)
        if (count[pick[d]] == 1) ++res.successes_first_tx;
    res.per_slot_successes[0] = res.successes_first_tx;
    res.unresolved_devices = n - res.successes();
    return res;
}

double update_acb_frm(double b_t, const FrmConfig& cfg) {
    if (!(b_t > 0.0) || b_t > 1.0) throw std::invalid_argument("update_acb_frm: b_t in (0,1]");
    return std::min(1.0 / cfg.w, 1.0 / std::max(1.0, 1.0 / b_t - cfg.x));
}

double update_acb_sic(double c_c, const SicConfig& cfg) {
    if (!(c_c > 0.0) || c_c > 1.0) throw std::invalid_argument("update_acb_sic: c_c in (0,1]");
    return std::min(1.0 / cfg.Y(), 1.0 / std::max(1.0, 1.0 / c_c - cfg.z_estimate));
}

namespace {

struct DrainRun {
    std::vector<long> traj;  // successes per (aggregated) cycle
    double cycles = 0.0;     // cycles elapsed until the pool emptied
};

// Per-seed drain until the pool empties. EAB and SIC cycles are atomic;
// FRM counts elapsed frames and reports them in cycle units.
DrainRun drain_once(const DrainConfig& cfg, long total, std::uint64_t seed) {
    std::vector<long> traj;
    switch (cfg.mechanism) {
        case Mechanism::kEab: {
            // Barred devices retry the ACB draw each cycle; admitted ones
            // stay in the contention loop until they succeed.
            Rng rng = Rng::stream(seed, 1);
            long barred = total, loop = 0;
            EabConfig c = cfg.eab;
            for (int cyc = 0; cyc < cfg.max_cycles && barred + loop > 0; ++cyc) {
                const long admitted = binomial(rng, barred, c.acb_a);
                barred -= admitted;
                loop += admitted;
                EabConfig once = c;
                once.acb_a = 1.0;  // loop members all contend this cycle
                std::uint64_t sm = seed;
                CycleResult r = run_eab_cycle(once, loop, splitmix64(sm) + cyc);
                loop -= r.successes();
                traj.push_back(r.successes());
            }
            {
                const double cycles = double(traj.size());
                return {std::move(traj), cycles};
            }
        }
        case Mechanism::kFrm: {
            long n = total;
            FrmConfig c = cfg.frm;
            long frame = 0;
            long acc = 0;
            const double cap = 1.0 / c.w;
            std::uint64_t sm = seed;
            const std::uint64_t frame_seed_base = splitmix64(sm);
            while (n > 0 && frame < long(cfg.max_cycles) * cfg.frames_per_cycle) {
                CycleResult r = run_frm_frame(c, n, frame_seed_base + frame);
                n -= r.successes();
                acc += r.successes();
                c.acb_b = update_acb_frm(c.acb_b, c);
                // At the cap the estimated backlog is below one frame's worth;
                // devices re-read the true count from the base station.
                if (c.acb_b >= cap && n > 0)
                    c.acb_b = std::min(cap, 1.0 / std::max(1.0, double(n)));
                if (++frame % cfg.frames_per_cycle == 0) {
                    traj.push_back(acc);
                    acc = 0;
                }
            }
            if (acc > 0) traj.push_back(acc);
            return {std::move(traj),
                    std::ceil(double(frame) / double(cfg.frames_per_cycle) - 1e-12)};
        }
        case Mechanism::kSic: {
            long n = total;
            SicConfig c = cfg.sic;
            const double cap = 1.0 / c.Y();
            SicCycleEngine engine(c.T, c.K);
            std::uint64_t sm = seed;
            const std::uint64_t cycle_seed_base = splitmix64(sm);
            for (int cyc = 0; cyc < cfg.max_cycles && n > 0; ++cyc) {
                CycleResult r = engine.run(c, n, cycle_seed_base + cyc, nullptr, cyc);
                n -= r.successes();
                c.acb_c = update_acb_sic(c.acb_c, c);
                if (c.acb_c >= cap && n > 0)
                    c.acb_c = std::min(cap, 1.0 / std::max(1.0, double(n)));
                traj.push_back(r.successes());
            }
            {
                const double cycles = double(traj.size());
                return {std::move(traj), cycles};
            }
        }
    }
    return {};
}

}  // namespace

DrainResult run_drain_experiment(const DrainConfig& cfg, long total_devices,
                                 const std::vector<std::uint64_t>& seeds) {
    if (total_devices < 1) throw std::invalid_argument("run_drain_experiment: need devices");
    if (seeds.empty()) throw std::invalid_argument("run_drain_experiment: need seeds");
    DrainResult out;
    out.total_devices = total_devices;
    double cycles_acc = 0.0;
    double per_frame_acc = 0.0;
    std::vector<double> traj_acc;
    for (std::uint64_t s : seeds) {
        const auto run = drain_once(cfg, total_devices, s);
        const auto& traj = run.traj;
        cycles_acc += run.cycles;
        const int fpc = cfg.mechanism == Mechanism::kFrm ? cfg.frames_per_cycle
                        : cfg.mechanism == Mechanism::kEab ? cfg.eab.T
                                                           : cfg.sic.T;
        if (!traj.empty()) per_frame_acc += double(traj[0]) / double(fpc);
        if (traj.size() > traj_acc.size()) traj_acc.resize(traj.size(), 0.0);
        for (size_t i = 0; i < traj.size(); ++i) traj_acc[i] += double(traj[i]);
    }
    out.cycles_used = cycles_acc / double(seeds.size());
    out.mean_per_frame_successes = per_frame_acc / double(seeds.size());
    out.successes_per_cycle = std::move(traj_acc);
    for (auto& v : out.successes_per_cycle) v /= double(seeds.size());
    return out;
}

}  // namespace rach
