#include "rach/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rach/csv.hpp"
#include "rach/oracle.hpp"

namespace rach {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& s, F conv) {
    std::vector<T> out;
    for (const auto& tok : split(s, ',')) out.push_back(conv(tok));
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty() && !val.empty()) kv[key] = val;
    }
    return kv;
}

void apply_config(ExperimentSpec& spec, const std::map<std::string, std::string>& kv) {
    auto to_i = [](const std::string& s) { return std::stoi(s); };
    auto to_d = [](const std::string& s) { return std::stod(s); };
    for (const auto& [key, val] : kv) {
        if (key == "t") {
            spec.t_grid = parse_list<int>(val, to_i);
            if (!spec.t_grid.empty()) spec.t = spec.t_grid.front();
        } else if (key == "k") {
            spec.k_grid = parse_list<int>(val, to_i);
            if (!spec.k_grid.empty()) spec.k = spec.k_grid.front();
        } else if (key == "e") {
            spec.e_grid = parse_list<double>(val, to_d);
            if (!spec.e_grid.empty()) spec.e = spec.e_grid.front();
        } else if (key == "r") {
            spec.r_grid = parse_list<int>(val, to_i);
            if (!spec.r_grid.empty()) spec.r = spec.r_grid.front();
        } else if (key == "pe") {
            spec.pe_grid = parse_list<double>(val, to_d);
            if (!spec.pe_grid.empty()) spec.pe = spec.pe_grid.front();
        } else if (key == "pool") {
            spec.pool = to_d(val);
        } else if (key == "trials") {
            spec.trials = to_i(val);
        } else if (key == "seed") {
            spec.seed = std::stoull(val);
        } else if (key == "out") {
            spec.out = val;
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

PointStats simulate_point(const SicConfig& cfg, double pool, int trials, std::uint64_t seed) {
    PointStats st;
    st.per_trial.resize(trials);
    SicCycleEngine engine(cfg.T, cfg.K);
    double entrants = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t sm = seed;
        const CycleResult r = engine.run(cfg, long(pool), splitmix64(sm) + std::uint64_t(t));
        st.per_trial[t] = r.successes();
        st.mean_successes += double(r.successes());
        entrants += double(r.entrants);
    }
    st.mean_successes /= double(trials);
    st.mean_entrants = entrants / double(trials);
    return st;
}

std::string sweep_e(const ExperimentSpec& spec) {
    CsvWriter csv(spec.out);
    csv.row("row_type", "T", "K", "R", "E", "trial", "successes", "per_pool", "analytic_b40");
    for (int T : spec.t_grid) {
        double best = -1.0;
        double best_e = 0.0;
        for (double E : spec.e_grid) {
            SicConfig cfg;
            cfg.T = T;
            cfg.K = spec.k;
            cfg.E = E;
            cfg.R = spec.r;
            cfg.acb_c = 1.0 / spec.pool;
            const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
            ModelParams mp{T, spec.k, E, spec.pool, 0.0, 100};
            const double b40 = spec.r == 2 ? solve(mp).steady.b40 : -1.0;
            for (int t = 0; t < spec.trials; ++t)
                csv.row("trial", T, spec.k, spec.r, E, t, st.per_trial[t],
                        double(st.per_trial[t]) / spec.pool, b40);
            csv.row("mean", T, spec.k, spec.r, E, spec.trials, st.mean_successes,
                    st.mean_successes / spec.pool, b40);
            if (st.mean_successes > best) {
                best = st.mean_successes;
                best_e = E;
            }
        }
        csv.row("argmax", T, spec.k, spec.r, best_e, spec.trials, best, best / spec.pool, -1.0);
    }
    return spec.out;
}

std::string sweep_r(const ExperimentSpec& spec) {
    CsvWriter csv(spec.out);
    csv.row("row_type", "T", "K", "R", "E", "trial", "successes", "per_pool");
    for (int T : spec.t_grid) {
        double best = -1.0;
        int best_r = 0;
        for (int R : spec.r_grid) {
            if (R >= T) continue;
            SicConfig cfg;
            cfg.T = T;
            cfg.K = spec.k;
            cfg.E = spec.e;
            cfg.R = R;
            cfg.acb_c = 1.0 / spec.pool;
            const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
            for (int t = 0; t < spec.trials; ++t)
                csv.row("trial", T, spec.k, R, spec.e, t, st.per_trial[t],
                        double(st.per_trial[t]) / spec.pool);
            csv.row("mean", T, spec.k, R, spec.e, spec.trials, st.mean_successes,
                    st.mean_successes / spec.pool);
            if (st.mean_successes > best) {
                best = st.mean_successes;
                best_r = R;
            }
        }
        csv.row("argmax", T, spec.k, best_r, spec.e, spec.trials, best, best / spec.pool);
    }
    return spec.out;
}

std::string sweep_t(const ExperimentSpec& spec) {
    CsvWriter csv(spec.out);
    csv.row("row_type", "T", "K", "R", "E", "trial", "successes", "per_pool", "analytic_b40",
            "analytic_successes");
    for (int T : spec.t_grid) {
        SicConfig cfg;
        cfg.T = T;
        cfg.K = spec.k;
        cfg.E = spec.e;
        cfg.R = spec.r;
        cfg.acb_c = 1.0 / spec.pool;
        const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
        ModelParams mp{T, spec.k, spec.e, spec.pool, 0.0, 100};
        const auto model = solve(mp);
        for (int t = 0; t < spec.trials; ++t)
            csv.row("trial", T, spec.k, spec.r, spec.e, t, st.per_trial[t],
                    double(st.per_trial[t]) / spec.pool, model.steady.b40,
                    model.steady.successes_per_cycle(spec.pool));
        csv.row("mean", T, spec.k, spec.r, spec.e, spec.trials, st.mean_successes,
                st.mean_successes / spec.pool, model.steady.b40,
                model.steady.successes_per_cycle(spec.pool));
    }
    return spec.out;
}

std::string sweep_k(const ExperimentSpec& spec) {
    CsvWriter csv(spec.out);
    csv.row("row_type", "T", "K", "R", "E", "trial", "successes", "per_pool", "analytic_b40",
            "analytic_successes");
    for (int K : spec.k_grid) {
        SicConfig cfg;
        cfg.T = spec.t;
        cfg.K = K;
        cfg.E = spec.e;
        cfg.R = spec.r;
        cfg.acb_c = 1.0 / spec.pool;
        const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
        ModelParams mp{spec.t, K, spec.e, spec.pool, 0.0, 100};
        const auto model = solve(mp);
        for (int t = 0; t < spec.trials; ++t)
            csv.row("trial", spec.t, K, spec.r, spec.e, t, st.per_trial[t],
                    double(st.per_trial[t]) / spec.pool, model.steady.b40,
                    model.steady.successes_per_cycle(spec.pool));
        csv.row("mean", spec.t, K, spec.r, spec.e, spec.trials, st.mean_successes,
                st.mean_successes / spec.pool, model.steady.b40,
                model.steady.successes_per_cycle(spec.pool));
    }
    return spec.out;
}

std::string sweep_pe(const ExperimentSpec& spec) {
    CsvWriter csv(spec.out);
    csv.row("row_type", "T", "K", "R", "E", "pe", "trial", "successes", "per_pool");
    for (double pe : spec.pe_grid) {
        for (int T : spec.t_grid) {
            SicConfig cfg;
            cfg.T = T;
            cfg.K = spec.k;
            cfg.E = spec.e;
            cfg.R = spec.r;
            cfg.p_e = pe;
            cfg.acb_c = 1.0 / spec.pool;
            const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
            for (int t = 0; t < spec.trials; ++t)
                csv.row("trial", T, spec.k, spec.r, spec.e, pe, t, st.per_trial[t],
                        double(st.per_trial[t]) / spec.pool);
            csv.row("mean", T, spec.k, spec.r, spec.e, pe, spec.trials, st.mean_successes,
                    st.mean_successes / spec.pool);
        }
    }
    return spec.out;
}

std::string compare(const ExperimentSpec& spec) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < std::max(spec.trials, 1); ++i) {
        std::uint64_t sm = spec.seed + 1000003ULL * std::uint64_t(i);
        seeds.push_back(splitmix64(sm));
    }
    DrainConfig dc;
    dc.frames_per_cycle = spec.t;
    dc.eab = EabConfig{0.8, spec.t, spec.k};
    dc.frm = FrmConfig{1.0 / spec.pool, 54.0, 20.0, spec.k};
    dc.sic = SicConfig{};
    dc.sic.T = spec.t;
    dc.sic.K = spec.k;
    dc.sic.E = spec.e;
    dc.sic.R = spec.r;
    dc.sic.acb_c = 1.0 / spec.pool;
    dc.sic.z_estimate = 33.0 * double(spec.t);
    dc.sic.p_e = spec.pe;

    CsvWriter csv(spec.out);
    csv.row("row_type", "mechanism", "cycle", "mean_successes", "cycles_to_drain",
            "per_frame_first_cycle");
    const char* names[] = {"eab", "frm", "sic"};
    const Mechanism mechs[] = {Mechanism::kEab, Mechanism::kFrm, Mechanism::kSic};
    for (int m = 0; m < 3; ++m) {
        dc.mechanism = mechs[m];
        const DrainResult r = run_drain_experiment(dc, long(spec.pool), seeds);
        for (size_t c = 0; c < r.successes_per_cycle.size(); ++c)
            csv.row("trajectory", names[m], long(c + 1), r.successes_per_cycle[c], -1.0, -1.0);
        csv.row("summary", names[m], -1L, -1.0, r.cycles_used, r.mean_per_frame_successes);
    }
    return spec.out;
}

namespace {

struct CheckTable {
    CsvWriter csv;
    int failures = 0;
    explicit CheckTable(const std::string& path) : csv(path) {
        csv.row("check", "detail", "measured", "target", "tolerance", "status");
    }
    void check(const std::string& name, const std::string& detail, double measured,
               double target, double tol) {
        const bool ok = std::abs(measured - target) <= tol;
        if (!ok) ++failures;
        csv.row(name, detail, measured, target, tol, ok ? "pass" : "FAIL");
    }
    void info(const std::string& name, const std::string& detail, double measured,
              double target) {
        csv.row(name, detail, measured, target, -1.0, "refuted-form(documented)");
    }
};

std::string sibling_path(const std::string& out, const std::string& name) {
    const auto slash = out.find_last_of('/');
    return slash == std::string::npos ? name : out.substr(0, slash + 1) + name;
}

}  // namespace

int validate(const ExperimentSpec& spec, double perturb_psic2) {
    CheckTable table(spec.out);

    // (a) exhaustive-enumeration suite, T <= 7. Chain sizes 2 and 3 must be
    // reproduced exactly; size-4 closed forms count construction sequences
    // rather than arrangements and are reported, not gated (see module docs).
    CsvWriter freqs(sibling_path(spec.out, "oracle_frequencies.csv"));
    freqs.row("T", "N", "stage", "state", "visits", "saves", "frequency");
    for (int T = 4; T <= 7; ++T) {
        for (int N = 2; N <= 4; ++N) {
            oracle::EnumSpace space{T, N};
            ModelParams mp{T, 1, double(N) / T, 1e5, 0.0, 100};
            const std::string pt = "T=" + std::to_string(T) + ",N=" + std::to_string(N);
            for (int i = 2; i <= std::min(N, T - 2); ++i) {
                const auto r = oracle::enumerate_delta(i, space);
                const double formula = delta_exact(i, mp);
                if (i <= 3)
                    table.check("delta_exact_vs_oracle", pt + ",i=" + std::to_string(i),
                                formula, r.value(), 1e-12);
                else
                    table.info("delta_sequence_count", pt + ",i=" + std::to_string(i), formula,
                               r.value());
            }
            if (N == 2) {  // counts do not depend on N; run them once
                for (int k = 2; k <= 4; ++k) {
                    for (int j = 1; j <= T - k; ++j) {
                        const auto c = oracle::enumerate_counts(j, k, 2, space);
                        const double formula = count_c2(j, k, mp);
                        if (k <= 3)
                            table.check("count_c2_vs_oracle",
                                        pt + ",j=" + std::to_string(j) + ",k=" + std::to_string(k),
                                        formula, double(c), 1e-9);
                        else
                            table.info("count_c2_sequence_count",
                                       pt + ",j=" + std::to_string(j) + ",k=" + std::to_string(k),
                                       formula, double(c));
                    }
                    for (int j = 3; j <= T; ++j) {
                        const auto c = oracle::enumerate_counts(j, k, 3, space);
                        const double formula = count_c3(j, k, mp);
                        if (k <= 3)
                            table.check("count_c3_vs_oracle",
                                        pt + ",j=" + std::to_string(j) + ",k=" + std::to_string(k),
                                        formula, double(c), 1e-9);
                        else
                            table.info("count_c3_sequence_count",
                                       pt + ",j=" + std::to_string(j) + ",k=" + std::to_string(k),
                                       formula, double(c));
                    }
                }
            }
            const auto f = oracle::enumerate_psic(space);
            auto p2 = psic2(mp);
            for (auto& v : p2) v = std::min(1.0, std::max(0.0, v + perturb_psic2));
            const auto p3 = psic3(mp);
            for (int j = 1; j <= T - 2; ++j) {
                freqs.row(T, N, 2, j, f.visits2[j], f.saves2[j], f.freq2(j));
                if (f.visits2[j])
                    table.check("psic2_vs_oracle", pt + ",j=" + std::to_string(j), p2[j],
                                f.freq2(j), 0.02);
            }
            for (int m = 0; m <= T - 3; ++m) {
                freqs.row(T, N, 3, m, f.visits3[m], f.saves3[m], f.freq3(m));
                if (f.visits3[m])
                    table.check("psic3_vs_oracle", pt + ",m=" + std::to_string(m), p3[m],
                                f.freq3(m), 0.02);
            }
        }
    }

    // (b) analytic b40 against Monte-Carlo per-pool success rate, T=500 grid.
    const double paper_b40[] = {0.049, 0.099, 0.13, 0.11, 0.098};
    const double e_grid[] = {0.2, 0.4, 0.6, 0.8, 1.0};
    for (int i = 0; i < 5; ++i) {
        ModelParams mp{500, 54, e_grid[i], spec.pool, 0.0, 100};
        const auto model = solve(mp);
        SicConfig cfg;
        cfg.T = 500;
        cfg.K = 54;
        cfg.E = e_grid[i];
        cfg.R = 2;
        cfg.acb_c = 1.0 / spec.pool;
        const auto st = simulate_point(cfg, spec.pool, spec.trials, spec.seed);
        const double emp = st.mean_successes / spec.pool;
        const std::string detail = "T=500,E=" + fmt(e_grid[i]);
        table.check("b40_vs_simulation", detail, model.steady.b40, emp, 0.015);
        table.check("b40_vs_published", detail, model.steady.b40, paper_b40[i], 0.015);
    }

    // (c) golden scalars.
    {
        ModelParams mp{500, 54, 0.6, 1e5, 0.0, 100};
        table.check("pt1_golden", "T=500,N=300", pt1(mp), 0.3016769, 1e-4);
        table.check("entry_probability", "E=1,K=54,T=500,L=1e5",
                    entry_probability(ModelParams{500, 54, 1.0, 1e5, 0.0, 100}), 0.27, 1e-12);
        double best = -1.0, best_e = 0.0;
        for (double E : {0.2, 0.4, 0.6, 0.8, 1.0}) {
            const auto m = solve(ModelParams{500, 54, E, 1e5, 0.0, 100});
            if (m.steady.b40 > best) {
                best = m.steady.b40;
                best_e = E;
            }
        }
        table.check("analytic_argmax_e", "T=500", best_e, 0.6, 1e-9);
    }
    return table.failures;
}

}  // namespace rach
