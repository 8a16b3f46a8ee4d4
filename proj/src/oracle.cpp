#include "rach/oracle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "rach/combinatorics.hpp"

namespace rach {
namespace oracle {

namespace {

using Pair = std::array<int, 2>;

std::vector<Pair> all_pairs(int T) {
    std::vector<Pair> out;
    for (int a = 0; a < T; ++a)
        for (int b = a + 1; b < T; ++b) out.push_back({a, b});
    return out;
}

// Batch peel over a handful of slots: no time axis, every listed replica
// present. Entry -1 marks the tagged device's lone transmission.
struct BatchWorld {
    int slots;
    std::vector<std::vector<int>> cell;  // slot -> device indices (-1 = tagged)

    explicit BatchWorld(int s) : slots(s), cell(s) {}

    // Returns (tagged resolved, number of chain devices resolved).
    std::pair<bool, int> peel(int n_devices, const std::vector<Pair>& dev_slots) {
        std::vector<int> cnt(slots);
        for (int s = 0; s < slots; ++s) cnt[s] = int(cell[s].size());
        std::vector<char> done(n_devices, 0);
        bool tagged = false;
        int resolved = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int s = 0; s < slots; ++s) {
                if (cnt[s] != 1) continue;
                int d = -2;
                for (int m : cell[s]) {
                    if (m == -1 && !tagged) { d = -1; break; }
                    if (m >= 0 && !done[m]) { d = m; break; }
                }
                if (d == -2) continue;
                changed = true;
                if (d == -1) {
                    tagged = true;
                    cnt[s] = 0;
                } else {
                    done[d] = 1;
                    ++resolved;
                    for (int e : dev_slots[d]) --cnt[e];
                }
            }
        }
        return {tagged, resolved};
    }
};

// Batch-peel check used by both count enumerations: given chain slots
// (local indices), the tagged position and the end position, does the
// anonymous multiset of pairs rescue the tagged device with exactly one
// transmission at the end slot?
bool chain_rescues(const std::vector<int>& slots, int tagged_slot, int end_slot,
                   const std::vector<Pair>& wiring) {
    int raw_end = 0;
    for (const auto& p : wiring) raw_end += (p[0] == end_slot) + (p[1] == end_slot);
    if (raw_end != 1) return false;
    int tagged_cell = 0;
    for (const auto& p : wiring) tagged_cell += (p[0] == tagged_slot) + (p[1] == tagged_slot);
    if (tagged_cell == 0) return false;  // tagged must start collided

    const int S = int(slots.size());
    // map real slot -> local index
    auto idx = [&](int s) {
        return int(std::lower_bound(slots.begin(), slots.end(), s) - slots.begin());
    };
    BatchWorld w(S);
    std::vector<Pair> dev(wiring.size());
    for (size_t d = 0; d < wiring.size(); ++d) {
        dev[d] = {idx(wiring[d][0]), idx(wiring[d][1])};
        w.cell[dev[d][0]].push_back(int(d));
        w.cell[dev[d][1]].push_back(int(d));
    }
    w.cell[idx(tagged_slot)].push_back(-1);
    auto [ok, resolved] = w.peel(int(wiring.size()), dev);
    return ok && resolved == int(wiring.size());
}

// Multisets of (k-1) pairs drawn from the chain slots.
std::uint64_t count_wirings(const std::vector<int>& slots, int tagged_slot, int end_slot, int k) {
    std::vector<Pair> pairs;
    for (size_t a = 0; a < slots.size(); ++a)
        for (size_t b = a + 1; b < slots.size(); ++b) pairs.push_back({slots[a], slots[b]});
    const int P = int(pairs.size());
    const int n = k - 1;
    std::vector<int> pick(n, 0);  // nondecreasing indices = multiset
    std::uint64_t count = 0;
    while (true) {
        std::vector<Pair> wiring;
        wiring.reserve(n);
        for (int i : pick) wiring.push_back(pairs[i]);
        if (chain_rescues(slots, tagged_slot, end_slot, wiring)) ++count;
        int pos = n - 1;
        while (pos >= 0 && pick[pos] == P - 1) --pos;
        if (pos < 0) break;
        const int v = ++pick[pos];
        for (int i = pos + 1; i < n; ++i) pick[i] = v;
    }
    return count;
}

// Labeled arrangements of (i-1) chain devices over the window slots.
std::uint64_t count_window_arrangements(int i) {
    std::vector<int> slots(i);
    std::iota(slots.begin(), slots.end(), 0);
    std::vector<Pair> pairs;
    for (int a = 0; a < i; ++a)
        for (int b = a + 1; b < i; ++b) pairs.push_back({a, b});
    const int P = int(pairs.size());
    const int n = i - 1;
    std::vector<int> pick(n, 0);  // ordered tuple = labeled devices
    std::uint64_t count = 0;
    while (true) {
        std::vector<Pair> wiring;
        wiring.reserve(n);
        for (int x : pick) wiring.push_back(pairs[x]);
        if (chain_rescues(slots, 0, i - 1, wiring)) ++count;
        int pos = n - 1;
        while (pos >= 0 && pick[pos] == P - 1) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int x = pos + 1; x < n; ++x) pick[x] = 0;
    }
    return count;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

void EnumSpace::validate() const {
    if (T < 3 || T > 8) throw std::invalid_argument("EnumSpace: T must be in 3..8");
    if (N < 1 || N > 5) throw std::invalid_argument("EnumSpace: N must be in 1..5");
}

std::uint64_t EnumSpace::configurations() const {
    return pow_u64(binom_u64(T, 2), N);
}

Rational enumerate_delta(int i, const EnumSpace& space) {
    space.validate();
    if (i < 2) throw std::domain_error("enumerate_delta: i must be >= 2");
    const int T = space.T;
    if (i > space.N || i > T - 2)  // not enough devices or slots to form the chain
        return Rational{0, pow_u64(binom_u64(T, 2), space.N - 1)};
    // Separable construction: qualifying in-window arrangements of i-1
    // labeled devices x choices of which devices x outside placements.
    const std::uint64_t window = count_window_arrangements(i);
    const std::uint64_t choose_members = binom_u64(space.N - 1, i - 1);
    const std::uint64_t outside = pow_u64(binom_u64(T - i, 2), space.N - i);
    Rational r;
    r.num = window * choose_members * outside;
    r.den = pow_u64(binom_u64(T, 2), space.N - 1);
    return r;
}

std::uint64_t enumerate_counts(int j, int k, int stage, const EnumSpace& space) {
    space.validate();
    if (k < 2) throw std::invalid_argument("enumerate_counts: k >= 2");
    const int T = space.T;
    std::uint64_t total = 0;
    if (stage == 2) {
        const int w = T - j;
        if (j < 1 || k > w) return 0;
        // window positions 1..w; end e, tagged s < e, k-2 middles below e
        std::vector<int> mids;
        for (int e = k; e <= w; ++e) {
            for (int s = 1; s < e; ++s) {
                std::vector<int> rest;
                for (int x = 1; x < e; ++x)
                    if (x != s) rest.push_back(x);
                // iterate (k-2)-subsets of rest
                const int m = k - 2;
                std::vector<int> c(m);
                std::iota(c.begin(), c.end(), 0);
                while (true) {
                    std::vector<int> slots{s, e};
                    for (int x = 0; x < m; ++x) slots.push_back(rest[c[x]]);
                    std::sort(slots.begin(), slots.end());
                    total += count_wirings(slots, s, e, k);
                    if (m == 0) break;
                    int pos = m - 1;
                    while (pos >= 0 && c[pos] == int(rest.size()) - m + pos) --pos;
                    if (pos < 0) break;
                    ++c[pos];
                    for (int x = pos + 1; x < m; ++x) c[x] = c[x - 1] + 1;
                }
            }
        }
    } else if (stage == 3) {
        if (j < 3 || j > T) return 0;
        // tagged pair pinned to {0,1}; chain attaches to either cell, ends at j-1
        for (int attach = 0; attach <= 1; ++attach) {
            std::vector<int> rest;
            for (int x = 2; x <= j - 2; ++x) rest.push_back(x);
            const int m = k - 2;
            if (m > int(rest.size())) continue;
            std::vector<int> c(m);
            std::iota(c.begin(), c.end(), 0);
            while (true) {
                std::vector<int> slots{attach, j - 1};
                for (int x = 0; x < m; ++x) slots.push_back(rest[c[x]]);
                std::sort(slots.begin(), slots.end());
                total += count_wirings(slots, attach, j - 1, k);
                if (m == 0) break;
                int pos = m - 1;
                while (pos >= 0 && c[pos] == int(rest.size()) - m + pos) --pos;
                if (pos < 0) break;
                ++c[pos];
                for (int x = pos + 1; x < m; ++x) c[x] = c[x - 1] + 1;
            }
        }
    } else {
        throw std::invalid_argument("enumerate_counts: stage must be 2 or 3");
    }
    return total;
}

PsicFrequencies enumerate_psic(const EnumSpace& space) {
    space.validate();
    const int T = space.T;
    const int N = space.N;
    const auto pairs = all_pairs(T);
    const int P = int(pairs.size());

    PsicFrequencies f;
    f.visits2.assign(T - 1, 0);
    f.saves2.assign(T - 1, 0);
    f.visits3.assign(T - 2, 0);
    f.saves3.assign(T - 2, 0);

    std::vector<int> cfg(N, 0);
    FrameLedger ledger(T, 1);
    std::vector<std::vector<DeviceId>> schedule(T);
    std::vector<FrameLedger::Resolution> resolutions;
    while (true) {
        for (auto& s : schedule) s.clear();
        for (int d = 0; d < N; ++d) {
            schedule[pairs[cfg[d]][0]].push_back(d);
            schedule[pairs[cfg[d]][1]].push_back(d);
        }
        ledger.reset(N, 2);
        int tagged_slot = -1;
        bool tagged_direct = false;
        for (int s = 0; s < T && tagged_slot < 0; ++s) {
            for (DeviceId d : schedule[s])
                if (!ledger.resolved(d)) ledger.add(s, 0, d);
            resolutions.clear();
            ledger.peel(s, resolutions);
            for (const auto& r : resolutions) {
                if (r.device == 0) {
                    tagged_slot = s;
                    tagged_direct = r.direct;
                }
            }
        }
        const int rmin = pairs[cfg[0]][0], rmax = pairs[cfg[0]][1];
        const int j0 = rmax - rmin - 1;
        // classify the tagged trajectory
        const bool failed_first = !(tagged_slot == rmin && tagged_direct);
        if (failed_first) {
            int jsave = -1;  // stage-2 save state, -1 when none
            if (tagged_slot >= 0 && tagged_slot < rmax)
                jsave = tagged_slot == rmin ? j0 : rmax - tagged_slot;  // entry-state fold
            if (jsave >= 1) {
                for (int j = j0; j >= jsave; --j) ++f.visits2[j];
                ++f.saves2[jsave];
            } else {
                for (int j = j0; j >= 1; --j) ++f.visits2[j];
                if (jsave < 0 && tagged_slot != rmax) {
                    // second transmission also failed; walk the waiting stage
                    const int k0 = T - rmax - 2;
                    const int msave = tagged_slot > rmax ? T - 1 - tagged_slot : -1;
                    for (int m = k0; m >= std::max(msave, 0); --m) ++f.visits3[m];
                    if (msave >= 0) ++f.saves3[msave];
                }
            }
        }
        int pos = N - 1;
        while (pos >= 0 && cfg[pos] == P - 1) --pos;
        if (pos < 0) break;
        ++cfg[pos];
        for (int x = pos + 1; x < N; ++x) cfg[x] = 0;
    }
    return f;
}

}  // namespace oracle
}  // namespace rach
