#include "rach/ledger.hpp"

#include <algorithm>
#include <stdexcept>

namespace rach {

FrameLedger::FrameLedger(int slots, int preambles) : T_(slots), K_(preambles) {
    if (slots < 1 || preambles < 1) throw std::invalid_argument("FrameLedger: bad dimensions");
    count_.assign(size_t(T_) * K_, 0);
    spent_.assign(size_t(T_) * K_, 0);
    members_.assign(size_t(T_) * K_, {});
}

void FrameLedger::reset(long device_capacity, int max_entries_per_device) {
    std::fill(count_.begin(), count_.end(), 0);
    std::fill(spent_.begin(), spent_.end(), 0);
    for (auto& m : members_) m.clear();
    stride_ = max_entries_per_device;
    resolved_.assign(device_capacity, 0);
    entry_cells_.assign(size_t(device_capacity) * stride_, -1);
    entry_counts_.assign(device_capacity, 0);
    worklist_.clear();
    touched_.clear();
}

void FrameLedger::add(int s, int preamble, DeviceId d) {
    const int c = cell(s, preamble);
    if (members_[c].empty()) touched_.push_back(c);
    members_[c].push_back(d);
    ++count_[c];
    entry_cells_[size_t(d) * stride_ + entry_counts_[d]++] = c;
}

void FrameLedger::push_if_single(int c) {
    if (count_[c] == 1 && !spent_[c]) {
        worklist_.push_back(c);
        std::push_heap(worklist_.begin(), worklist_.end(), std::greater<>{});
    }
}

void FrameLedger::peel(int up_to_slot, std::vector<Resolution>& out,
                       const std::function<bool(const Resolution&)>& gate) {
    // Seed with the cells first occupied since the last peel; older cells can
    // only have become singletons through removals, which queued them
    // already. A cell that is a singleton before this pass counts as a
    // direct decode; anything exposed by removals is an interference-
    // cancellation rescue, even in the same slot.
    std::sort(touched_.begin(), touched_.end());
    natural_.clear();
    for (int c : touched_) {
        if (count_[c] == 1) natural_.push_back(c);
        push_if_single(c);
    }
    touched_.clear();

    const int limit = cell(up_to_slot, K_ - 1);
    while (!worklist_.empty()) {
        std::pop_heap(worklist_.begin(), worklist_.end(), std::greater<>{});
        const int c = worklist_.back();
        worklist_.pop_back();
        if (count_[c] != 1 || spent_[c] || c > limit) continue;
        DeviceId d = -1;
        for (DeviceId m : members_[c])
            if (!resolved_[m]) { d = m; break; }
        if (d < 0) continue;
        const bool direct = std::binary_search(natural_.begin(), natural_.end(), c);
        Resolution r{d, c / K_, c % K_, direct};
        if (gate && !gate(r)) {
            spent_[c] = 1;  // decode burned by packet error; cell stays blocked
            continue;
        }
        resolved_[d] = 1;
        for (int i = 0; i < entry_counts_[d]; ++i) {
            const int e = entry_cells_[size_t(d) * stride_ + i];
            auto& mem = members_[e];
            mem.erase(std::find(mem.begin(), mem.end(), d));
            --count_[e];
            if (e != c) push_if_single(e);
        }
        out.push_back(r);
    }
}

}  // namespace rach
