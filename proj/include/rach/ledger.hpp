#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rach {

using DeviceId = std::int32_t;

// Per-cycle slot x preamble occupancy with worklist peeling.
//
// Cells hold the unresolved transmissions seen so far. Resolving a device
// removes every entry it has anywhere in the frame (the receiver subtracts
// its signal from all slots it transmitted in), which may expose further
// singletons; peel() iterates that to fixpoint in ascending (slot, preamble)
// order. Cells marked spent (a decode that failed its packet-error draw)
// never fire again; the failed device's entries stay in place and keep
// blocking their cells.
//
// The ledger is reusable across cycles: reset() keeps allocated capacity.
class FrameLedger {
public:
    FrameLedger(int slots, int preambles);

    // Prepare for a cycle of up to `device_capacity` devices, each making at
    // most `max_entries_per_device` transmissions.
    void reset(long device_capacity, int max_entries_per_device);

    int slots() const { return T_; }
    int preambles() const { return K_; }

    // Record a transmission in slot s. Call in nondecreasing slot order.
    void add(int s, int preamble, DeviceId d);

    bool resolved(DeviceId d) const { return resolved_[d] != 0; }
    int cell_count(int s, int preamble) const { return count_[cell(s, preamble)]; }

    struct Resolution {
        DeviceId device;
        int slot;
        int preamble;
        bool direct;  // natural singleton at its own transmission slot
    };

    // Resolve every reachable singleton among slots <= up_to_slot. The gate
    // decides a resolution's fate: true accepts it (device removed
    // everywhere), false marks the cell spent and leaves the device in play.
    // Results are appended to `out` in resolution order.
    void peel(int up_to_slot, std::vector<Resolution>& out,
              const std::function<bool(const Resolution&)>& gate = {});

private:
    int cell(int s, int p) const { return s * K_ + p; }
    void push_if_single(int c);

    int T_, K_;
    int stride_ = 0;
    std::vector<std::int32_t> count_;
    std::vector<std::uint8_t> spent_;
    std::vector<std::vector<DeviceId>> members_;
    std::vector<std::uint8_t> resolved_;
    std::vector<std::int32_t> entry_cells_;   // flat device -> cells, stride_ wide
    std::vector<std::int8_t> entry_counts_;
    std::vector<std::int32_t> worklist_;      // cell ids, kept as a min-heap
    std::vector<std::int32_t> touched_;       // cells first used in the current slot
    std::vector<std::int32_t> natural_;       // scratch: pre-peel singletons
};

}  // namespace rach
