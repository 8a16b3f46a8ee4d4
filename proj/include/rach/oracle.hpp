#pragma once

#include <cstdint>
#include <vector>

#include "rach/ledger.hpp"

namespace rach {
namespace oracle {

// Exhaustive small-instance ground truth. All devices share one preamble
// (the chain constructions condition on that); configurations are the
// C(T,2)^N assignments of slot pairs, enumerable exactly for T <= 8, N <= 5.
struct EnumSpace {
    int T = 6;
    int N = 3;
    void validate() const;
    std::uint64_t configurations() const;
};

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const { return den ? double(num) / double(den) : 0.0; }
};

// Probability that the tagged device, transmitting at the first slot of an
// i-slot window, is rescued by a clean peeling chain: the other N-1 devices
// split into i-1 chain members with both replicas inside the window and
// N-i bystanders entirely outside it; the window's last slot carries exactly
// one transmission; batch peeling inside the window resolves the tagged
// device and every chain member, and the tagged slot starts collided.
// Exact over the C(T,2)^(N-1) placements of the other devices.
Rational enumerate_delta(int i, const EnumSpace& space);

// Arrangement counts behind the stage-2/stage-3 chain constructions.
// Stage 2: windows of w = T-j slots; for every chain end position e, tagged
// position s < e and middle-slot choice, count the anonymous pair multisets
// whose batch peel rescues the tagged device with a lone transmission at e.
// Stage 3: window of j slots, tagged holding slots {0,1}, chain attached to
// either cell, end fixed at slot j-1.
std::uint64_t enumerate_counts(int j, int k, int stage, const EnumSpace& space);

// Conditional SIC frequencies of the real mechanism: every configuration is
// simulated slot by slot (success cancels later replicas, peeling runs to
// fixpoint at each boundary). A rescue at boundary u maps to stage-2 state
// r_max - u (for r_min < u < r_max, entry-state fold at u = r_min) and to
// stage-3 state T-1-u (for u > r_max); visits count states actually reached.
struct PsicFrequencies {
    std::vector<std::uint64_t> visits2, saves2;  // index j = 0..T-2
    std::vector<std::uint64_t> visits3, saves3;  // index m = 0..T-3
    double freq2(int j) const { return visits2[j] ? double(saves2[j]) / double(visits2[j]) : 0.0; }
    double freq3(int m) const { return visits3[m] ? double(saves3[m]) / double(visits3[m]) : 0.0; }
};
PsicFrequencies enumerate_psic(const EnumSpace& space);

}  // namespace oracle
}  // namespace rach
