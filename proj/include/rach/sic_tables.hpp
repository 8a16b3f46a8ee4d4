#pragma once

#include <cstdint>
#include <vector>

#include "rach/params.hpp"
#include "rach/transition.hpp"

namespace rach {

// Stage-3 hazard evaluation. The recursion printed in the source material
// normalizes the chain-attachment mass by Gamma3 against a constant device
// count; evaluated literally it saturates (values clamp to 1 and then 0),
// which contradicts both the exhaustive small-T enumeration and the claimed
// monotone decay. The default form therefore keeps the chain-attachment
// numerator (attach-cell choice x middle placements x wirings x chain
// probability) without that normalization; the literal form stays available
// for comparison.
enum class Psic3Form { kChainAttachment, kPaperRecursion };

struct SicTables {
    std::vector<double> delta;   // delta[i], i = 2..T-2 (index i; [0],[1] zero)
    std::vector<double> p_sic2;  // j = 0..T-2, p_sic2[0] = 0
    std::vector<double> p_sic3;  // state m = 0..T-3
};

// delta_i, exact combinatorics (integer N; N = E*T rounded to nearest).
// Domain: 2 <= i <= T-2 and i <= N, else std::domain_error.
double delta_exact(int i, const ModelParams& p);

// delta_i via the DeMoivre-Laplace normal approximation (real N).
double delta_approx(int i, const ModelParams& p);

// log delta_i under the mode picked by p.use_approx(); -inf when the term
// vanishes (i > N in exact mode, or outside 2..T-2).
double delta_log(int i, const ModelParams& p);

// Stage-2 arrangement count C2(j,k) = sum_{l=k}^{T-j} (l-1) C(l-2,k-2) M(k),
// with M(k) = (k-2)(k-1)/2 + 1. Exact below the threshold, Stirling form for
// k >= 3 above it. Zero when the summation range is empty.
double count_c2(int j, int k, const ModelParams& p);
double count_c2_log(int j, int k, const ModelParams& p);

// Stage-3 arrangement count C3(j,k) = 2 C(j-3,k-2) M(k), reading the free
// symbol in the source expression as j. Zero when j-3 < k-2.
double count_c3(int j, int k, const ModelParams& p);
double count_c3_log(int j, int k, const ModelParams& p);

// Stage-2 SIC probabilities, computed from j = T-2 downward:
//   p[j] = [sum_k C2(j,k) delta_k] / [(C2(j,2) - sum_{u>j} C2(u,2) p[u]) Gamma2]
// clamped to [0,1]; degenerate (<= 0) denominators yield 0; p[0] = 0.
std::vector<double> psic2(const ModelParams& p);

// Stage-3 SIC probabilities per state m = 0..T-3 (see Psic3Form).
std::vector<double> psic3(const ModelParams& p, Psic3Form form = Psic3Form::kChainAttachment);

// All tables plus the transition scalars that depend on them.
struct AnalyticTables {
    TransitionTables transitions;
    SicTables sic;
};
AnalyticTables compute_tables(const ModelParams& p,
                              Psic3Form form = Psic3Form::kChainAttachment);

}  // namespace rach
