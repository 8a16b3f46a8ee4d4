#include "rach/sic_tables.hpp"

#include <cmath>

#include "rach/combinatorics.hpp"

namespace rach {

namespace {

double mk(int k) { return double(k - 2) * double(k - 1) / 2.0 + 1.0; }

long rounded_n(const ModelParams& p) { return std::lround(p.N()); }

double delta_exact_log_impl(int i, long N, int T) {
    if (i < 2 || i > T - 2 || i > N) return kNegInf;
    const double ltc2 = std::log(choose2(double(T)));
    const double avoid = choose2(double(T - i)) / choose2(double(T));
    double la = 0.0;
    if (N > i) {
        if (avoid == 0.0) return kNegInf;
        la = double(N - i) * std::log(avoid);
    }
    return log_binomial(N - 1, i - 1) - double(i - 1) * ltc2 + 2.0 * log_factorial(double(i - 1)) + la;
}

double delta_approx_log_impl(int i, double N, int T) {
    if (i < 2 || i > T - 2) return kNegInf;
    const double tc2 = choose2(double(T));
    const double pd = 1.0 - choose2(double(T - i)) / tc2;
    const double qd = 1.0 - pd;
    if (pd <= 0.0 || qd <= 0.0) return kNegInf;
    const double var = N * pd * qd;
    return std::log(double(i) / N) - double(i - 1) * std::log(tc2) +
           2.0 * log_factorial(double(i - 1)) - double(i) * std::log(pd) -
           0.5 * std::log(2.0 * M_PI * var) - (i - N * pd) * (i - N * pd) / (2.0 * var);
}

// log of the binomial factor inside the count sums: exact or Stirling.
double count_binom_log(long n, long r, bool approx) {
    if (!approx || r <= 1) return log_binomial(n, r);
    return log_binomial_stirling(n, r);
}

}  // namespace

double delta_exact(int i, const ModelParams& p) {
    p.validate();
    const long N = rounded_n(p);
    if (i < 2 || i > p.T - 2) throw std::domain_error("delta_exact: i outside 2..T-2");
    if (i > N) throw std::domain_error("delta_exact: i exceeds N");
    return std::exp(delta_exact_log_impl(i, N, p.T));
}

double delta_approx(int i, const ModelParams& p) {
    p.validate();
    if (i < 2 || i > p.T - 2) throw std::domain_error("delta_approx: i outside 2..T-2");
    return std::exp(delta_approx_log_impl(i, p.N(), p.T));
}

double delta_log(int i, const ModelParams& p) {
    return p.use_approx() ? delta_approx_log_impl(i, p.N(), p.T)
                          : delta_exact_log_impl(i, rounded_n(p), p.T);
}

double count_c2_log(int j, int k, const ModelParams& p) {
    if (k < 2 || j < 1 || k > p.T - j) return kNegInf;
    const bool approx = p.use_approx();
    double ls = kNegInf;
    for (int l = k; l <= p.T - j; ++l) {
        const double lb = count_binom_log(l - 2, k - 2, approx);
        if (lb == kNegInf) continue;
        ls = logsumexp2(ls, std::log(double(l - 1)) + lb);
    }
    if (ls == kNegInf) return kNegInf;
    return ls + std::log(mk(k));
}

double count_c2(int j, int k, const ModelParams& p) {
    const double l = count_c2_log(j, k, p);
    return l == kNegInf ? 0.0 : std::exp(l);
}

double count_c3_log(int j, int k, const ModelParams& p) {
    if (k < 2 || j < 3 || j - 3 < k - 2) return kNegInf;
    const double lb = count_binom_log(j - 3, k - 2, p.use_approx());
    if (lb == kNegInf) return kNegInf;
    return std::log(2.0) + lb + std::log(mk(k));
}

double count_c3(int j, int k, const ModelParams& p) {
    const double l = count_c3_log(j, k, p);
    return l == kNegInf ? 0.0 : std::exp(l);
}

std::vector<double> psic2(const ModelParams& p) {
    p.validate();
    const int T = p.T;
    const bool approx = p.use_approx();
    std::vector<double> ldelta(T + 1, kNegInf);
    for (int i = 2; i <= T - 2; ++i) ldelta[i] = delta_log(i, p);

    // Numerators for every state in one pass: for fixed k the inner sum of
    // C2 over l is a prefix sum in the window width w = T - j.
    std::vector<double> num(T - 1, 0.0);
    for (int k = 2; k <= T - 1; ++k) {
        if (ldelta[k] == kNegInf) continue;
        const double lmk = std::log(mk(k));
        double ls = kNegInf;
        for (int w = k; w <= T - 1; ++w) {
            const double lb = count_binom_log(w - 2, k - 2, approx);
            if (lb != kNegInf) ls = logsumexp2(ls, std::log(double(w - 1)) + lb);
            const int j = T - w;
            if (j >= 1 && j <= T - 2 && ls != kNegInf)
                num[j] += std::exp(lmk + ls + ldelta[k]);
        }
    }

    const double g2 = big_gamma2(p);
    std::vector<double> out(T - 1, 0.0);
    double subtracted = 0.0;  // sum over higher states of C2(u,2) p[u]
    for (int j = T - 2; j >= 1; --j) {
        const double den = (choose2(double(T - j)) - subtracted) * g2;
        out[j] = den <= 0.0 ? 0.0 : std::min(1.0, std::max(0.0, num[j] / den));
        subtracted += choose2(double(T - j)) * out[j];
    }
    return out;
}

std::vector<double> psic3(const ModelParams& p, Psic3Form form) {
    p.validate();
    const int T = p.T;
    std::vector<double> ldelta(T + 1, kNegInf);
    for (int i = 2; i <= T - 2; ++i) ldelta[i] = delta_log(i, p);

    std::vector<double> out(T - 2, 0.0);
    if (form == Psic3Form::kPaperRecursion) {
        const double g3 = big_gamma3(p);
        double ssum = 0.0;
        for (int j = 3; j <= T; ++j) {  // state m = T - j, from T-3 down to 0
            const int m = T - j;
            double s = 0.0;
            for (int k = 2; k < j && k <= T - 2; ++k) {
                const double lc = count_c3_log(j, k, p);
                if (lc == kNegInf || ldelta[k] == kNegInf) continue;
                s += std::exp(lc + ldelta[k]);
            }
            const double den = (1.0 - ssum) * g3;  // C3(j,2)/2 = 1 for all j >= 3
            out[m] = den <= 0.0 ? 0.0 : std::min(1.0, std::max(0.0, s / den));
            ssum += out[m];
        }
        return out;
    }
    // Chain-attachment form: raw probability that a clean SIC chain ending at
    // the current slot attaches to one of the device's two past cells.
    for (int m = 0; m <= T - 3; ++m) {
        const int j = T - m;
        double s = 0.0;
        for (int k = 2; k < j && k <= T - 2; ++k) {
            const double lc = count_c3_log(j, k, p);
            if (lc == kNegInf || ldelta[k] == kNegInf) continue;
            s += std::exp(lc + ldelta[k]);
        }
        out[m] = std::min(1.0, s);
    }
    return out;
}

AnalyticTables compute_tables(const ModelParams& p, Psic3Form form) {
    AnalyticTables t;
    t.transitions = slot_wait_distributions(p);
    t.sic.delta.assign(p.T - 1, 0.0);
    for (int i = 2; i <= p.T - 2; ++i) {
        const double l = delta_log(i, p);
        t.sic.delta[i] = l == kNegInf ? 0.0 : std::exp(l);
    }
    t.sic.p_sic2 = psic2(p);
    t.sic.p_sic3 = psic3(p, form);
    t.transitions.p_t1 = pt1(p);
    t.transitions.big_gamma2 = big_gamma2(p);
    t.transitions.big_gamma3 = p.T >= 4 && p.N() >= 2.0 ? big_gamma3(p) : 0.0;
    t.transitions.psi = psi(p, t.transitions.beta, t.sic.p_sic2);
    t.transitions.p_t2 = pt2(p, t.transitions.psi);
    return t;
}

}  // namespace rach
