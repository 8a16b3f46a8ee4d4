#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rach/oracle.hpp"
#include "rach/sic_tables.hpp"

using namespace rach;
using oracle::EnumSpace;

TEST_CASE("delta enumeration at the worked examples") {
    const auto r1 = oracle::enumerate_delta(2, EnumSpace{4, 2});
    CHECK(r1.num == 1);
    CHECK(r1.den == 6);
    const auto r2 = oracle::enumerate_delta(2, EnumSpace{5, 2});
    CHECK(r2.den == 10);  // count / C(5,2)
    CHECK(r2.num == 1);   // only the {rmin, rmin+1} partner qualifies
    const auto r3 = oracle::enumerate_delta(4, EnumSpace{5, 2});  // i > N
    CHECK(r3.num == 0);
}

TEST_CASE("delta enumeration certifies the closed form for chains of 2 and 3") {
    for (int T = 4; T <= 7; ++T) {
        for (int N = 2; N <= 4; ++N) {
            EnumSpace space{T, N};
            for (int i = 2; i <= std::min({3, N, T - 2}); ++i) {
                ModelParams p;
                p.T = T;
                p.K = 1;
                p.E = double(N) / T;
                p.L = 1e6;
                const auto r = oracle::enumerate_delta(i, space);
                CHECK(delta_exact(i, p) == doctest::Approx(r.value()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("chains of four devices expose the sequence-count reading") {
    // The closed form multiplies per-step choice counts ((i-1)!)^2 = 36; the
    // enumeration of labeled arrangements that actually peel finds more.
    EnumSpace space{7, 4};
    ModelParams p;
    p.T = 7;
    p.K = 1;
    p.E = 4.0 / 7;
    p.L = 1e6;
    const auto r = oracle::enumerate_delta(4, space);
    CHECK(r.value() > delta_exact(4, p));
}

TEST_CASE("count enumeration matches the closed forms for k = 2, 3") {
    EnumSpace space{7, 2};
    ModelParams p;
    p.T = 7;
    p.K = 1;
    p.E = 2.0 / 7;
    p.L = 1e6;
    for (int k = 2; k <= 3; ++k) {
        for (int j = 1; j <= 7 - k; ++j)
            CHECK(double(oracle::enumerate_counts(j, k, 2, space)) ==
                  doctest::Approx(count_c2(j, k, p)));
        for (int j = 3; j <= 7; ++j)
            CHECK(double(oracle::enumerate_counts(j, k, 3, space)) ==
                  doctest::Approx(count_c3(j, k, p)));
    }
    CHECK(oracle::enumerate_counts(3, 2, 3, space) == 2);
    CHECK(oracle::enumerate_counts(6, 2, 2, space) == 0);  // k > slots available
}

TEST_CASE("psic frequencies, frozen counts at T=4 N=2") {
    const auto f = oracle::enumerate_psic(EnumSpace{4, 2});
    CHECK(f.visits2 == std::vector<std::uint64_t>{0, 7, 3});
    CHECK(f.saves2 == std::vector<std::uint64_t>{0, 3, 1});
    CHECK(f.visits3 == std::vector<std::uint64_t>{3, 1});
    CHECK(f.saves3 == std::vector<std::uint64_t>{0, 0});
    CHECK(f.freq2(1) == doctest::Approx(3.0 / 7));
}

TEST_CASE("psic frequencies, frozen counts at T=6 N=4") {
    const auto f = oracle::enumerate_psic(EnumSpace{6, 4});
    CHECK(f.visits2 == std::vector<std::uint64_t>{0, 20396, 13224, 6909, 2375});
    CHECK(f.saves2 == std::vector<std::uint64_t>{0, 3600, 1368, 432, 108});
    CHECK(f.visits3 == std::vector<std::uint64_t>{10330, 7242, 4287, 1591});
    CHECK(f.saves3 == std::vector<std::uint64_t>{180, 1044, 666, 162});
}

TEST_CASE("psic frequencies, frozen counts at T=6 N=3") {
    const auto f = oracle::enumerate_psic(EnumSpace{6, 3});
    CHECK(f.visits2 == std::vector<std::uint64_t>{0, 920, 636, 351, 125});
    CHECK(f.saves2 == std::vector<std::uint64_t>{0, 240, 120, 48, 12});
    CHECK(f.visits3 == std::vector<std::uint64_t>{370, 246, 147, 61});
    CHECK(f.saves3 == std::vector<std::uint64_t>{0, 24, 24, 12});
}

TEST_CASE("no collisions with a single device") {
    const auto f = oracle::enumerate_psic(EnumSpace{5, 1});
    for (auto v : f.saves2) CHECK(v == 0);
    for (auto v : f.saves3) CHECK(v == 0);
    for (auto v : f.visits2) CHECK(v == 0);
}

TEST_CASE("two devices never recover from a double failure") {
    // failing both transmissions with one other device forces the identical
    // pair, a stopping set
    for (int T = 4; T <= 7; ++T) {
        const auto f = oracle::enumerate_psic(EnumSpace{T, 2});
        for (auto v : f.saves3) CHECK(v == 0);
    }
}

TEST_CASE("top stage-2 state hazard equals the closed form exactly") {
    // at j = T-2 the recursion has no attrition correction and the chain
    // construction captures the event exactly
    for (int T = 4; T <= 7; ++T) {
        for (int N = 2; N <= 4; ++N) {
            const auto f = oracle::enumerate_psic(EnumSpace{T, N});
            ModelParams p;
            p.T = T;
            p.K = 1;
            p.E = double(N) / T;
            p.L = 1e6;
            const auto a = psic2(p);
            CHECK(a[T - 2] == doctest::Approx(f.freq2(T - 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("space validation") {
    CHECK_THROWS_AS(oracle::enumerate_psic(EnumSpace{9, 2}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::enumerate_psic(EnumSpace{5, 6}), std::invalid_argument);
    CHECK(EnumSpace{8, 5}.configurations() == 17210368ULL);  // 28^5
}
