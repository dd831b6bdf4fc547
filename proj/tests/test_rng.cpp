#include <doctest.h>

#include <array>
#include <vector>

#include "antboost/rng.hpp"

using namespace antboost;

TEST_CASE("same (master_seed, stream_index) reproduces the same draws") {
    RngStream a = derive_stream(42, 0);
    RngStream b = derive_stream(42, 0);
    for (int i = 0; i < 16; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("distinct stream indices differ") {
    RngStream a = derive_stream(42, 0);
    RngStream b = derive_stream(42, 1);
    bool any_diff = false;
    for (int i = 0; i < 16; ++i) {
        if (a.next_u64() != b.next_u64()) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("pairs from two streams pass a chi-square uniformity test") {
    // 8x8 occupancy grid over [0,1)^2, 4096 pairs, df = 63. The draw
    // sequence is deterministic, so this is a fixed-number check against
    // the 99.9% chi-square quantile.
    RngStream a = derive_stream(42, 0);
    RngStream b = derive_stream(42, 1);
    std::array<int, 64> counts{};
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        const int ca = static_cast<int>(a.next_double() * 8.0);
        const int cb = static_cast<int>(b.next_double() * 8.0);
        ++counts[ca * 8 + cb];
    }
    const double expected = n / 64.0;
    double chi2 = 0.0;
    for (int c : counts) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 103.442);  // chi-square df=63, p=0.999
}

TEST_CASE("uniform doubles lie in [0,1) with mean near 1/2") {
    RngStream rng = derive_stream(7, 3);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws have roughly standard moments") {
    RngStream rng = derive_stream(7, 4);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(0.0).epsilon(0.02));
    CHECK(std::fabs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("next_below is bounded and covers small ranges") {
    RngStream rng = derive_stream(11, 0);
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t v = rng.next_below(5);
        REQUIRE(v < 5);
        ++seen[v];
    }
    for (int c : seen) CHECK(c > 100);
}
