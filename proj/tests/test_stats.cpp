#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "antboost/experiments.hpp"
#include "antboost/stats.hpp"

using namespace antboost;

// Reference values frozen from an independent statistics package.

TEST_CASE("normal quantile matches reference values") {
    CHECK(stats::normal_quantile(0.75) == doctest::Approx(0.6744897501960817).epsilon(1e-10));
    CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK(stats::normal_quantile(0.999) == doctest::Approx(3.090232306167813).epsilon(1e-10));
    CHECK(stats::normal_quantile(1e-9) == doctest::Approx(-5.9978070150076865).epsilon(1e-10));
    CHECK(std::fabs(stats::normal_quantile(0.5)) < 1e-12);
    CHECK_THROWS_AS(stats::normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(stats::normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("normal quantile inverts the CDF") {
    for (double p : {0.001, 0.05, 0.2, 0.5, 0.77, 0.95, 0.9999}) {
        CHECK(stats::normal_cdf(stats::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("student t CDF matches reference values") {
    CHECK(stats::student_t_cdf(1.5, 7) == doctest::Approx(0.911350756505015).epsilon(1e-10));
    CHECK(stats::student_t_cdf(-2.3, 12.7) ==
          doctest::Approx(0.01954686067141553).epsilon(1e-10));
    CHECK(stats::student_t_cdf(0.0, 3.3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(stats::student_t_cdf(4.8, 49.2) ==
          doctest::Approx(0.9999924020710943).epsilon(1e-10));
    CHECK(stats::student_t_cdf(-0.67, 1.1) ==
          doctest::Approx(0.3078741707233297).epsilon(1e-10));
}

TEST_CASE("incomplete beta endpoints and symmetry") {
    CHECK(stats::regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
    CHECK(stats::regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
    // I_x(a,b) = 1 - I_{1-x}(b,a)
    for (double x : {0.1, 0.37, 0.5, 0.93}) {
        const double lhs = stats::regularized_incomplete_beta(x, 2.5, 4.0);
        const double rhs = 1.0 - stats::regularized_incomplete_beta(1.0 - x, 4.0, 2.5);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    // I_x(1,1) = x
    CHECK(stats::regularized_incomplete_beta(0.42, 1.0, 1.0) ==
          doctest::Approx(0.42).epsilon(1e-12));
}

TEST_CASE("summarize computes stderr = sd / sqrt(n)") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 10.0};
    const auto s = stats::summarize(v);
    CHECK(s.n == 5);
    CHECK(s.mean == doctest::Approx(4.0));
    CHECK(s.stderr_ == doctest::Approx(s.sd / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("tost: identical samples with nonzero variance are equivalent") {
    const std::vector<double> a{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    const auto r = tost_equivalence(a, a, 0.5);
    CHECK(r.mean_diff == 0.0);
    CHECK(r.equivalent);
}

TEST_CASE("tost: shift of 2*delta with tiny variance is not equivalent") {
    std::vector<double> a, b;
    for (int i = 0; i < 20; ++i) {
        a.push_back(0.0 + 1e-4 * i);
        b.push_back(0.1 + 1e-4 * i);  // shifted by 2 * delta
    }
    const auto r = tost_equivalence(a, b, 0.05);
    CHECK_FALSE(r.equivalent);
}

TEST_CASE("tost matches a reference implementation on frozen samples") {
    const std::vector<double> a{-0.204708, 0.478943, -0.519439, -0.55573, 1.965781, 1.393406,
                                0.092908,  0.281746, 0.769023,  1.246435, 1.007189, -1.296221};
    const std::vector<double> b{0.712487,  0.643369,  2.329375, 1.629644, -2.702456,
                                -0.257764, 2.803538,  -0.357855, -0.509612, 1.015478,
                                5.173416,  -1.231841, -0.565631, 0.486182, 0.75392};
    const auto r = tost_equivalence(a, b, 0.05);
    CHECK(r.mean_diff == doctest::Approx(-0.2732055833333335).epsilon(1e-10));
    CHECK(r.df == doctest::Approx(21.59222289765687).epsilon(1e-10));
    CHECK(r.p_lower == doctest::Approx(0.6549713612627386).epsilon(1e-8));
    CHECK(r.p_upper == doctest::Approx(0.2822210295532871).epsilon(1e-8));
    CHECK_FALSE(r.equivalent);
}

TEST_CASE("tost: equal-mean noisy samples are detected as equivalent") {
    const std::vector<double> c{
        0.005238,  9e-06,     0.013438,  -0.007135, -0.008312, -0.023702, -0.018608, -0.008608,
        0.005601,  -0.012659, 0.001198,  -0.010635, 0.003329,  -0.023594, -0.001995, -0.01542,
        -0.009707, -0.01307,  0.002863,  0.00378,   -0.007539, 0.003313,  0.013497,  0.000699,
        0.002467,  -0.000119, 0.010048,  0.013272,  -0.009193, -0.015491, 0.000222,  0.007584,
        -0.006605, 0.008626,  -0.0001,   0.0005,    0.006702,  0.00853,   -0.009559, -0.000235};
    const std::vector<double> d{
        -0.023042, -0.006525, -0.012183, -0.013326, 0.010746,  0.007236,  0.0069,    0.010015,
        -0.005031, -0.006223, -0.009212, -0.007262, 0.002229,  0.000513,  -0.011577, 0.008167,
        0.004336,  0.010107,  0.018249,  -0.009975, 0.008506,  -0.001316, 0.009124,  0.001882,
        0.021695,  -0.001149, 0.020037,  0.000296,  0.007953,  0.001181,  -0.007485, 0.00585,
        0.001527,  -0.015657, -0.005625, -0.000327, -0.00929,  -0.004826, -0.000363, 0.010954};
    const auto r = tost_equivalence(c, d, 0.05);
    CHECK(r.df == doctest::Approx(77.98079658159286).epsilon(1e-8));
    CHECK(r.p_upper == doctest::Approx(7.028246675286738e-38).epsilon(1e-4));
    CHECK(r.equivalent);
}

TEST_CASE("tost rejects degenerate inputs") {
    const std::vector<double> constant{1.0, 1.0, 1.0, 1.0};
    const std::vector<double> single{1.0};
    CHECK_THROWS_AS(tost_equivalence(constant, constant, 0.05), std::domain_error);
    CHECK_THROWS_AS(tost_equivalence(single, constant, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(tost_equivalence(constant, constant, 0.0), std::invalid_argument);
}
