#ifndef ANTBOOST_STATS_HPP
#define ANTBOOST_STATS_HPP

#include <cstddef>
#include <span>

namespace antboost::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), Wichura's AS 241 rational
/// approximation; absolute error well below 1e-8 over (0, 1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b), evaluated with the standard
/// continued fraction (modified Lentz), tolerance 1e-15.
double regularized_incomplete_beta(double x, double a, double b);

/// Student t CDF with (possibly fractional) degrees of freedom.
double student_t_cdf(double t, double df);

struct Summary {
    double mean = 0.0;
    double sd = 0.0;      // sample standard deviation (n-1), 0 when n < 2
    double stderr_ = 0.0; // sd / sqrt(n)
    std::size_t n = 0;
};

Summary summarize(std::span<const double> values);

/// Welch-Satterthwaite degrees of freedom for two independent samples.
double welch_df(double var_a, std::size_t n_a, double var_b, std::size_t n_b);

} // namespace antboost::stats

#endif
