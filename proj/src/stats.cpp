#include "antboost/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace antboost::stats {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// AS 241 (Wichura 1988), PPND16 variant.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

namespace {

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta, modified Lentz iteration.
double incomplete_beta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double tol = 1e-15;
    constexpr int max_terms = 200000;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;

    for (int m = 1; m <= max_terms; ++m) {
        const double dm = static_cast<double>(m);
        // even-step numerator
        double numer = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        result *= d * c;
        // odd-step numerator
        numer = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double mult = d * c;
        result *= mult;
        if (std::fabs(mult - 1.0) < tol) break;
    }
    return result;
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("regularized_incomplete_beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * incomplete_beta_cf(x, a, b) / a;
    }
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                     incomplete_beta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf: df must be > 0");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double x = df / (t * t + df);
    const double half_tail = 0.5 * regularized_incomplete_beta(x, df / 2.0, 0.5);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = values.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n >= 2) {
        double ss = 0.0;
        for (double v : values) {
            const double dlt = v - s.mean;
            ss += dlt * dlt;
        }
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.stderr_ = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

double welch_df(double var_a, std::size_t n_a, double var_b, std::size_t n_b) {
    const double ta = var_a / static_cast<double>(n_a);
    const double tb = var_b / static_cast<double>(n_b);
    const double denom = ta * ta / static_cast<double>(n_a - 1) +
                         tb * tb / static_cast<double>(n_b - 1);
    if (denom <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double s = ta + tb;
    return s * s / denom;
}

} // namespace antboost::stats
