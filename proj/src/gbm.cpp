#include "antboost/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antboost {

double ExponentialLoss::value(double y, double f) const { return std::exp(-y * f); }
double ExponentialLoss::derivative(double y, double f) const { return -y * std::exp(-y * f); }

double SquaredLoss::value(double y, double f) const {
    const double r = y - f;
    return 0.5 * r * r;
}
double SquaredLoss::derivative(double y, double f) const { return f - y; }

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    constexpr double tol = 1e-8;
    constexpr int max_iter = 200;

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

namespace {

// Least-squares stump on raw residuals: minimize sum (r_i - c_side)^2 over
// the shared threshold grid, c_side the per-side mean. Ties first-wins in
// the same (feature, threshold) order as the classification search.
RegressionStump fit_ls_stump(const Dataset& data, const std::vector<double>& residuals) {
    const std::size_t n = data.n;
    double sum_all = 0.0;
    for (double r : residuals) sum_all += r;
    const double mean_all = sum_all / static_cast<double>(n);

    RegressionStump best;
    // Constant fit via the -inf sentinel (everything on the right side).
    best.feature = 0;
    best.threshold = -std::numeric_limits<double>::infinity();
    best.left_value = 0.0;
    best.right_value = mean_all;
    double best_score = sum_all * sum_all / static_cast<double>(n);

    std::vector<std::uint32_t> ord(n);
    for (std::size_t j = 0; j < data.d; ++j) {
        for (std::size_t i = 0; i < n; ++i) ord[i] = static_cast<std::uint32_t>(i);
        std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.at(a, j) < data.at(b, j);
        });
        double sum_left = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            sum_left += residuals[ord[k]];
            const double v = data.at(ord[k], j);
            const double v_next = data.at(ord[k + 1], j);
            if (v == v_next) continue;
            const double n_left = static_cast<double>(k + 1);
            const double n_right = static_cast<double>(n - k - 1);
            const double sum_right = sum_all - sum_left;
            const double score = sum_left * sum_left / n_left + sum_right * sum_right / n_right;
            if (score > best_score) {
                best_score = score;
                best.feature = j;
                best.threshold = v + (v_next - v) / 2.0;
                best.left_value = sum_left / n_left;
                best.right_value = sum_right / n_right;
            }
        }
    }
    return best;
}

// Generic-loss round: least-squares stump plus a golden-section step on
// the bracketed 1-D problem. Returns false when the search pegged the
// bracket edge (failed to bracket an interior optimum).
bool generic_round(const Dataset& data, const Loss& loss, const std::vector<double>& residuals,
                   const std::vector<double>& f_values, double r_mag, RegressionStump* stump,
                   double* step) {
    *stump = fit_ls_stump(data, residuals);
    const double span = 10.0 * std::max(1.0, r_mag);
    *step = golden_section_minimize(
        [&](double g) {
            double s = 0.0;
            for (std::size_t i = 0; i < data.n; ++i) {
                s += loss.value(data.labels[i], f_values[i] + g * stump->eval(data.row(i)));
            }
            if (!std::isfinite(s)) s = std::numeric_limits<double>::max();
            return s;
        },
        -span, span);
    return std::fabs(*step) < span * (1.0 - 1e-6);
}

} // namespace

GbmModel gradient_boost_train(const Dataset& data, const Loss& loss, std::size_t rounds,
                              double shrinkage) {
    if (rounds < 1) throw std::invalid_argument("gradient_boost_train: rounds must be >= 1");
    if (!(shrinkage > 0.0 && shrinkage <= 1.0))
        throw std::invalid_argument("gradient_boost_train: shrinkage must lie in (0, 1]");

    const std::size_t n = data.n;
    GbmModel model;
    model.shrinkage = shrinkage;

    if (loss.sign_fit()) {
        // The constant-model optimum of the exponential loss has the exact
        // form 0.5 ln(n+ / n-); the golden-section route only resolves it
        // to its interval tolerance, and that residue is enough to flip
        // tie-breaks in the stump search against the reweighting loop the
        // stagewise path is supposed to coincide with. Use the exact value.
        double pos = 0.0, neg = 0.0;
        for (int y : data.labels) (y > 0 ? pos : neg) += 1.0;
        const double p = std::clamp(pos / static_cast<double>(n), kEpsilonFloor,
                                    1.0 - kEpsilonFloor);
        model.f0 = 0.5 * std::log(p / (1.0 - p));
    } else {
        double y_mag = 1.0;
        for (int y : data.labels) y_mag = std::max(y_mag, std::fabs(static_cast<double>(y)));
        const double f0_span = 10.0 * y_mag;
        model.f0 = golden_section_minimize(
            [&](double g) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += loss.value(data.labels[i], g);
                return s;
            },
            -f0_span, f0_span);
    }

    std::vector<double> f_values(n, model.f0);
    StumpTrainer trainer(data);

    // Sign-fit losses train the weak learner on the normalized residual
    // magnitudes; the vector is carried across rounds with the same
    // multiplicative update the reweighting loop uses, which keeps the two
    // paths bit-identical (the quantity itself is |pseudo-gradient|,
    // renormalized).
    WeightVector dist;
    std::vector<int> sign_r(n);
    if (loss.sign_fit()) {
        dist.w.resize(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dist.w[i] = std::fabs(loss.derivative(data.labels[i], model.f0));
            total += dist.w[i];
        }
        for (double& w : dist.w) w /= total;
    }

    for (std::size_t t = 0; t < rounds; ++t) {
        std::vector<double> residuals(n);
        double r_mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = -loss.derivative(data.labels[i], f_values[i]);
            if (!std::isfinite(r))
                throw std::runtime_error("gradient_boost_train: nonfinite pseudo-residual");
            residuals[i] = r;
            r_mag = std::max(r_mag, std::fabs(r));
        }

        RegressionStump stump;
        double step = 0.0;
        bool stop_after = false;
        if (loss.sign_fit()) {
            for (std::size_t i = 0; i < n; ++i) sign_r[i] = residuals[i] >= 0.0 ? 1 : -1;
            auto [cls, eps] = trainer.best_stump(dist.w, sign_r);
            if (eps >= 0.5) break;  // no descent direction in the stump class
            stump.feature = cls.feature;
            stump.threshold = cls.threshold;
            stump.left_value = static_cast<double>(cls.polarity);
            stump.right_value = static_cast<double>(-cls.polarity);
            // Exact stagewise optimum of W_c e^{-g} + W_w e^{+g}.
            step = learner_weight(eps);
            if (eps == 0.0) stop_after = true;  // step is at the clamp
            auto [next, z] = update_weights(dist, shrinkage * step, cls, data);
            (void)z;
            dist = std::move(next);
        } else {
            if (!generic_round(data, loss, residuals, f_values, r_mag, &stump, &step)) {
                model.aborted = true;
                break;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            f_values[i] += shrinkage * step * stump.eval(data.row(i));
        }
        double mean_loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean_loss += loss.value(data.labels[i], f_values[i]);
        mean_loss /= static_cast<double>(n);
        if (!std::isfinite(mean_loss))
            throw std::runtime_error("gradient_boost_train: nonfinite loss");

        model.stumps.push_back(stump);
        model.steps.push_back(step);
        model.train_loss.push_back(mean_loss);
        model.residual_trace.push_back(std::move(residuals));
        if (stop_after) break;
    }
    return model;
}

} // namespace antboost
