#ifndef ANTBOOST_GBM_HPP
#define ANTBOOST_GBM_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "antboost/boosting.hpp"
#include "antboost/data.hpp"

namespace antboost {

/// Differentiable per-instance loss l(y, F).
class Loss {
public:
    virtual ~Loss() = default;
    virtual double value(double y, double f) const = 0;
    virtual double derivative(double y, double f) const = 0; // d l / d F
    virtual std::string name() const = 0;

    /// When true, the weak fit treats the pseudo-residuals as a
    /// magnitude-weighted sign problem and returns a +/-1 stump: exactly
    /// the weighted-error minimizer over the shared threshold grid, with
    /// the exact stagewise step for that stump class. Used by the
    /// exponential loss, where this weak-fit class makes the stagewise
    /// path coincide with the reweighting loop at shrinkage 1.
    virtual bool sign_fit() const { return false; }
};

class ExponentialLoss final : public Loss {
public:
    double value(double y, double f) const override;
    double derivative(double y, double f) const override;
    std::string name() const override { return "exponential"; }
    bool sign_fit() const override { return true; }
};

class SquaredLoss final : public Loss {
public:
    double value(double y, double f) const override;     // 0.5 (y - F)^2
    double derivative(double y, double f) const override; // F - y
    std::string name() const override { return "squared"; }
};

/// Two-leaf regression stump: left_value when x[feature] <= threshold.
struct RegressionStump {
    std::size_t feature = 0;
    double threshold = 0.0;
    double left_value = 0.0;
    double right_value = 0.0;

    double eval(const double* x) const {
        return x[feature] <= threshold ? left_value : right_value;
    }
};

struct GbmModel {
    double f0 = 0.0;
    double shrinkage = 1.0;
    std::vector<RegressionStump> stumps;
    std::vector<double> steps;                     // line-search step per round
    std::vector<double> train_loss;                // mean loss after each round
    std::vector<std::vector<double>> residual_trace; // pseudo-residuals per round
    bool aborted = false;                          // line search failed to bracket

    double eval(const double* x) const {
        double f = f0;
        for (std::size_t t = 0; t < stumps.size(); ++t) {
            f += shrinkage * steps[t] * stumps[t].eval(x);
        }
        return f;
    }
};

/// Stagewise additive fit: F_0 minimizes the constant model, then each
/// round fits a stump to the negative gradient over the same threshold
/// grid as the classification search and takes a golden-section step.
GbmModel gradient_boost_train(const Dataset& data, const Loss& loss, std::size_t rounds,
                              double shrinkage);

/// Golden-section minimizer over [lo, hi]; tolerance 1e-8, 200 iterations.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi);

} // namespace antboost

#endif
