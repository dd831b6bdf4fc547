#ifndef ANTBOOST_BOOSTING_HPP
#define ANTBOOST_BOOSTING_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "antboost/data.hpp"

namespace antboost {

/// Single-feature threshold classifier. Predicts `polarity` when
/// x[feature] <= threshold and -polarity otherwise, so the output is
/// always in {-1, +1}. Constant stumps are expressed through the +/-inf
/// threshold sentinels.
struct Stump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = 1;

    int predict(const double* x) const {
        return x[feature] <= threshold ? polarity : -polarity;
    }
    int predict(const Dataset& data, std::size_t i) const {
        return predict(data.row(i));
    }
};

/// Per-instance distribution D(i): nonnegative, sums to 1.
struct WeightVector {
    std::vector<double> w;

    static WeightVector uniform(std::size_t n) {
        WeightVector v;
        v.w.assign(n, 1.0 / static_cast<double>(n));
        return v;
    }
    std::size_t size() const { return w.size(); }
    double sum() const;
};

struct RoundRecord {
    double epsilon = 0.0;             // weighted error of the round's stump
    double alpha = 0.0;               // learner weight
    double z = 1.0;                   // exact normalizer of the update
    std::vector<double> distribution; // D_t the stump was trained on
};

struct BoostEnsemble {
    std::vector<Stump> stumps;
    std::vector<double> alphas;
    std::vector<RoundRecord> trace;
    std::vector<double> final_weights; // D_{T+1}
    bool stopped_early = false;        // a round hit epsilon == 0 or 0.5

    std::size_t rounds() const { return stumps.size(); }
};

struct MarginStats {
    std::vector<double> margins;      // normalized margins, each in [-1, 1]
    double min_margin = 0.0;
    std::vector<int> histogram;       // 40 uniform bins over [-1, 1]
};

/// Exhaustive weighted-error stump search with the per-feature sort order
/// cached, so repeated searches over the same dataset (one per boosting
/// round) cost O(n*d) instead of O(n*d*log n). The candidate thresholds
/// are -inf, the midpoints between consecutive distinct sorted values, and
/// +inf; ties are broken by lowest feature, then lowest threshold, then
/// polarity +1 first.
class StumpTrainer {
public:
    explicit StumpTrainer(const Dataset& data);

    /// Returns the error-minimizing stump and its weighted error.
    std::pair<Stump, double> best_stump(std::span<const double> weights) const;

    /// Same search against caller-supplied +/-1 targets instead of the
    /// dataset labels (used by the magnitude-weighted sign fit).
    std::pair<Stump, double> best_stump(std::span<const double> weights,
                                        std::span<const int> labels) const;

private:
    const Dataset* data_;
    std::vector<std::vector<std::uint32_t>> order_; // per feature, ascending
};

std::pair<Stump, double> train_stump(const Dataset& data, const WeightVector& weights);

double weighted_error(const Stump& h, const Dataset& data, const WeightVector& weights);

/// alpha = 0.5 * ln((1 - eps') / eps') with eps clamped to
/// [1e-10, 1 - 1e-10] so a perfect stump yields a large finite vote.
double learner_weight(double epsilon);

inline constexpr double kEpsilonFloor = 1e-10;

/// One multiplicative weight update D'(i) = D(i) exp(-alpha y_i h(x_i)) / Z
/// with the exact normalizer Z returned alongside.
std::pair<WeightVector, double> update_weights(const WeightVector& weights, double alpha,
                                               const Stump& h, const Dataset& data);

/// The classic sequential reweighting loop over decision stumps. Stops
/// early when a round's error hits 0 (that round is still recorded) or
/// exactly 0.5 (no progress possible; nothing further is added).
BoostEnsemble adaboost_train(const Dataset& data, std::size_t rounds);

/// F(x) = sum_t alpha_t h_t(x).
double decision_function(const BoostEnsemble& ens, const double* x);

/// sign(F) with sign(0) -> +1.
inline int classify(const BoostEnsemble& ens, const double* x) {
    return decision_function(ens, x) >= 0.0 ? 1 : -1;
}

/// Fraction of instances whose clean label matches the ensemble sign.
double accuracy_on_clean(const BoostEnsemble& ens, const Dataset& data);

/// Normalized margins rho_i = y_i sum_t alpha_t h_t(x_i) / sum_t |alpha_t|.
MarginStats margins(const BoostEnsemble& ens, const Dataset& data);

/// Margins of the first `rounds` stumps only.
MarginStats margins_prefix(const BoostEnsemble& ens, const Dataset& data, std::size_t rounds);

/// Mean exponential loss (1/n) sum_i exp(-y_i F_i).
double exp_loss(const Dataset& data, std::span<const double> f_values);

/// Negative loss gradient per instance: g(i) = y_i exp(-y_i F_i).
std::vector<double> pseudo_gradients(const Dataset& data, std::span<const double> f_values);

/// Per-instance ensemble scores on the training set.
std::vector<double> decision_values(const BoostEnsemble& ens, const Dataset& data);

} // namespace antboost

#endif
