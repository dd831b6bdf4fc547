#include "antboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace antboost {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double WeightVector::sum() const {
    double s = 0.0;
    for (double x : w) s += x;
    return s;
}

StumpTrainer::StumpTrainer(const Dataset& data) : data_(&data) {
    order_.resize(data.d);
    for (std::size_t j = 0; j < data.d; ++j) {
        auto& ord = order_[j];
        ord.resize(data.n);
        std::iota(ord.begin(), ord.end(), 0u);
        std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.at(a, j) < data.at(b, j);
        });
    }
}

std::pair<Stump, double> StumpTrainer::best_stump(std::span<const double> weights) const {
    return best_stump(weights, data_->labels);
}

std::pair<Stump, double> StumpTrainer::best_stump(std::span<const double> weights,
                                                  std::span<const int> labels) const {
    const Dataset& data = *data_;
    if (weights.size() != data.n || labels.size() != data.n)
        throw std::invalid_argument("best_stump: weight/label length mismatch");

    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        (labels[i] > 0 ? w_pos : w_neg) += weights[i];
    }

    Stump best;
    double best_err = kInf;
    auto consider = [&](double err, std::size_t feature, double threshold, int polarity) {
        if (err < best_err) {
            best_err = err;
            best = Stump{feature, threshold, polarity};
        }
    };

    for (std::size_t j = 0; j < data.d; ++j) {
        // threshold -inf: h == -polarity everywhere
        consider(w_pos, j, -kInf, +1);
        consider(w_neg, j, -kInf, -1);

        // Sweep midpoints. With everything at or below the cut predicted
        // `polarity`, the error for polarity +1 is
        //   (negative mass left of cut) + (positive mass right of it),
        // and the polarity -1 error is its complement.
        const auto& ord = order_[j];
        const double w_total = w_pos + w_neg;
        double pos_left = 0.0, neg_left = 0.0;
        for (std::size_t k = 0; k + 1 < data.n; ++k) {
            const std::uint32_t i = ord[k];
            (labels[i] > 0 ? pos_left : neg_left) += weights[i];
            const double v = data.at(i, j);
            const double v_next = data.at(ord[k + 1], j);
            if (v == v_next) continue;  // midpoints only between distinct values
            const double threshold = v + (v_next - v) / 2.0;
            const double err_pos = neg_left + (w_pos - pos_left);
            consider(err_pos, j, threshold, +1);
            consider(w_total - err_pos, j, threshold, -1);
        }

        // threshold +inf: h == polarity everywhere
        consider(w_neg, j, kInf, +1);
        consider(w_pos, j, kInf, -1);
    }
    return {best, best_err};
}

std::pair<Stump, double> train_stump(const Dataset& data, const WeightVector& weights) {
    if (data.n == 0) throw std::invalid_argument("train_stump: empty dataset");
    StumpTrainer trainer(data);
    return trainer.best_stump(weights.w);
}

double weighted_error(const Stump& h, const Dataset& data, const WeightVector& weights) {
    double err = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        if (h.predict(data, i) != data.labels[i]) err += weights.w[i];
    }
    return err;
}

double learner_weight(double epsilon) {
    const double e = std::clamp(epsilon, kEpsilonFloor, 1.0 - kEpsilonFloor);
    return 0.5 * std::log((1.0 - e) / e);
}

std::pair<WeightVector, double> update_weights(const WeightVector& weights, double alpha,
                                               const Stump& h, const Dataset& data) {
    WeightVector next;
    next.w.resize(weights.size());
    double z = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        const double v = weights.w[i] *
                         std::exp(-alpha * data.labels[i] * h.predict(data, i));
        next.w[i] = v;
        z += v;
    }
    for (double& v : next.w) v /= z;
    return {std::move(next), z};
}

BoostEnsemble adaboost_train(const Dataset& data, std::size_t rounds) {
    if (rounds < 1) throw std::invalid_argument("adaboost_train: rounds must be >= 1");

    StumpTrainer trainer(data);
    BoostEnsemble ens;
    WeightVector dist = WeightVector::uniform(data.n);

    for (std::size_t t = 0; t < rounds; ++t) {
        auto [stump, eps] = trainer.best_stump(dist.w);
        if (eps >= 0.5) {
            // The search includes constant stumps, so eps <= 0.5 always;
            // hitting 0.5 exactly means alpha would be 0 and the update a
            // no-op. Halt instead of looping in place.
            ens.stopped_early = true;
            break;
        }
        const double alpha = learner_weight(eps);
        auto [next, z] = update_weights(dist, alpha, stump, data);

        ens.stumps.push_back(stump);
        ens.alphas.push_back(alpha);
        ens.trace.push_back(RoundRecord{eps, alpha, z, dist.w});
        dist = std::move(next);

        if (eps == 0.0) {
            ens.stopped_early = true;
            break;
        }
    }
    ens.final_weights = dist.w;
    return ens;
}

double decision_function(const BoostEnsemble& ens, const double* x) {
    double f = 0.0;
    for (std::size_t t = 0; t < ens.stumps.size(); ++t) {
        f += ens.alphas[t] * ens.stumps[t].predict(x);
    }
    return f;
}

double accuracy_on_clean(const BoostEnsemble& ens, const Dataset& data) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.n; ++i) {
        if (classify(ens, data.row(i)) == data.clean_labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.n);
}

MarginStats margins_prefix(const BoostEnsemble& ens, const Dataset& data, std::size_t rounds) {
    rounds = std::min(rounds, ens.rounds());
    double alpha_total = 0.0;
    for (std::size_t t = 0; t < rounds; ++t) alpha_total += std::fabs(ens.alphas[t]);
    if (!(alpha_total > 0.0))
        throw std::invalid_argument("margins: sum of |alpha| must be positive");

    MarginStats stats;
    stats.margins.resize(data.n);
    stats.histogram.assign(40, 0);
    stats.min_margin = kInf;
    for (std::size_t i = 0; i < data.n; ++i) {
        double f = 0.0;
        for (std::size_t t = 0; t < rounds; ++t) {
            f += ens.alphas[t] * ens.stumps[t].predict(data, i);
        }
        const double rho = data.labels[i] * f / alpha_total;
        stats.margins[i] = rho;
        stats.min_margin = std::min(stats.min_margin, rho);
        auto bin = static_cast<long>(std::floor((rho + 1.0) / 2.0 * 40.0));
        bin = std::clamp(bin, 0L, 39L);
        ++stats.histogram[static_cast<std::size_t>(bin)];
    }
    return stats;
}

MarginStats margins(const BoostEnsemble& ens, const Dataset& data) {
    return margins_prefix(ens, data, ens.rounds());
}

double exp_loss(const Dataset& data, std::span<const double> f_values) {
    if (f_values.size() != data.n)
        throw std::invalid_argument("exp_loss: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        s += std::exp(-data.labels[i] * f_values[i]);
    }
    return s / static_cast<double>(data.n);
}

std::vector<double> pseudo_gradients(const Dataset& data, std::span<const double> f_values) {
    if (f_values.size() != data.n)
        throw std::invalid_argument("pseudo_gradients: length mismatch");
    std::vector<double> g(data.n);
    for (std::size_t i = 0; i < data.n; ++i) {
        g[i] = data.labels[i] * std::exp(-data.labels[i] * f_values[i]);
    }
    return g;
}

std::vector<double> decision_values(const BoostEnsemble& ens, const Dataset& data) {
    std::vector<double> f(data.n, 0.0);
    for (std::size_t t = 0; t < ens.stumps.size(); ++t) {
        const double a = ens.alphas[t];
        const Stump& h = ens.stumps[t];
        for (std::size_t i = 0; i < data.n; ++i) {
            f[i] += a * h.predict(data, i);
        }
    }
    return f;
}

} // namespace antboost
