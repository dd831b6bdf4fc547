#include "antboost/acar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "antboost/stats.hpp"

namespace antboost {

void ColonyConfig::validate() const {
    if (!(alpha_exp > 0.0)) throw std::invalid_argument("ColonyConfig: alpha_exp must be > 0");
    if (!(beta_exp >= 0.0)) throw std::invalid_argument("ColonyConfig: beta_exp must be >= 0");
    if (!(evaporation > 0.0 && evaporation <= 1.0))
        throw std::invalid_argument("ColonyConfig: evaporation must lie in (0, 1]");
    if (!(deposit_rate >= 0.0)) throw std::invalid_argument("ColonyConfig: deposit_rate must be >= 0");
    if (!(tau0 > tau_min && tau_min >= 0.0))
        throw std::invalid_argument("ColonyConfig: need tau0 > tau_min >= 0");
    if (waves < 1) throw std::invalid_argument("ColonyConfig: waves must be >= 1");
    if (ants_per_wave < 1) throw std::invalid_argument("ColonyConfig: ants_per_wave must be >= 1");
    if (!(noise.sigma >= 0.0)) throw std::invalid_argument("ColonyConfig: noise sigma must be >= 0");
}

std::vector<double> choice_probabilities(const PheromoneState& tau, const SiteWorld& world,
                                         double alpha_exp, double beta_exp) {
    const std::size_t k = world.num_sites();
    if (tau.tau.size() != k)
        throw std::invalid_argument("choice_probabilities: tau/world size mismatch");

    std::vector<double> weights(k);
    double denom = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double w = std::pow(tau.tau[j], alpha_exp) * std::pow(world.heuristics[j], beta_exp);
        weights[j] = w;
        denom += w;
    }
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw std::domain_error("choice_probabilities: degenerate pheromone field (zero or nonfinite mass)");
    for (double& w : weights) w /= denom;
    return weights;
}

double observe_quality(double quality, const NoiseModel& noise, RngStream& rng) {
    double q = quality;
    if (noise.sigma > 0.0) {
        const double e = noise.sigma * rng.next_normal();
        q = noise.kind == NoiseKind::absolute ? quality + e : quality * (1.0 + e);
    }
    return q < 0.0 ? 0.0 : q;
}

PheromoneState pheromone_step(const PheromoneState& tau, std::span<const double> deposits,
                              double rho, double tau_min) {
    PheromoneState next;
    next.tau.resize(tau.tau.size());
    for (std::size_t j = 0; j < tau.tau.size(); ++j) {
        const double v = (1.0 - rho) * tau.tau[j] + deposits[j];
        next.tau[j] = v < tau_min ? tau_min : v;
    }
    return next;
}

std::size_t sample_site(std::span<const double> probs, RngStream& rng) {
    const double u = rng.next_double();
    double cum = 0.0;
    for (std::size_t j = 0; j + 1 < probs.size(); ++j) {
        cum += probs[j];
        if (u < cum) return j;
    }
    return probs.size() - 1;
}

std::pair<QuorumDecision, WaveTrace> run_acar(const SiteWorld& world, const ColonyConfig& config,
                                              RngStream& rng) {
    config.validate();
    const std::size_t k = world.num_sites();
    const std::size_t ants = config.ants_per_wave;

    PheromoneState state;
    state.tau.assign(k, config.tau0);

    WaveTrace trace;
    trace.tau_history.reserve(config.waves + 1);
    trace.tau_history.push_back(state.tau);

    std::vector<double> deposits(k);
    std::vector<int> visits(k);
    std::vector<double> sum_q(k);

    for (std::size_t t = 0; t < config.waves; ++t) {
        const auto probs = choice_probabilities(state, world, config.alpha_exp, config.beta_exp);
        std::fill(deposits.begin(), deposits.end(), 0.0);
        std::fill(visits.begin(), visits.end(), 0);
        std::fill(sum_q.begin(), sum_q.end(), 0.0);

        for (std::size_t a = 0; a < ants; ++a) {
            const std::size_t site = sample_site(probs, rng);
            const double q = observe_quality(world.qualities[site], config.noise, rng);
            deposits[site] += config.deposit_rate * q;
            ++visits[site];
            sum_q[site] += q;
        }

        state = pheromone_step(state, deposits, config.evaporation, config.tau_min);

        std::vector<double> mean_q(k, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t j = 0; j < k; ++j) {
            if (visits[j] > 0) mean_q[j] = sum_q[j] / visits[j];
        }
        const double eps =
            static_cast<double>(ants - static_cast<std::size_t>(visits[world.best_site])) /
            static_cast<double>(ants);
        trace.tau_history.push_back(state.tau);
        trace.visits.push_back(visits);
        trace.mean_observed.push_back(std::move(mean_q));
        trace.epsilon.push_back(eps);
    }

    QuorumDecision decision;
    decision.chosen_site = 0;
    for (std::size_t j = 1; j < k; ++j) {
        if (state.tau[j] > state.tau[decision.chosen_site]) decision.chosen_site = j;
    }
    decision.margin = quorum_margin(state);
    decision.correct = decision.chosen_site == world.best_site;
    return {decision, std::move(trace)};
}

double quorum_margin(const PheromoneState& tau) {
    if (tau.tau.size() < 2)
        throw std::invalid_argument("quorum_margin: need at least 2 sites");
    double total = 0.0;
    double top = -std::numeric_limits<double>::infinity();
    double second = -std::numeric_limits<double>::infinity();
    for (double v : tau.tau) {
        total += v;
        if (v > top) {
            second = top;
            top = v;
        } else if (v > second) {
            second = v;
        }
    }
    if (!(total > 0.0)) throw std::domain_error("quorum_margin: total pheromone must be > 0");
    return (top - second) / total;
}

std::vector<double> expected_drift(const PheromoneState& tau, const SiteWorld& world,
                                   const ColonyConfig& config) {
    const auto probs = choice_probabilities(tau, world, config.alpha_exp, config.beta_exp);
    std::vector<double> drift(tau.tau.size());
    const double n = static_cast<double>(config.ants_per_wave);
    for (std::size_t j = 0; j < drift.size(); ++j) {
        drift[j] = -config.evaporation * tau.tau[j] +
                   n * probs[j] * config.deposit_rate * world.qualities[j];
    }
    return drift;
}

double calibrate_weak_colony(double delta_q, double gamma_weak) {
    if (!(gamma_weak > 0.0 && gamma_weak < 0.5))
        throw std::invalid_argument("calibrate_weak_colony: gamma must lie in (0, 0.5)");
    if (!(delta_q > 0.0))
        throw std::invalid_argument("calibrate_weak_colony: delta_q must be > 0");
    return delta_q / (std::sqrt(2.0) * stats::normal_quantile(0.5 + gamma_weak));
}

} // namespace antboost
