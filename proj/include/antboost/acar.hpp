#ifndef ANTBOOST_ACAR_HPP
#define ANTBOOST_ACAR_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "antboost/data.hpp"
#include "antboost/rng.hpp"

namespace antboost {

enum class NoiseKind { absolute, proportional };

/// Observation noise applied to a site quality: Q + e (absolute) or
/// Q * (1 + e) (proportional), e ~ Normal(0, sigma^2), clamped at 0.
struct NoiseModel {
    NoiseKind kind = NoiseKind::proportional;
    double sigma = 0.0;
};

struct ColonyConfig {
    double alpha_exp = 2.0;      // pheromone exponent
    double beta_exp = 0.0;       // heuristic exponent
    double evaporation = 0.1;    // per-wave decay in (0, 1]
    double deposit_rate = 0.05;  // pheromone added per unit observed quality
    double tau0 = 1.0;           // initial pheromone
    double tau_min = 1e-6;       // pheromone floor (defaults to 1e-6 * tau0)
    std::size_t waves = 30;
    std::size_t ants_per_wave = 20;
    NoiseModel noise;

    void validate() const;
};

struct PheromoneState {
    std::vector<double> tau;
};

/// Full run record: tau_history[0] is the initial state, tau_history[t]
/// the state after wave t; visits/mean_observed/epsilon are per wave.
/// epsilon[t] is the fraction of that wave's ants at suboptimal sites.
struct WaveTrace {
    std::vector<std::vector<double>> tau_history;
    std::vector<std::vector<int>> visits;
    std::vector<std::vector<double>> mean_observed; // NaN where unvisited
    std::vector<double> epsilon;
};

struct QuorumDecision {
    std::size_t chosen_site = 0;
    double margin = 0.0;
    bool correct = false;
};

/// p_j = tau_j^alpha * eta_j^beta / sum_k tau_k^alpha * eta_k^beta.
/// Throws when the denominator underflows to zero or is not finite.
std::vector<double> choice_probabilities(const PheromoneState& tau, const SiteWorld& world,
                                         double alpha_exp, double beta_exp);

double observe_quality(double quality, const NoiseModel& noise, RngStream& rng);

/// tau'_j = max(tau_min, (1 - rho) * tau_j + deposits_j).
PheromoneState pheromone_step(const PheromoneState& tau, std::span<const double> deposits,
                              double rho, double tau_min);

/// Sequential recruitment: per wave every ant samples a site from the
/// choice probabilities, observes its quality, and contributes
/// deposit_rate * observation to that site's deposit; deposits are applied
/// together with evaporation once per wave. The final decision is
/// argmax tau (ties to the lowest index).
std::pair<QuorumDecision, WaveTrace> run_acar(const SiteWorld& world, const ColonyConfig& config,
                                              RngStream& rng);

/// mu = (tau_max - tau_second) / sum tau. Zero exactly on a top-two tie;
/// the value 1 is attained only when every non-best entry is zero.
double quorum_margin(const PheromoneState& tau);

/// E[tau_j(t+1) - tau_j(t)] = -rho * tau_j + N * p_j * deposit_rate * Q_j,
/// ignoring the floor clamp (noise is zero-mean).
std::vector<double> expected_drift(const PheromoneState& tau, const SiteWorld& world,
                                   const ColonyConfig& config);

/// Absolute-noise sigma making a single ant comparing one observation of
/// each of two sites pick the better one with probability exactly
/// 1/2 + gamma: sigma = delta_q / (sqrt(2) * Phi^-1(1/2 + gamma)).
double calibrate_weak_colony(double delta_q, double gamma_weak);

/// Categorical draw from a probability vector.
std::size_t sample_site(std::span<const double> probs, RngStream& rng);

} // namespace antboost

#endif
