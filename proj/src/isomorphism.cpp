#include "antboost/isomorphism.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "antboost/stats.hpp"

namespace antboost {

std::vector<double> psi_map_weights(const WeightVector& weights, const SiteAssignment& assignment,
                                    std::size_t num_sites) {
    if (assignment.site_of.size() != weights.size())
        throw std::invalid_argument("psi_map_weights: assignment/weights length mismatch");
    std::vector<double> mapped(num_sites, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const std::size_t j = assignment.site_of[i];
        if (j >= num_sites)
            throw std::invalid_argument("psi_map_weights: site index out of range for K");
        mapped[j] += weights.w[i];
    }
    return mapped;
}

MatchedParams matched_parameters(double epsilon_t, double z_t) {
    if (!(epsilon_t > 0.0 && epsilon_t < 0.5))
        throw std::invalid_argument("matched_parameters: epsilon must lie in (0, 0.5)");
    if (!(z_t > 0.0 && z_t < 1.0))
        throw std::invalid_argument("matched_parameters: Z must lie in (0, 1)");
    MatchedParams p;
    p.alpha_unhalved = std::log((1.0 - epsilon_t) / epsilon_t);
    p.rho_matched = 1.0 - 1.0 / z_t;
    p.rho_out_of_domain = !(p.rho_matched > 0.0 && p.rho_matched <= 1.0);
    return p;
}

namespace {

std::vector<double> renormalized(std::vector<double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    for (double& x : v) x /= s;
    return v;
}

} // namespace

std::pair<Dataset, SiteAssignment> make_equivalence_instance(std::size_t n) {
    if (n < 4) throw std::invalid_argument("make_equivalence_instance: need n >= 4");
    Dataset data;
    data.n = n;
    data.d = 1;
    data.features.resize(n);
    data.labels.resize(n);
    data.clean_labels.resize(n);
    SiteAssignment assignment;
    assignment.site_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        data.features[i] = static_cast<double>(i);
        const int y = (i % 2 == 0) ? 1 : -1;
        data.labels[i] = y;
        data.clean_labels[i] = y;
        assignment.site_of[i] = (y > 0) ? 0 : 1;
    }
    return {std::move(data), std::move(assignment)};
}

EquivalenceReport update_equivalence_check(const Dataset& data, const SiteAssignment& assignment,
                                           const SiteWorld& world, std::size_t rounds,
                                           std::size_t mc_samples, double tol,
                                           std::uint64_t seed, ExecMode mode) {
    const std::size_t num_sites = world.num_sites();
    if (assignment.site_of.size() != data.n)
        throw std::invalid_argument("update_equivalence_check: assignment size mismatch");
    std::vector<std::size_t> occupancy(num_sites, 0);
    for (std::size_t j : assignment.site_of) {
        if (j >= num_sites)
            throw std::invalid_argument("update_equivalence_check: site index out of range");
        ++occupancy[j];
    }
    for (std::size_t j = 0; j < num_sites; ++j) {
        if (occupancy[j] == 0)
            throw std::invalid_argument("update_equivalence_check: every site needs an instance");
    }
    if (mc_samples < 2)
        throw std::invalid_argument("update_equivalence_check: mc_samples must be >= 2");

    // Colony settings for the comparison: linear pheromone response so the
    // mapped simplex state is used as-is, neutral heuristic, mild
    // evaporation, one ant per instance, exact (noise-free) observations.
    constexpr double kAlphaExp = 1.0;
    constexpr double kBetaExp = 0.0;
    constexpr double kRho = 0.1;
    const std::size_t ants = data.n;

    EquivalenceReport report;
    report.mc_samples = mc_samples;
    report.tol = tol;
    report.all_pass = true;
    report.notes.push_back(
        "matched alpha uses the unhalved form ln((1-eps)/eps); the training loop itself uses "
        "the halved vote 0.5*ln((1-eps)/eps).");

    StumpTrainer trainer(data);
    WeightVector dist = WeightVector::uniform(data.n);

    for (std::size_t t = 1; t <= rounds; ++t) {
        auto [stump, eps] = trainer.best_stump(dist.w);
        const double alpha = learner_weight(eps);
        auto [next, z] = update_weights(dist, alpha, stump, data);

        RoundEquivalence round;
        round.round = t;
        round.epsilon = eps;
        round.alpha = alpha;
        round.z = z;
        try {
            round.matched = matched_parameters(eps, z);
            if (round.matched.rho_out_of_domain) {
                report.notes.push_back(
                    "round " + std::to_string(t) + ": matched rho = 1 - 1/Z = " +
                    std::to_string(round.matched.rho_matched) +
                    " falls outside the evaporation domain (0, 1]; the check therefore uses "
                    "deposit-scale matching instead of that identity.");
            }
        } catch (const std::invalid_argument&) {
            report.notes.push_back("round " + std::to_string(t) +
                                   ": matched parameters undefined (eps or Z out of domain)");
        }

        const auto tau_now = psi_map_weights(dist, assignment, num_sites);
        const auto tau_target = psi_map_weights(next, assignment, num_sites);
        round.boost_simplex = renormalized(tau_target);

        double shift = 0.0;
        for (std::size_t i = 0; i < data.n; ++i) shift += std::fabs(next.w[i] - dist.w[i]);
        round.mass_shift = shift;

        PheromoneState state{tau_now};
        const auto probs = choice_probabilities(state, world, kAlphaExp, kBetaExp);
        double expected_unit_deposit = 0.0;
        for (std::size_t j = 0; j < num_sites; ++j) {
            expected_unit_deposit += static_cast<double>(ants) * probs[j] * world.qualities[j];
        }
        const double deposit_rate = shift / expected_unit_deposit;
        round.deposit_rate = deposit_rate;

        // One-wave Monte Carlo from the mapped state. Samples land in their
        // own slots and are reduced in index order afterwards.
        std::vector<std::vector<double>> samples(mc_samples);
        for_each_index(mc_samples, mode, [&](std::size_t s) {
            RngStream rng = derive_stream(seed, t * 1000000ULL + s);
            std::vector<double> deposits(num_sites, 0.0);
            for (std::size_t a = 0; a < ants; ++a) {
                const std::size_t site = sample_site(probs, rng);
                deposits[site] += deposit_rate * world.qualities[site];
            }
            auto stepped = pheromone_step(state, deposits, kRho, 0.0);
            samples[s] = std::move(stepped.tau);
        });

        std::vector<double> mean_raw(num_sites, 0.0);
        for (std::size_t s = 0; s < mc_samples; ++s) {
            for (std::size_t j = 0; j < num_sites; ++j) mean_raw[j] += samples[s][j];
        }
        for (double& v : mean_raw) v /= static_cast<double>(mc_samples);
        round.colony_simplex = renormalized(mean_raw);

        // Variance of the per-sample renormalized updates, for the SE band.
        std::vector<double> mean_norm(num_sites, 0.0);
        std::vector<double> m2(num_sites, 0.0);
        for (std::size_t s = 0; s < mc_samples; ++s) {
            const auto r = renormalized(samples[s]);
            for (std::size_t j = 0; j < num_sites; ++j) {
                const double delta = r[j] - mean_norm[j];
                mean_norm[j] += delta / static_cast<double>(s + 1);
                m2[j] += delta * (r[j] - mean_norm[j]);
            }
        }
        double var_sum = 0.0;
        for (std::size_t j = 0; j < num_sites; ++j) {
            var_sum += m2[j] / static_cast<double>(mc_samples - 1);
        }
        round.mc_stderr = std::sqrt(static_cast<double>(num_sites) * var_sum /
                                    static_cast<double>(mc_samples));

        double gap = 0.0;
        for (std::size_t j = 0; j < num_sites; ++j) {
            gap += std::fabs(round.colony_simplex[j] - round.boost_simplex[j]);
        }
        round.gap_l1 = gap;
        round.pass = gap < tol + 3.0 * round.mc_stderr;
        report.all_pass = report.all_pass && round.pass;

        report.rounds.push_back(std::move(round));
        dist = std::move(next);
    }
    return report;
}

ContractionReport error_contraction_trace(std::span<const WaveTrace> traces, double gamma_weak) {
    if (traces.empty())
        throw std::invalid_argument("error_contraction_trace: need at least one trace");
    const std::size_t waves = traces[0].epsilon.size();
    for (const auto& tr : traces) {
        if (tr.epsilon.size() != waves)
            throw std::invalid_argument("error_contraction_trace: traces differ in wave count");
    }

    ContractionReport rep;
    rep.gamma = gamma_weak;
    rep.replicates = traces.size();
    rep.mean_epsilon.resize(waves);
    rep.stderr_epsilon.resize(waves);
    std::vector<double> column(traces.size());
    for (std::size_t t = 0; t < waves; ++t) {
        for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r].epsilon[t];
        const auto s = stats::summarize(column);
        rep.mean_epsilon[t] = s.mean;
        rep.stderr_epsilon[t] = s.stderr_;
    }
    rep.ratio.resize(waves > 1 ? waves - 1 : 0);
    for (std::size_t t = 0; t + 1 < waves; ++t) {
        rep.ratio[t] = rep.mean_epsilon[t] > 0.0 ? rep.mean_epsilon[t + 1] / rep.mean_epsilon[t]
                                                 : std::numeric_limits<double>::quiet_NaN();
    }
    rep.envelope.resize(waves);
    rep.within_envelope.resize(waves);
    for (std::size_t t = 0; t < waves; ++t) {
        rep.envelope[t] = std::pow(1.0 - gamma_weak, static_cast<double>(t)) * rep.mean_epsilon[0];
        rep.within_envelope[t] =
            rep.mean_epsilon[t] <= rep.envelope[t] + 2.0 * rep.stderr_epsilon[t];
    }
    return rep;
}

} // namespace antboost
