#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "antboost/acar.hpp"
#include "antboost/stats.hpp"

using namespace antboost;

namespace {

SiteWorld two_sites(double q0, double q1) {
    SiteWorld w;
    w.qualities = {q0, q1};
    w.heuristics = {1.0, 1.0};
    w.best_site = q0 >= q1 ? 0 : 1;
    return w;
}

} // namespace

TEST_CASE("choice probabilities: symmetry, exponent zero, explicit case") {
    SiteWorld w;
    w.qualities = {1, 1, 1, 1};
    w.heuristics = {1, 1, 1, 1};
    const PheromoneState tau{{3.0, 3.0, 3.0, 3.0}};
    const auto p = choice_probabilities(tau, w, 2.0, 1.0);
    for (double v : p) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

    // alpha = beta = 0 kills all dependence.
    const PheromoneState skew{{10.0, 1.0, 0.1, 5.0}};
    SiteWorld wh = w;
    wh.heuristics = {9.0, 1.0, 2.0, 0.5};
    const auto u = choice_probabilities(skew, wh, 0.0, 0.0);
    for (double v : u) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

    const auto w2 = two_sites(1, 1);
    const auto p2 = choice_probabilities(PheromoneState{{2.0, 1.0}}, w2, 2.0, 0.0);
    CHECK(p2[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p2[1] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("choice probabilities form a simplex and are scale invariant") {
    RngStream rng = derive_stream(51, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t k = 2 + rng.next_below(6);
        SiteWorld w;
        w.qualities.assign(k, 1.0);
        w.heuristics.resize(k);
        PheromoneState tau;
        tau.tau.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            tau.tau[j] = 0.01 + 10.0 * rng.next_double();
            w.heuristics[j] = 0.1 + 2.0 * rng.next_double();
        }
        const double alpha = 0.2 + 3.0 * rng.next_double();
        const double beta = 2.0 * rng.next_double();
        const auto p = choice_probabilities(tau, w, alpha, beta);
        double sum = 0.0;
        for (double v : p) {
            REQUIRE(v >= 0.0);
            sum += v;
        }
        REQUIRE(std::fabs(sum - 1.0) < 1e-12);

        const double c = 0.5 + 4.0 * rng.next_double();
        PheromoneState scaled = tau;
        for (double& v : scaled.tau) v *= c;
        const auto q = choice_probabilities(scaled, w, alpha, beta);
        for (std::size_t j = 0; j < k; ++j) {
            REQUIRE(q[j] == doctest::Approx(p[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("all-zero pheromone with a positive exponent is rejected") {
    const auto w = two_sites(10, 5);
    CHECK_THROWS_AS(choice_probabilities(PheromoneState{{0.0, 0.0}}, w, 2.0, 0.0),
                    std::domain_error);
}

TEST_CASE("observation noise: exact at sigma 0, unbiased, clamped") {
    RngStream rng = derive_stream(51, 1);
    CHECK(observe_quality(7.25, NoiseModel{NoiseKind::absolute, 0.0}, rng) == 7.25);
    CHECK(observe_quality(7.25, NoiseModel{NoiseKind::proportional, 0.0}, rng) == 7.25);

    const NoiseModel prop{NoiseKind::proportional, 0.1};
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += observe_quality(10.0, prop, rng);
    CHECK(sum / n == doctest::Approx(10.0).epsilon(0.002));

    const NoiseModel wild{NoiseKind::absolute, 100.0};
    for (int i = 0; i < 1000; ++i) {
        CHECK(observe_quality(1.0, wild, rng) >= 0.0);
    }
}

TEST_CASE("pheromone step arithmetic") {
    const PheromoneState one{{1.0}};
    const std::vector<double> none{0.0};
    CHECK(pheromone_step(one, none, 0.1, 0.0).tau[0] == doctest::Approx(0.9).epsilon(1e-15));

    const PheromoneState two{{2.0, 3.0}};
    const std::vector<double> dep{1.0, 0.0};
    const auto out = pheromone_step(two, dep, 0.5, 0.0);
    CHECK(out.tau[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(out.tau[1] == doctest::Approx(1.5).epsilon(1e-15));

    // Full evaporation: tau' = max(tau_min, deposits).
    const auto wiped = pheromone_step(two, dep, 1.0, 0.25);
    CHECK(wiped.tau[0] == doctest::Approx(1.0));
    CHECK(wiped.tau[1] == doctest::Approx(0.25));
}

TEST_CASE("deposit-free pheromone decays geometrically, floored") {
    ColonyConfig config;
    config.deposit_rate = 0.0;
    config.alpha_exp = 1.0;
    config.evaporation = 0.2;
    config.tau0 = 1.0;
    config.tau_min = 1e-6;
    config.waves = 40;
    config.ants_per_wave = 5;
    const auto w = two_sites(10, 5);
    RngStream rng = derive_stream(51, 2);
    const auto [decision, trace] = run_acar(w, config, rng);
    (void)decision;
    for (std::size_t t = 0; t < trace.tau_history.size(); ++t) {
        const double expected =
            std::max(1e-6, std::pow(0.8, static_cast<double>(t)) * 1.0);
        for (double v : trace.tau_history[t]) {
            CHECK(v == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero-noise two-site runs pick the better site almost always") {
    ColonyConfig config;
    config.alpha_exp = 2.0;
    config.evaporation = 0.1;
    config.deposit_rate = 0.05;
    config.waves = 20;
    config.ants_per_wave = 50;
    const auto w = two_sites(10, 5);
    int correct = 0;
    for (int rep = 0; rep < 100; ++rep) {
        RngStream rng = derive_stream(51, 100 + rep);
        if (run_acar(w, config, rng).first.correct) ++correct;
    }
    CHECK(correct >= 95);
}

TEST_CASE("one wave, one ant: decision is the visited site or the tie winner") {
    ColonyConfig config;
    config.waves = 1;
    config.ants_per_wave = 1;
    config.alpha_exp = 1.0;
    config.deposit_rate = 0.5;
    config.evaporation = 0.1;
    const auto w = two_sites(10, 5);
    RngStream rng = derive_stream(51, 3);
    const auto [decision, trace] = run_acar(w, config, rng);
    std::size_t visited = trace.visits[0][0] == 1 ? 0 : 1;
    CHECK(decision.chosen_site == visited);
    CHECK(trace.visits[0][0] + trace.visits[0][1] == 1);
}

TEST_CASE("visit counts sum to the wave size and epsilon lies in [0,1]") {
    ColonyConfig config;
    config.waves = 15;
    config.ants_per_wave = 23;
    config.noise = NoiseModel{NoiseKind::proportional, 0.2};
    const auto w = two_sites(10, 7);
    RngStream rng = derive_stream(51, 4);
    const auto trace = run_acar(w, config, rng).second;
    for (std::size_t t = 0; t < config.waves; ++t) {
        int total = 0;
        for (int v : trace.visits[t]) total += v;
        CHECK(total == 23);
        CHECK(trace.epsilon[t] >= 0.0);
        CHECK(trace.epsilon[t] <= 1.0);
        CHECK(trace.epsilon[t] ==
              doctest::Approx(1.0 - trace.visits[t][0] / 23.0).epsilon(1e-12));
    }
}

TEST_CASE("strong-feedback regime: best site's pheromone dominates by the end") {
    ColonyConfig config;  // defaults: alpha 2, rho 0.1, deposit 0.05, 30 waves, 20 ants
    int dominated = 0;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream rng = derive_stream(51, 300 + rep);
        SiteWorld w = make_site_world(4, 0.25, rng);
        const auto trace = run_acar(w, config, rng).second;
        const auto& final_tau = trace.tau_history.back();
        bool top = true;
        for (std::size_t j = 1; j < final_tau.size(); ++j) {
            if (final_tau[j] >= final_tau[0]) top = false;
        }
        if (top) ++dominated;
    }
    CHECK(dominated >= 90);
}

TEST_CASE("quorum margin: explicit values, tie, and scale invariance") {
    CHECK(quorum_margin(PheromoneState{{6.0, 2.0, 2.0}}) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(quorum_margin(PheromoneState{{5.0, 5.0}}) == 0.0);
    CHECK(quorum_margin(PheromoneState{{1.0, 0.0, 0.0}}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(quorum_margin(PheromoneState{{0.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(quorum_margin(PheromoneState{{1.0}}), std::invalid_argument);

    RngStream rng = derive_stream(51, 5);
    for (int rep = 0; rep < 100; ++rep) {
        PheromoneState tau;
        tau.tau.resize(2 + rng.next_below(5));
        for (double& v : tau.tau) v = 0.01 + rng.next_double();
        const double mu = quorum_margin(tau);
        CHECK(mu >= 0.0);
        CHECK(mu < 1.0);
        PheromoneState scaled = tau;
        const double c = 0.1 + 5.0 * rng.next_double();
        for (double& v : scaled.tau) v *= c;
        CHECK(quorum_margin(scaled) == doctest::Approx(mu).epsilon(1e-12));
    }
}

TEST_CASE("expected drift: pure evaporation and fixed point") {
    const auto w = two_sites(10, 5);
    ColonyConfig config;
    config.alpha_exp = 1.0;
    config.evaporation = 0.25;
    config.deposit_rate = 0.0;
    const PheromoneState tau{{2.0, 4.0}};
    const auto d = expected_drift(tau, w, config);
    CHECK(d[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(-1.0).epsilon(1e-12));

    // Stationarity: rho tau_j = N p_j gamma Q_j has zero drift. With
    // alpha = 1, tau proportional to p, so tau_j = N gamma Q_j p_j / rho
    // is consistent when p solves p_j = tau_j / sum(tau).
    ColonyConfig c2;
    c2.alpha_exp = 1.0;
    c2.evaporation = 0.1;
    c2.deposit_rate = 0.05;
    c2.ants_per_wave = 20;
    // Solve directly for the two-site fixed point: p_0 = q0 / (q0 + q1)
    // is not stationary in general; instead pick tau from the balance
    // equation tau_j = N gamma Q_j p_j / rho with p from tau -- iterate.
    PheromoneState fp{{1.0, 1.0}};
    for (int it = 0; it < 200; ++it) {
        const auto p = choice_probabilities(fp, w, c2.alpha_exp, c2.beta_exp);
        for (std::size_t j = 0; j < 2; ++j) {
            fp.tau[j] = 20.0 * p[j] * c2.deposit_rate * w.qualities[j] / c2.evaporation;
        }
    }
    const auto drift = expected_drift(fp, w, c2);
    for (double v : drift) CHECK(std::fabs(v) < 1e-6);
}

TEST_CASE("expected drift matches the Monte Carlo one-step mean") {
    RngStream seeder = derive_stream(51, 6);
    for (int cfg = 0; cfg < 3; ++cfg) {
        const std::size_t k = 2 + seeder.next_below(3);
        SiteWorld w = make_site_world(k, 0.1 + 0.3 * seeder.next_double(), seeder);
        ColonyConfig config;
        config.alpha_exp = 0.5 + 2.0 * seeder.next_double();
        config.evaporation = 0.05 + 0.4 * seeder.next_double();
        config.deposit_rate = 0.02 + 0.08 * seeder.next_double();
        config.ants_per_wave = 5 + seeder.next_below(20);
        config.waves = 1;
        config.noise = NoiseModel{NoiseKind::proportional, 0.1};
        PheromoneState tau;
        tau.tau.resize(k);
        for (double& v : tau.tau) v = 0.5 + 2.0 * seeder.next_double();

        const auto predicted = expected_drift(tau, w, config);
        const int samples = 20000;
        std::vector<double> mean(k, 0.0), m2(k, 0.0);
        const auto probs = choice_probabilities(tau, w, config.alpha_exp, config.beta_exp);
        for (int s = 0; s < samples; ++s) {
            RngStream rng = derive_stream(777, 1000 + cfg * samples + s);
            std::vector<double> deposits(k, 0.0);
            for (std::size_t a = 0; a < config.ants_per_wave; ++a) {
                const std::size_t site = sample_site(probs, rng);
                deposits[site] +=
                    config.deposit_rate * observe_quality(w.qualities[site], config.noise, rng);
            }
            const auto next = pheromone_step(tau, deposits, config.evaporation, 0.0);
            for (std::size_t j = 0; j < k; ++j) {
                const double delta = (next.tau[j] - tau.tau[j]) - mean[j];
                mean[j] += delta / (s + 1);
                m2[j] += delta * ((next.tau[j] - tau.tau[j]) - mean[j]);
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            const double se = std::sqrt(m2[j] / (samples - 1) / samples);
            CHECK(std::fabs(mean[j] - predicted[j]) < 3.0 * se + 1e-12);
        }
    }
}

TEST_CASE("weak-colony calibration: formula, limits, Monte Carlo validation") {
    CHECK(calibrate_weak_colony(2.0, 0.25) == doctest::Approx(2.096716165015061).epsilon(1e-8));
    // gamma -> 0.5 makes the required noise vanish.
    CHECK(calibrate_weak_colony(2.0, 0.499999) < 0.31);
    CHECK(calibrate_weak_colony(2.0, 0.4999999999) < 0.25);
    CHECK_THROWS_AS(calibrate_weak_colony(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_weak_colony(2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_weak_colony(0.0, 0.25), std::invalid_argument);

    // A single ant comparing one observation of each site is correct with
    // probability 1/2 + gamma.
    const double gamma = 0.25;
    const double q_best = 10.0, q_other = 8.0;
    const double sigma = calibrate_weak_colony(q_best - q_other, gamma);
    const NoiseModel noise{NoiseKind::absolute, sigma};
    RngStream rng = derive_stream(51, 7);
    int correct = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double a = observe_quality(q_best, noise, rng);
        const double b = observe_quality(q_other, noise, rng);
        if (a > b) ++correct;
    }
    CHECK(static_cast<double>(correct) / n == doctest::Approx(0.75).epsilon(0.0027));
}
