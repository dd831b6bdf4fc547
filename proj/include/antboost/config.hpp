#ifndef ANTBOOST_CONFIG_HPP
#define ANTBOOST_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antboost/experiments.hpp"

namespace antboost {

/// Configuration problem (unknown key, type mismatch, unreadable file).
/// The CLI maps this to exit code 1; runtime failures map to 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Defaults are the frozen calibration
/// values mirrored in configs/default.json; a config file overrides the
/// defaults and CLI flags override the file.
struct RunConfig {
    std::uint64_t master_seed = 20260810;
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv", "json"};
    int threads = 0;  // 0 = runtime default, 1 = serial reference path

    DataSpec data{};
    std::size_t adaboost_rounds = 120;

    struct AcarSection {
        std::size_t sites = 4;
        double quality_gap = 0.25;
        double alpha = 2.0;
        double beta = 0.0;
        double evaporation = 0.1;
        double deposit_rate = 0.05;
        double tau0 = 1.0;
        std::size_t waves = 30;
        std::size_t ants_per_wave = 20;
    } acar;

    WeakColonySpec weak_colony{};

    struct WeakLearnabilitySection {
        std::vector<double> gammas{0.15, 0.25, 0.4};
        std::vector<std::size_t> waves{5, 10, 20, 40, 80};
        std::size_t replicates = 80;
    } weak_learnability;

    struct TracesSection {
        std::size_t rounds = 200;
        double label_noise = 0.2;
    } traces;

    struct MarginsSection {
        std::size_t rounds = 200;
        std::size_t rounds_early = 20;
        double label_noise = 0.0;
        std::size_t waves_early = 5;
        double acar_noise_sigma = 0.1;
        std::size_t replicates = 200;
    } margins;

    struct ConvergenceSection {
        std::vector<std::size_t> grid{1, 2, 5, 10, 20, 50, 100, 200};
        std::size_t replicates_boost = 30;
        std::size_t replicates_acar = 200;
        double label_noise = 0.2;
        double acar_noise_sigma = 0.3;
    } convergence;

    struct NoiseSection {
        std::vector<double> levels{0.0, 0.1, 0.2, 0.3, 0.4};
        std::size_t replicates = 50;
        double tost_delta = 0.05;
    } noise;

    struct IsoSection {
        std::size_t instances = 40;
        std::size_t rounds = 5;
        std::size_t mc_samples = 2000;
        double tolerance = 0.05;
    } iso_check;

    ColonySpec colony_spec(double noise_sigma) const;
    BoostSpec boost_spec(std::size_t rounds, double label_noise) const;
    WeakLearnabilitySpec weak_learnability_spec() const;
    TraceSpec trace_spec() const;
    MarginSpec margin_spec() const;
    ConvergenceSpec convergence_spec() const;
    NoiseSpec noise_spec() const;
    IsoCheckSpec iso_spec() const;
    ExecMode exec_mode() const { return threads == 1 ? ExecMode::serial : ExecMode::parallel; }
};

/// Flag-level overrides; anything unset keeps the file/default value.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::optional<std::string> out;
    std::optional<std::vector<std::string>> formats;
    std::optional<int> threads;
    std::optional<std::vector<double>> gammas;
    std::optional<std::vector<std::size_t>> waves;
    std::optional<std::vector<double>> noise_levels;
};

/// Defaults -> optional JSON file -> CLI flags, in that precedence order.
/// Unknown keys and type mismatches in the file are hard errors naming the
/// offending key.
RunConfig load_run_config(const std::optional<std::string>& config_path,
                          const CliOverrides& overrides);

/// Serialized full-schema echo of a resolved configuration.
std::string resolved_config_text(const RunConfig& config);

} // namespace antboost

#endif
