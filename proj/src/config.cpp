#include "antboost/config.hpp"

#include <fstream>

#include <json.hpp>

namespace antboost {

using nlohmann::json;

ColonySpec RunConfig::colony_spec(double noise_sigma) const {
    ColonySpec spec;
    spec.sites = acar.sites;
    spec.quality_gap = acar.quality_gap;
    spec.config.alpha_exp = acar.alpha;
    spec.config.beta_exp = acar.beta;
    spec.config.evaporation = acar.evaporation;
    spec.config.deposit_rate = acar.deposit_rate;
    spec.config.tau0 = acar.tau0;
    spec.config.tau_min = 1e-6 * acar.tau0;
    spec.config.waves = acar.waves;
    spec.config.ants_per_wave = acar.ants_per_wave;
    spec.config.noise = NoiseModel{NoiseKind::proportional, noise_sigma};
    return spec;
}

BoostSpec RunConfig::boost_spec(std::size_t rounds, double label_noise) const {
    BoostSpec spec;
    spec.data = data;
    spec.rounds = rounds;
    spec.label_noise = label_noise;
    return spec;
}

WeakLearnabilitySpec RunConfig::weak_learnability_spec() const {
    WeakLearnabilitySpec spec;
    spec.gammas = weak_learnability.gammas;
    spec.waves = weak_learnability.waves;
    spec.replicates = weak_learnability.replicates;
    spec.colony = weak_colony;
    return spec;
}

TraceSpec RunConfig::trace_spec() const {
    TraceSpec spec;
    spec.boost = boost_spec(traces.rounds, traces.label_noise);
    spec.colony = colony_spec(0.0);
    return spec;
}

MarginSpec RunConfig::margin_spec() const {
    MarginSpec spec;
    spec.boost = boost_spec(margins.rounds, margins.label_noise);
    spec.rounds_early = margins.rounds_early;
    spec.colony = colony_spec(margins.acar_noise_sigma);
    spec.waves_early = margins.waves_early;
    spec.replicates = margins.replicates;
    return spec;
}

ConvergenceSpec RunConfig::convergence_spec() const {
    ConvergenceSpec spec;
    spec.grid = convergence.grid;
    spec.replicates_boost = convergence.replicates_boost;
    spec.replicates_acar = convergence.replicates_acar;
    spec.boost = boost_spec(adaboost_rounds, convergence.label_noise);
    spec.colony = colony_spec(convergence.acar_noise_sigma);
    return spec;
}

NoiseSpec RunConfig::noise_spec() const {
    NoiseSpec spec;
    spec.levels = noise.levels;
    spec.replicates = noise.replicates;
    spec.tost_delta = noise.tost_delta;
    spec.boost = boost_spec(adaboost_rounds, 0.0);  // per-level noise set by the runner
    spec.colony = colony_spec(0.0);
    return spec;
}

IsoCheckSpec RunConfig::iso_spec() const {
    IsoCheckSpec spec;
    spec.instances = iso_check.instances;
    spec.rounds = iso_check.rounds;
    spec.mc_samples = iso_check.mc_samples;
    spec.tolerance = iso_check.tolerance;
    return spec;
}

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& obj, const std::string& where, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception&) {
        throw ConfigError("type mismatch for key '" + std::string(key) + "' in " + where);
    }
}

void apply_weak_colony(const json& obj, const std::string& where, WeakColonySpec& spec) {
    check_keys(obj, where,
               {"quality_gap", "alpha", "beta", "evaporation", "deposit_rate", "tau0",
                "ants_per_wave"});
    read(obj, where, "quality_gap", spec.quality_gap);
    read(obj, where, "alpha", spec.alpha_exp);
    read(obj, where, "beta", spec.beta_exp);
    read(obj, where, "evaporation", spec.evaporation);
    read(obj, where, "deposit_rate", spec.deposit_rate);
    read(obj, where, "tau0", spec.tau0);
    read(obj, where, "ants_per_wave", spec.ants_per_wave);
}

void apply_file(const json& root, RunConfig& config) {
    check_keys(root, "config root",
               {"master_seed", "out_dir", "formats", "threads", "data", "adaboost", "acar",
                "weak_colony", "experiments"});
    read(root, "config root", "master_seed", config.master_seed);
    read(root, "config root", "out_dir", config.out_dir);
    read(root, "config root", "formats", config.formats);
    read(root, "config root", "threads", config.threads);

    if (root.contains("data")) {
        const auto& obj = root.at("data");
        check_keys(obj, "data", {"n_train", "n_test", "dims", "separation"});
        read(obj, "data", "n_train", config.data.n_train);
        read(obj, "data", "n_test", config.data.n_test);
        read(obj, "data", "dims", config.data.dims);
        read(obj, "data", "separation", config.data.separation);
    }
    if (root.contains("adaboost")) {
        const auto& obj = root.at("adaboost");
        check_keys(obj, "adaboost", {"rounds"});
        read(obj, "adaboost", "rounds", config.adaboost_rounds);
    }
    if (root.contains("acar")) {
        const auto& obj = root.at("acar");
        check_keys(obj, "acar",
                   {"sites", "quality_gap", "alpha", "beta", "evaporation", "deposit_rate",
                    "tau0", "waves", "ants_per_wave"});
        read(obj, "acar", "sites", config.acar.sites);
        read(obj, "acar", "quality_gap", config.acar.quality_gap);
        read(obj, "acar", "alpha", config.acar.alpha);
        read(obj, "acar", "beta", config.acar.beta);
        read(obj, "acar", "evaporation", config.acar.evaporation);
        read(obj, "acar", "deposit_rate", config.acar.deposit_rate);
        read(obj, "acar", "tau0", config.acar.tau0);
        read(obj, "acar", "waves", config.acar.waves);
        read(obj, "acar", "ants_per_wave", config.acar.ants_per_wave);
    }
    if (root.contains("weak_colony")) {
        apply_weak_colony(root.at("weak_colony"), "weak_colony", config.weak_colony);
    }
    if (!root.contains("experiments")) return;

    const auto& ex = root.at("experiments");
    check_keys(ex, "experiments",
               {"weak_learnability", "traces", "margins", "convergence", "noise", "iso_check"});
    if (ex.contains("weak_learnability")) {
        const auto& obj = ex.at("weak_learnability");
        check_keys(obj, "experiments.weak_learnability", {"gammas", "waves", "replicates"});
        read(obj, "experiments.weak_learnability", "gammas", config.weak_learnability.gammas);
        read(obj, "experiments.weak_learnability", "waves", config.weak_learnability.waves);
        read(obj, "experiments.weak_learnability", "replicates",
             config.weak_learnability.replicates);
    }
    if (ex.contains("traces")) {
        const auto& obj = ex.at("traces");
        check_keys(obj, "experiments.traces", {"rounds", "label_noise"});
        read(obj, "experiments.traces", "rounds", config.traces.rounds);
        read(obj, "experiments.traces", "label_noise", config.traces.label_noise);
    }
    if (ex.contains("margins")) {
        const auto& obj = ex.at("margins");
        check_keys(obj, "experiments.margins",
                   {"rounds", "rounds_early", "label_noise", "waves_early", "acar_noise_sigma",
                    "replicates"});
        read(obj, "experiments.margins", "rounds", config.margins.rounds);
        read(obj, "experiments.margins", "rounds_early", config.margins.rounds_early);
        read(obj, "experiments.margins", "label_noise", config.margins.label_noise);
        read(obj, "experiments.margins", "waves_early", config.margins.waves_early);
        read(obj, "experiments.margins", "acar_noise_sigma", config.margins.acar_noise_sigma);
        read(obj, "experiments.margins", "replicates", config.margins.replicates);
    }
    if (ex.contains("convergence")) {
        const auto& obj = ex.at("convergence");
        check_keys(obj, "experiments.convergence",
                   {"grid", "replicates_boost", "replicates_acar", "label_noise",
                    "acar_noise_sigma"});
        read(obj, "experiments.convergence", "grid", config.convergence.grid);
        read(obj, "experiments.convergence", "replicates_boost",
             config.convergence.replicates_boost);
        read(obj, "experiments.convergence", "replicates_acar",
             config.convergence.replicates_acar);
        read(obj, "experiments.convergence", "label_noise", config.convergence.label_noise);
        read(obj, "experiments.convergence", "acar_noise_sigma",
             config.convergence.acar_noise_sigma);
    }
    if (ex.contains("noise")) {
        const auto& obj = ex.at("noise");
        check_keys(obj, "experiments.noise", {"levels", "replicates", "tost_delta"});
        read(obj, "experiments.noise", "levels", config.noise.levels);
        read(obj, "experiments.noise", "replicates", config.noise.replicates);
        read(obj, "experiments.noise", "tost_delta", config.noise.tost_delta);
    }
    if (ex.contains("iso_check")) {
        const auto& obj = ex.at("iso_check");
        check_keys(obj, "experiments.iso_check",
                   {"instances", "rounds", "mc_samples", "tolerance"});
        read(obj, "experiments.iso_check", "instances", config.iso_check.instances);
        read(obj, "experiments.iso_check", "rounds", config.iso_check.rounds);
        read(obj, "experiments.iso_check", "mc_samples", config.iso_check.mc_samples);
        read(obj, "experiments.iso_check", "tolerance", config.iso_check.tolerance);
    }
}

json to_json(const RunConfig& c) {
    json root;
    root["master_seed"] = c.master_seed;
    root["out_dir"] = c.out_dir;
    root["formats"] = c.formats;
    root["threads"] = c.threads;
    root["data"] = {{"n_train", c.data.n_train},
                    {"n_test", c.data.n_test},
                    {"dims", c.data.dims},
                    {"separation", c.data.separation}};
    root["adaboost"] = {{"rounds", c.adaboost_rounds}};
    root["acar"] = {{"sites", c.acar.sites},
                    {"quality_gap", c.acar.quality_gap},
                    {"alpha", c.acar.alpha},
                    {"beta", c.acar.beta},
                    {"evaporation", c.acar.evaporation},
                    {"deposit_rate", c.acar.deposit_rate},
                    {"tau0", c.acar.tau0},
                    {"waves", c.acar.waves},
                    {"ants_per_wave", c.acar.ants_per_wave}};
    root["weak_colony"] = {{"quality_gap", c.weak_colony.quality_gap},
                           {"alpha", c.weak_colony.alpha_exp},
                           {"beta", c.weak_colony.beta_exp},
                           {"evaporation", c.weak_colony.evaporation},
                           {"deposit_rate", c.weak_colony.deposit_rate},
                           {"tau0", c.weak_colony.tau0},
                           {"ants_per_wave", c.weak_colony.ants_per_wave}};
    root["experiments"] = {
        {"weak_learnability",
         {{"gammas", c.weak_learnability.gammas},
          {"waves", c.weak_learnability.waves},
          {"replicates", c.weak_learnability.replicates}}},
        {"traces", {{"rounds", c.traces.rounds}, {"label_noise", c.traces.label_noise}}},
        {"margins",
         {{"rounds", c.margins.rounds},
          {"rounds_early", c.margins.rounds_early},
          {"label_noise", c.margins.label_noise},
          {"waves_early", c.margins.waves_early},
          {"acar_noise_sigma", c.margins.acar_noise_sigma},
          {"replicates", c.margins.replicates}}},
        {"convergence",
         {{"grid", c.convergence.grid},
          {"replicates_boost", c.convergence.replicates_boost},
          {"replicates_acar", c.convergence.replicates_acar},
          {"label_noise", c.convergence.label_noise},
          {"acar_noise_sigma", c.convergence.acar_noise_sigma}}},
        {"noise",
         {{"levels", c.noise.levels},
          {"replicates", c.noise.replicates},
          {"tost_delta", c.noise.tost_delta}}},
        {"iso_check",
         {{"instances", c.iso_check.instances},
          {"rounds", c.iso_check.rounds},
          {"mc_samples", c.iso_check.mc_samples},
          {"tolerance", c.iso_check.tolerance}}}};
    return root;
}

} // namespace

RunConfig load_run_config(const std::optional<std::string>& config_path,
                          const CliOverrides& overrides) {
    RunConfig config;
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw ConfigError("cannot open config file: " + *config_path);
        json root;
        try {
            in >> root;
        } catch (const json::exception& e) {
            throw ConfigError("invalid JSON in " + *config_path + ": " + e.what());
        }
        if (!root.is_object()) throw ConfigError("config root must be a JSON object");
        apply_file(root, config);
    }

    if (overrides.seed) config.master_seed = *overrides.seed;
    if (overrides.out) config.out_dir = *overrides.out;
    if (overrides.formats) config.formats = *overrides.formats;
    if (overrides.threads) config.threads = *overrides.threads;
    if (overrides.gammas) config.weak_learnability.gammas = *overrides.gammas;
    if (overrides.waves) {
        config.weak_learnability.waves = *overrides.waves;
        config.convergence.grid = *overrides.waves;
    }
    if (overrides.noise_levels) config.noise.levels = *overrides.noise_levels;
    if (overrides.replicates) {
        config.weak_learnability.replicates = *overrides.replicates;
        config.margins.replicates = *overrides.replicates;
        config.convergence.replicates_boost = *overrides.replicates;
        config.convergence.replicates_acar = *overrides.replicates;
        config.noise.replicates = *overrides.replicates;
    }

    for (const auto& f : config.formats) {
        if (f != "csv" && f != "json")
            throw ConfigError("unknown output format '" + f + "' (expected csv or json)");
    }
    return config;
}

std::string resolved_config_text(const RunConfig& config) {
    return to_json(config).dump(2) + "\n";
}

} // namespace antboost
