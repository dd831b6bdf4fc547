// Command-line driver: each subcommand reproduces one experiment family
// and writes CSV/JSON artifacts into the output directory. Paths of
// produced files go to stdout, everything else to stderr. Exit codes:
// 0 success, 1 configuration error, 2 runtime error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antboost/config.hpp"
#include "antboost/report.hpp"

namespace {

struct CommonFlags {
    std::optional<std::string> config_path;
    antboost::CliOverrides overrides;
    std::vector<double> gammas;
    std::vector<std::size_t> waves;
    std::vector<double> noise_levels;
    std::string formats;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    int threads = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file (defaults + overrides)");
    cmd->add_option("--seed", flags.seed, "master seed")->default_val(0);
    cmd->add_option("--replicates", flags.replicates, "replicates per grid cell")->default_val(0);
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--format", flags.formats, "comma-separated subset of csv,json");
    cmd->add_option("--threads", flags.threads,
                    "worker threads (1 = serial reference path, 0 = runtime default)")
        ->default_val(-1);
    cmd->add_option("--gammas", flags.gammas, "weak-learnability gamma grid")->delimiter(',');
    cmd->add_option("--waves", flags.waves, "wave/iteration grid")->delimiter(',');
    cmd->add_option("--noise-levels", flags.noise_levels, "noise level grid")->delimiter(',');
}

antboost::RunConfig resolve(const CLI::App* cmd, CommonFlags& flags) {
    auto& o = flags.overrides;
    if (cmd->count("--seed")) o.seed = flags.seed;
    if (cmd->count("--replicates")) o.replicates = flags.replicates;
    if (cmd->count("--out")) o.out = flags.out;
    if (cmd->count("--threads")) o.threads = flags.threads;
    if (cmd->count("--gammas")) o.gammas = flags.gammas;
    if (cmd->count("--waves")) o.waves = flags.waves;
    if (cmd->count("--noise-levels")) o.noise_levels = flags.noise_levels;
    if (cmd->count("--format")) {
        std::vector<std::string> formats;
        std::string current;
        for (char c : flags.formats + ",") {
            if (c == ',') {
                if (!current.empty()) formats.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        o.formats = formats;
    }
    return antboost::load_run_config(flags.config_path, o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boosting / ant-recruitment simulation experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"weak-learnability", "traces",      "margins",
                                               "convergence",       "noise",       "iso-check",
                                               "all"};
    std::vector<CommonFlags> flags(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i]);
        add_common_flags(sub, flags[i]);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            const auto config = resolve(subs[i], flags[i]);
            const auto paths = antboost::run_command(commands[i], config);
            for (const auto& p : paths) std::cout << p << "\n";
            return 0;
        } catch (const antboost::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 1;
}
