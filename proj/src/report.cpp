#include "antboost/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace antboost {

using nlohmann::json;

namespace {

std::string num6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string cell_text(const CellValue& v) {
    if (std::holds_alternative<double>(v)) return num6(std::get<double>(v));
    return std::get<std::string>(v);
}

json cell_json(const CellValue& v) {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    return std::get<std::string>(v);
}

} // namespace

Emitter::Emitter(std::string out_dir, std::vector<std::string> formats, std::uint64_t master_seed)
    : out_dir_(std::move(out_dir)), formats_(std::move(formats)), master_seed_(master_seed) {
    std::filesystem::create_directories(out_dir_);
}

bool Emitter::wants(const std::string& format) const {
    for (const auto& f : formats_) {
        if (f == format) return true;
    }
    return false;
}

std::string Emitter::path_for(const std::string& stem, const std::string& ext) const {
    return (std::filesystem::path(out_dir_) /
            (stem + "_" + std::to_string(master_seed_) + "." + ext))
        .string();
}

void Emitter::write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
    produced_.push_back(path);
}

void Emitter::summary(const SummaryTable& table) {
    if (wants("csv")) {
        std::string csv;
        for (const auto& col : table.cell_columns) csv += col + ",";
        csv += "mean,sd,stderr,n\n";
        for (const auto& row : table.rows) {
            for (const auto& cell : row.cell) csv += cell_text(cell) + ",";
            csv += num6(row.mean) + "," + num6(row.sd) + "," + num6(row.stderr_) + "," +
                   std::to_string(row.n) + "\n";
        }
        write_file(path_for(table.experiment, "csv"), csv);
    }
    if (wants("json")) {
        json root;
        root["experiment"] = table.experiment;
        root["master_seed"] = master_seed_;
        root["cell_columns"] = table.cell_columns;
        root["rows"] = json::array();
        for (const auto& row : table.rows) {
            json jrow;
            for (std::size_t c = 0; c < table.cell_columns.size(); ++c) {
                jrow[table.cell_columns[c]] = cell_json(row.cell[c]);
            }
            jrow["mean"] = row.mean;
            jrow["sd"] = row.sd;
            jrow["stderr"] = row.stderr_;
            jrow["n"] = row.n;
            root["rows"].push_back(std::move(jrow));
        }
        write_file(path_for(table.experiment, "json"), root.dump(2) + "\n");
    }
}

void Emitter::traces(const TraceSet& traces) {
    std::string csv = "step,series,value\n";
    for (const auto& row : traces.rows) {
        csv += num6(row.step) + "," + row.series + "," + num6(row.value) + "\n";
    }
    const std::string path = path_for(traces.name, "csv");
    write_file(path, csv);
    readme_sections_.push_back(std::filesystem::path(path).filename().string() + "\n  " +
                               traces.description + "\n");
}

void Emitter::tost(const std::string& experiment, const std::vector<double>& levels,
                   const std::vector<TostResult>& results) {
    if (wants("csv")) {
        std::string csv = "noise_level,delta,mean_diff,df,p_lower,p_upper,equivalent\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            csv += num6(levels[i]) + "," + num6(r.delta) + "," + num6(r.mean_diff) + "," +
                   num6(r.df) + "," + num6(r.p_lower) + "," + num6(r.p_upper) + "," +
                   (r.equivalent ? "true" : "false") + "\n";
        }
        write_file(path_for(experiment + "_tost", "csv"), csv);
    }
    if (wants("json")) {
        json root;
        root["experiment"] = experiment + "_tost";
        root["master_seed"] = master_seed_;
        root["rows"] = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            root["rows"].push_back({{"noise_level", levels[i]},
                                    {"delta", r.delta},
                                    {"mean_diff", r.mean_diff},
                                    {"df", r.df},
                                    {"p_lower", r.p_lower},
                                    {"p_upper", r.p_upper},
                                    {"equivalent", r.equivalent}});
        }
        write_file(path_for(experiment + "_tost", "json"), root.dump(2) + "\n");
    }
}

void Emitter::equivalence(const std::string& experiment, const EquivalenceReport& report) {
    if (wants("csv")) {
        std::string csv =
            "round,epsilon,alpha,z,alpha_unhalved,rho_matched,rho_flagged,mass_shift,"
            "deposit_rate,gap_l1,mc_stderr,pass\n";
        for (const auto& r : report.rounds) {
            csv += std::to_string(r.round) + "," + num6(r.epsilon) + "," + num6(r.alpha) + "," +
                   num6(r.z) + "," + num6(r.matched.alpha_unhalved) + "," +
                   num6(r.matched.rho_matched) + "," +
                   (r.matched.rho_out_of_domain ? "true" : "false") + "," + num6(r.mass_shift) +
                   "," + num6(r.deposit_rate) + "," + num6(r.gap_l1) + "," + num6(r.mc_stderr) +
                   "," + (r.pass ? "true" : "false") + "\n";
        }
        write_file(path_for(experiment, "csv"), csv);
    }
    if (wants("json")) {
        json root;
        root["experiment"] = experiment;
        root["master_seed"] = master_seed_;
        root["mc_samples"] = report.mc_samples;
        root["tolerance"] = report.tol;
        root["all_pass"] = report.all_pass;
        root["notes"] = report.notes;
        root["rounds"] = json::array();
        for (const auto& r : report.rounds) {
            root["rounds"].push_back({{"round", r.round},
                                      {"epsilon", r.epsilon},
                                      {"alpha", r.alpha},
                                      {"z", r.z},
                                      {"alpha_unhalved", r.matched.alpha_unhalved},
                                      {"rho_matched", r.matched.rho_matched},
                                      {"rho_flagged", r.matched.rho_out_of_domain},
                                      {"mass_shift", r.mass_shift},
                                      {"deposit_rate", r.deposit_rate},
                                      {"boost_simplex", r.boost_simplex},
                                      {"colony_simplex", r.colony_simplex},
                                      {"gap_l1", r.gap_l1},
                                      {"mc_stderr", r.mc_stderr},
                                      {"pass", r.pass}});
        }
        write_file(path_for(experiment, "json"), root.dump(2) + "\n");
    }
}

void Emitter::resolved_config(const RunConfig& config) {
    write_file((std::filesystem::path(out_dir_) / "resolved_config.json").string(),
               resolved_config_text(config));
}

void Emitter::finish() {
    if (readme_sections_.empty()) return;
    std::string text =
        "Column dictionary for the long-format trace files in this directory.\n"
        "All trace files share the header step,series,value.\n\n";
    for (const auto& s : readme_sections_) text += s + "\n";
    write_file((std::filesystem::path(out_dir_) / "README.txt").string(), text);
}

namespace {

void log_line(const std::string& msg) { std::cerr << "[antboost] " << msg << "\n"; }

void run_one(const std::string& command, const RunConfig& config, Emitter& emitter) {
    const ExecMode mode = config.exec_mode();
    if (command == "weak-learnability") {
        log_line("weak-learnability: " + std::to_string(config.weak_learnability.gammas.size()) +
                 " gammas x " + std::to_string(config.weak_learnability.waves.size()) +
                 " wave counts x " + std::to_string(config.weak_learnability.replicates) +
                 " replicates");
        const auto result = run_weak_learnability(
            config.weak_learnability_spec(), experiment_seed(config.master_seed, 0), mode);
        emitter.summary(result.table);
        emitter.traces(result.curves);
    } else if (command == "traces") {
        log_line("traces: single paired run");
        const auto result =
            run_trace_pair(config.trace_spec(), experiment_seed(config.master_seed, 1));
        emitter.traces(result.traces);
    } else if (command == "margins") {
        log_line("margins: " + std::to_string(config.margins.replicates) + " colony replicates");
        const auto result = run_margin_distributions(config.margin_spec(),
                                                     experiment_seed(config.master_seed, 2), mode);
        emitter.summary(result.summary);
        emitter.traces(result.histograms);
    } else if (command == "convergence") {
        log_line("convergence: " + std::to_string(config.convergence.replicates_boost) +
                 " boosting + " + std::to_string(config.convergence.replicates_acar) +
                 " colony replicates");
        const auto result = run_convergence(config.convergence_spec(),
                                            experiment_seed(config.master_seed, 3), mode);
        emitter.summary(result.table);
        emitter.traces(result.curves);
    } else if (command == "noise") {
        log_line("noise: " + std::to_string(config.noise.levels.size()) + " levels x " +
                 std::to_string(config.noise.replicates) + " replicates x 2 systems");
        const auto result =
            run_noise_robustness(config.noise_spec(), experiment_seed(config.master_seed, 4), mode);
        emitter.summary(result.table);
        emitter.tost("noise", result.tost_levels, result.tost);
        emitter.traces(result.curves);
    } else if (command == "iso-check") {
        log_line("iso-check: " + std::to_string(config.iso_check.rounds) + " rounds x " +
                 std::to_string(config.iso_check.mc_samples) + " Monte Carlo samples");
        const auto result =
            run_iso_check(config.iso_spec(), experiment_seed(config.master_seed, 5), mode);
        emitter.equivalence("iso_check", result.report);
    } else {
        throw ConfigError("unknown command: " + command);
    }
}

} // namespace

std::vector<std::string> run_command(const std::string& command, const RunConfig& config) {
    set_worker_count(config.threads);
    Emitter emitter(config.out_dir, config.formats, config.master_seed);
    emitter.resolved_config(config);
    if (command == "all") {
        for (const char* sub : {"weak-learnability", "traces", "margins", "convergence", "noise",
                                "iso-check"}) {
            run_one(sub, config, emitter);
        }
    } else {
        run_one(command, config, emitter);
    }
    emitter.finish();
    log_line("done, " + std::to_string(emitter.produced().size()) + " files written");
    return emitter.produced();
}

} // namespace antboost
