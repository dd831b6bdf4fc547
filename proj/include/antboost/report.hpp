#ifndef ANTBOOST_REPORT_HPP
#define ANTBOOST_REPORT_HPP

#include <string>
#include <vector>

#include "antboost/config.hpp"
#include "antboost/experiments.hpp"

namespace antboost {

/// Writes result files for one run directory. CSV files use 6 significant
/// digits, LF line endings and UTF-8; the JSON mirrors carry the same
/// values at full precision. Summary files are named
/// <experiment>_<masterseed>.{csv,json}; trace files <name>_<masterseed>.csv
/// with their column dictionary collected into a sidecar README.txt.
class Emitter {
public:
    Emitter(std::string out_dir, std::vector<std::string> formats, std::uint64_t master_seed);

    void summary(const SummaryTable& table);
    void traces(const TraceSet& traces);
    void tost(const std::string& experiment, const std::vector<double>& levels,
              const std::vector<TostResult>& results);
    void equivalence(const std::string& experiment, const EquivalenceReport& report);
    void resolved_config(const RunConfig& config);

    /// Writes the sidecar README.txt if any trace file was produced.
    void finish();

    const std::vector<std::string>& produced() const { return produced_; }

private:
    bool wants(const std::string& format) const;
    std::string path_for(const std::string& stem, const std::string& ext) const;
    void write_file(const std::string& path, const std::string& content);

    std::string out_dir_;
    std::vector<std::string> formats_;
    std::uint64_t master_seed_;
    std::vector<std::string> produced_;
    std::vector<std::string> readme_sections_;
};

/// Runs one CLI command ("weak-learnability", "traces", "margins",
/// "convergence", "noise", "iso-check" or "all") against a resolved
/// configuration and returns the artifact paths it wrote. Progress goes to
/// stderr; the caller prints the returned paths to stdout.
std::vector<std::string> run_command(const std::string& command, const RunConfig& config);

} // namespace antboost

#endif
