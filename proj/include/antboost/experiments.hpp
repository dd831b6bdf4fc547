#ifndef ANTBOOST_EXPERIMENTS_HPP
#define ANTBOOST_EXPERIMENTS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "antboost/acar.hpp"
#include "antboost/boosting.hpp"
#include "antboost/data.hpp"
#include "antboost/isomorphism.hpp"
#include "antboost/parallel.hpp"

namespace antboost {

// ---------------------------------------------------------------------------
// Result containers
// ---------------------------------------------------------------------------

using CellValue = std::variant<double, std::string>;

struct SummaryRow {
    std::vector<CellValue> cell;
    double mean = 0.0;
    double sd = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

struct SummaryTable {
    std::string experiment;
    std::vector<std::string> cell_columns;
    std::vector<SummaryRow> rows;
};

/// Long-format plot series point: one (step, series, value) triple.
struct TraceRow {
    double step = 0.0;
    std::string series;
    double value = 0.0;
};

/// One plot-data file: the rows plus the column dictionary entry that goes
/// into the sidecar README.
struct TraceSet {
    std::string name;        // file stem, e.g. "convergence_curves"
    std::string description; // sidecar text
    std::vector<TraceRow> rows;
};

struct TostResult {
    double delta = 0.0;
    double mean_diff = 0.0;
    double df = 0.0;
    double p_lower = 0.0;  // H0: mean(a) - mean(b) <= -delta
    double p_upper = 0.0;  // H0: mean(a) - mean(b) >= +delta
    bool equivalent = false;
};

/// Two one-sided Welch t-tests at equivalence margin delta; `equivalent`
/// requires both one-sided p-values below 0.05. Throws when either sample
/// has n < 2 or when both samples are degenerate (zero pooled variance).
TostResult tost_equivalence(std::span<const double> a, std::span<const double> b, double delta);

// ---------------------------------------------------------------------------
// Experiment specifications
// ---------------------------------------------------------------------------

/// Seed of replicate `rep` in grid cell `cell`: every cell is re-runnable
/// in isolation because the stream only depends on these indices.
inline RngStream replicate_stream(std::uint64_t master_seed, std::size_t cell, std::size_t rep) {
    return derive_stream(master_seed, static_cast<std::uint64_t>(cell) * 1000000ULL + rep);
}

/// Distinct sub-seed per experiment family so the `all` driver can hand
/// each family an independent seed domain derived from one master seed.
std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t kind_index);

struct DataSpec {
    std::size_t n_train = 200;
    std::size_t n_test = 200;
    std::size_t dims = 10;
    double separation = 0.8;  // frozen by the zero-noise calibration run
};

struct BoostSpec {
    DataSpec data;
    std::size_t rounds = 120;
    double label_noise = 0.0;
};

struct WeakColonySpec {
    double quality_gap = 0.2;
    double alpha_exp = 1.0;
    double beta_exp = 0.0;
    double evaporation = 0.05;
    double deposit_rate = 0.05;
    double tau0 = 1.0;
    std::size_t ants_per_wave = 20;
};

struct WeakLearnabilitySpec {
    std::vector<double> gammas{0.15, 0.25, 0.4};
    std::vector<std::size_t> waves{5, 10, 20, 40, 80};
    std::size_t replicates = 80;
    WeakColonySpec colony;
};

struct ColonySpec {
    std::size_t sites = 4;
    double quality_gap = 0.25;
    ColonyConfig config;  // frozen recruitment parameters
};

struct TraceSpec {
    BoostSpec boost;
    ColonySpec colony;
};

struct MarginSpec {
    BoostSpec boost;            // trained to boost.rounds
    std::size_t rounds_early = 20;
    ColonySpec colony;          // run to colony.config.waves
    std::size_t waves_early = 5;
    std::size_t replicates = 200;
};

struct ConvergenceSpec {
    std::vector<std::size_t> grid{1, 2, 5, 10, 20, 50, 100, 200};
    std::size_t replicates_boost = 30;
    std::size_t replicates_acar = 200;
    BoostSpec boost;     // label noise makes the task start near chance
    ColonySpec colony;   // observation noise likewise
};

struct NoiseSpec {
    std::vector<double> levels{0.0, 0.1, 0.2, 0.3, 0.4};
    std::size_t replicates = 50;
    double tost_delta = 0.05;
    BoostSpec boost;
    ColonySpec colony;
};

struct IsoCheckSpec {
    std::size_t instances = 40;
    std::size_t rounds = 5;
    std::size_t mc_samples = 2000;
    double tolerance = 0.05;
    double quality_best = 10.0;
    double quality_other = 6.0;
};

struct ContractionSpec {
    double gamma = 0.25;
    std::size_t replicates = 500;
    std::size_t waves = 20;
    WeakColonySpec colony;
};

// ---------------------------------------------------------------------------
// Experiment runners (all deterministic in (spec, master_seed), thread
// count independent: replicate outputs are gathered by index and reduced
// in fixed order)
// ---------------------------------------------------------------------------

/// Theorem-style lower bound for a gamma-weak colony after T waves.
inline double weak_learnability_bound(double gamma, double waves) {
    return 1.0 - std::exp(-gamma * gamma * waves / 2.0);
}

struct WeakLearnabilityResult {
    SummaryTable table;  // columns gamma, waves, bound
    TraceSet curves;
};

WeakLearnabilityResult run_weak_learnability(const WeakLearnabilitySpec& spec,
                                             std::uint64_t master_seed, ExecMode mode);

struct TracePairResult {
    TraceSet traces;  // D_min/D_median/D_max and tau_site_j on one step axis
};

TracePairResult run_trace_pair(const TraceSpec& spec, std::uint64_t master_seed);

struct MarginResult {
    SummaryTable summary;
    TraceSet histograms;
    double boost_min_margin_early = 0.0;
    double boost_min_margin_full = 0.0;
    double frac_nonpositive = 0.0;
    double mean_quorum_margin_early = 0.0;
    double mean_quorum_margin_full = 0.0;
};

MarginResult run_margin_distributions(const MarginSpec& spec, std::uint64_t master_seed,
                                      ExecMode mode);

struct ConvergenceResult {
    SummaryTable table;  // columns system, steps
    TraceSet curves;
};

ConvergenceResult run_convergence(const ConvergenceSpec& spec, std::uint64_t master_seed,
                                  ExecMode mode);

struct NoiseRobustnessResult {
    SummaryTable table;                  // columns system, noise_level
    std::vector<double> tost_levels;     // levels > 0
    std::vector<TostResult> tost;        // degradation-delta equivalence per level
    TraceSet curves;
};

NoiseRobustnessResult run_noise_robustness(const NoiseSpec& spec, std::uint64_t master_seed,
                                           ExecMode mode);

struct IsoCheckResult {
    EquivalenceReport report;
};

IsoCheckResult run_iso_check(const IsoCheckSpec& spec, std::uint64_t master_seed, ExecMode mode);

struct ContractionResult {
    ContractionReport report;
    SummaryTable table;  // per-wave mean epsilon rows
};

ContractionResult run_error_contraction(const ContractionSpec& spec, std::uint64_t master_seed,
                                        ExecMode mode);

/// Builds the colony configuration used by the weak-learnability and
/// contraction studies: a fresh 2-site world plus a config whose absolute
/// observation noise is calibrated so a lone ant is exactly
/// (1/2 + gamma)-accurate on that world's quality gap.
std::pair<SiteWorld, ColonyConfig> make_weak_colony(const WeakColonySpec& spec, double gamma,
                                                    std::size_t waves, RngStream& rng);

} // namespace antboost

#endif
