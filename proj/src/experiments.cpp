#include "antboost/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "antboost/stats.hpp"

namespace antboost {

namespace {

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SummaryRow make_row(std::vector<CellValue> cell, const stats::Summary& s) {
    SummaryRow row;
    row.cell = std::move(cell);
    row.mean = s.mean;
    row.sd = s.sd;
    row.stderr_ = s.stderr_;
    row.n = s.n;
    return row;
}

int sign_correct(const std::vector<double>& tau, std::size_t best) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < tau.size(); ++j) {
        if (tau[j] > tau[arg]) arg = j;
    }
    return arg == best ? 1 : 0;
}

} // namespace

std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t kind_index) {
    return derive_stream(master_seed, 1000000000ULL + kind_index).next_u64();
}

TostResult tost_equivalence(std::span<const double> a, std::span<const double> b, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("tost_equivalence: delta must be > 0");
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("tost_equivalence: both samples need n >= 2");
    const auto sa = stats::summarize(a);
    const auto sb = stats::summarize(b);
    const double var_a = sa.sd * sa.sd;
    const double var_b = sb.sd * sb.sd;
    const double se = std::sqrt(var_a / static_cast<double>(a.size()) +
                                var_b / static_cast<double>(b.size()));
    if (!(se > 0.0))
        throw std::domain_error("tost_equivalence: zero-variance samples, t statistic undefined");

    TostResult r;
    r.delta = delta;
    r.mean_diff = sa.mean - sb.mean;
    r.df = stats::welch_df(var_a, a.size(), var_b, b.size());
    r.p_lower = 1.0 - stats::student_t_cdf((r.mean_diff + delta) / se, r.df);
    r.p_upper = stats::student_t_cdf((r.mean_diff - delta) / se, r.df);
    r.equivalent = r.p_lower < 0.05 && r.p_upper < 0.05;
    return r;
}

std::pair<SiteWorld, ColonyConfig> make_weak_colony(const WeakColonySpec& spec, double gamma,
                                                    std::size_t waves, RngStream& rng) {
    SiteWorld world = make_site_world(2, spec.quality_gap, rng);
    const double delta_q = world.qualities[0] - world.qualities[1];
    ColonyConfig config;
    config.alpha_exp = spec.alpha_exp;
    config.beta_exp = spec.beta_exp;
    config.evaporation = spec.evaporation;
    config.deposit_rate = spec.deposit_rate;
    config.tau0 = spec.tau0;
    config.tau_min = 1e-6 * spec.tau0;
    config.waves = waves;
    config.ants_per_wave = spec.ants_per_wave;
    config.noise = NoiseModel{NoiseKind::absolute, calibrate_weak_colony(delta_q, gamma)};
    return {std::move(world), config};
}

// ---------------------------------------------------------------------------
// Weak learnability (bound-domination study)
// ---------------------------------------------------------------------------

WeakLearnabilityResult run_weak_learnability(const WeakLearnabilitySpec& spec,
                                             std::uint64_t master_seed, ExecMode mode) {
    const std::size_t n_gamma = spec.gammas.size();
    const std::size_t n_waves = spec.waves.size();
    const std::size_t cells = n_gamma * n_waves;
    const std::size_t reps = spec.replicates;
    if (reps < 1) throw std::invalid_argument("run_weak_learnability: replicates must be >= 1");
    for (double g : spec.gammas) {
        if (!(g > 0.0 && g < 0.5))
            throw std::invalid_argument("run_weak_learnability: gamma must lie in (0, 0.5)");
    }

    std::vector<double> outcome(cells * reps);
    for_each_index(cells * reps, mode, [&](std::size_t idx) {
        const std::size_t cell = idx / reps;
        const std::size_t rep = idx % reps;
        const double gamma = spec.gammas[cell / n_waves];
        const std::size_t waves = spec.waves[cell % n_waves];
        RngStream rng = replicate_stream(master_seed, cell, rep);
        auto [world, config] = make_weak_colony(spec.colony, gamma, waves, rng);
        const auto decision = run_acar(world, config, rng).first;
        outcome[idx] = decision.correct ? 1.0 : 0.0;
    });

    WeakLearnabilityResult result;
    result.table.experiment = "weak_learnability";
    result.table.cell_columns = {"gamma", "waves", "bound"};
    result.curves.name = "weak_learnability_curves";
    result.curves.description =
        "step = number of recruitment waves; series accuracy_gamma_<g> is the replicate mean "
        "probability of a correct final decision, bound_gamma_<g> the lower bound "
        "1 - exp(-gamma^2 T / 2).";

    for (std::size_t gi = 0; gi < n_gamma; ++gi) {
        for (std::size_t wi = 0; wi < n_waves; ++wi) {
            const std::size_t cell = gi * n_waves + wi;
            const auto s = stats::summarize(
                std::span<const double>(outcome.data() + cell * reps, reps));
            const double bound =
                weak_learnability_bound(spec.gammas[gi], static_cast<double>(spec.waves[wi]));
            result.table.rows.push_back(make_row(
                {spec.gammas[gi], static_cast<double>(spec.waves[wi]), bound}, s));
            const std::string suffix = format_num(spec.gammas[gi]);
            result.curves.rows.push_back(
                {static_cast<double>(spec.waves[wi]), "accuracy_gamma_" + suffix, s.mean});
            result.curves.rows.push_back(
                {static_cast<double>(spec.waves[wi]), "bound_gamma_" + suffix, bound});
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Paired weight / pheromone traces
// ---------------------------------------------------------------------------

TracePairResult run_trace_pair(const TraceSpec& spec, std::uint64_t master_seed) {
    TracePairResult result;
    result.traces.name = "traces_weights_pheromone";
    result.traces.description =
        "step = boosting iteration or recruitment wave (0 is the initial state); series "
        "D_min/D_median/D_max are instance-weight percentiles, tau_site_<j> the pheromone "
        "level of site j.";

    // Boosting side: percentile trace of the weight distribution.
    {
        RngStream rng = replicate_stream(master_seed, 0, 0);
        const auto& b = spec.boost;
        Dataset train = make_classification(b.data.n_train, b.data.dims, b.data.separation,
                                            b.label_noise, rng);
        BoostEnsemble ens = adaboost_train(train, b.rounds);
        auto emit = [&](std::size_t step, const std::vector<double>& dist) {
            std::vector<double> sorted = dist;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t n = sorted.size();
            result.traces.rows.push_back({static_cast<double>(step), "D_min", sorted.front()});
            result.traces.rows.push_back({static_cast<double>(step), "D_median", sorted[n / 2]});
            result.traces.rows.push_back({static_cast<double>(step), "D_max", sorted.back()});
        };
        for (std::size_t t = 0; t < ens.rounds(); ++t) emit(t, ens.trace[t].distribution);
        emit(ens.rounds(), ens.final_weights);
    }

    // Colony side: per-site pheromone trace.
    {
        RngStream rng = replicate_stream(master_seed, 1, 0);
        SiteWorld world = make_site_world(spec.colony.sites, spec.colony.quality_gap, rng);
        const auto trace = run_acar(world, spec.colony.config, rng).second;
        for (std::size_t t = 0; t < trace.tau_history.size(); ++t) {
            for (std::size_t j = 0; j < trace.tau_history[t].size(); ++j) {
                result.traces.rows.push_back({static_cast<double>(t),
                                              "tau_site_" + std::to_string(j),
                                              trace.tau_history[t][j]});
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Margin distributions
// ---------------------------------------------------------------------------

MarginResult run_margin_distributions(const MarginSpec& spec, std::uint64_t master_seed,
                                      ExecMode mode) {
    MarginResult result;
    result.histograms.name = "margin_histograms";
    result.histograms.description =
        "series boost_margin_hist: step = lower edge of a width-0.05 bin over [-1, 1], value = "
        "instance count at the full training length; series acar_quorum_margin_hist: step = "
        "lower edge of a width-0.025 bin over [0, 1], value = replicate count.";

    RngStream rng = replicate_stream(master_seed, 0, 0);
    const auto& b = spec.boost;
    Dataset train =
        make_classification(b.data.n_train, b.data.dims, b.data.separation, b.label_noise, rng);
    BoostEnsemble ens = adaboost_train(train, b.rounds);
    const MarginStats early = margins_prefix(ens, train, spec.rounds_early);
    const MarginStats full = margins(ens, train);
    result.boost_min_margin_early = early.min_margin;
    result.boost_min_margin_full = full.min_margin;
    std::size_t nonpos = 0;
    for (double m : full.margins) {
        if (m <= 0.0) ++nonpos;
    }
    result.frac_nonpositive = static_cast<double>(nonpos) / static_cast<double>(train.n);
    for (std::size_t k = 0; k < full.histogram.size(); ++k) {
        result.histograms.rows.push_back({-1.0 + static_cast<double>(k) * 0.05,
                                          "boost_margin_hist",
                                          static_cast<double>(full.histogram[k])});
    }

    // Colony side: quorum margins across replicates at the early and final
    // wave snapshots.
    const std::size_t reps = spec.replicates;
    std::vector<double> mu_early(reps), mu_full(reps);
    for_each_index(reps, mode, [&](std::size_t rep) {
        RngStream rs = replicate_stream(master_seed, 1, rep);
        SiteWorld world = make_site_world(spec.colony.sites, spec.colony.quality_gap, rs);
        const auto trace = run_acar(world, spec.colony.config, rs).second;
        const std::size_t early_wave = std::min(spec.waves_early, trace.tau_history.size() - 1);
        mu_early[rep] = quorum_margin(PheromoneState{trace.tau_history[early_wave]});
        mu_full[rep] = quorum_margin(PheromoneState{trace.tau_history.back()});
    });
    const auto se = stats::summarize(mu_early);
    const auto sf = stats::summarize(mu_full);
    result.mean_quorum_margin_early = se.mean;
    result.mean_quorum_margin_full = sf.mean;

    std::vector<int> mu_hist(40, 0);
    for (double m : mu_full) {
        auto bin = static_cast<long>(std::floor(m * 40.0));
        bin = std::clamp(bin, 0L, 39L);
        ++mu_hist[static_cast<std::size_t>(bin)];
    }
    for (std::size_t k = 0; k < mu_hist.size(); ++k) {
        result.histograms.rows.push_back({static_cast<double>(k) * 0.025,
                                          "acar_quorum_margin_hist",
                                          static_cast<double>(mu_hist[k])});
    }

    result.summary.experiment = "margins";
    result.summary.cell_columns = {"metric"};
    stats::Summary single;
    single.n = 1;
    single.mean = result.boost_min_margin_early;
    result.summary.rows.push_back(make_row({std::string("boost_min_margin_early")}, single));
    single.mean = result.boost_min_margin_full;
    result.summary.rows.push_back(make_row({std::string("boost_min_margin_full")}, single));
    single.mean = result.frac_nonpositive;
    result.summary.rows.push_back(make_row({std::string("boost_frac_margin_nonpositive")}, single));
    result.summary.rows.push_back(make_row({std::string("acar_mean_quorum_margin_early")}, se));
    result.summary.rows.push_back(make_row({std::string("acar_mean_quorum_margin_final")}, sf));
    return result;
}

// ---------------------------------------------------------------------------
// Convergence curves
// ---------------------------------------------------------------------------

ConvergenceResult run_convergence(const ConvergenceSpec& spec, std::uint64_t master_seed,
                                  ExecMode mode) {
    if (spec.grid.empty()) throw std::invalid_argument("run_convergence: empty grid");
    std::vector<std::size_t> grid = spec.grid;
    std::sort(grid.begin(), grid.end());
    const std::size_t max_steps = grid.back();
    const std::size_t n_grid = grid.size();

    // System 0: test accuracy of the stump ensemble along the grid, one
    // fresh train/test pair per replicate, evaluated incrementally.
    std::vector<double> boost_acc(spec.replicates_boost * n_grid);
    for_each_index(spec.replicates_boost, mode, [&](std::size_t rep) {
        RngStream rng = replicate_stream(master_seed, 0, rep);
        const auto& b = spec.boost;
        Dataset train = make_classification(b.data.n_train, b.data.dims, b.data.separation,
                                            b.label_noise, rng);
        Dataset test =
            make_classification(b.data.n_test, b.data.dims, b.data.separation, 0.0, rng);
        BoostEnsemble ens = adaboost_train(train, max_steps);
        std::vector<double> f(test.n, 0.0);
        std::size_t gi = 0;
        for (std::size_t t = 0; t < ens.rounds() && gi < n_grid; ++t) {
            for (std::size_t i = 0; i < test.n; ++i) {
                f[i] += ens.alphas[t] * ens.stumps[t].predict(test, i);
            }
            while (gi < n_grid && grid[gi] == t + 1) {
                std::size_t hits = 0;
                for (std::size_t i = 0; i < test.n; ++i) {
                    const int pred = f[i] >= 0.0 ? 1 : -1;
                    if (pred == test.clean_labels[i]) ++hits;
                }
                boost_acc[rep * n_grid + gi] =
                    static_cast<double>(hits) / static_cast<double>(test.n);
                ++gi;
            }
        }
        // Early stop: the ensemble no longer changes, carry the last value.
        for (; gi < n_grid; ++gi) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < test.n; ++i) {
                const int pred = f[i] >= 0.0 ? 1 : -1;
                if (pred == test.clean_labels[i]) ++hits;
            }
            boost_acc[rep * n_grid + gi] = static_cast<double>(hits) / static_cast<double>(test.n);
        }
    });

    // System 1: probability of a correct quorum decision along the grid.
    std::vector<double> acar_acc(spec.replicates_acar * n_grid);
    for_each_index(spec.replicates_acar, mode, [&](std::size_t rep) {
        RngStream rng = replicate_stream(master_seed, 1, rep);
        SiteWorld world = make_site_world(spec.colony.sites, spec.colony.quality_gap, rng);
        ColonyConfig config = spec.colony.config;
        config.waves = max_steps;
        const auto trace = run_acar(world, config, rng).second;
        for (std::size_t gi = 0; gi < n_grid; ++gi) {
            acar_acc[rep * n_grid + gi] =
                sign_correct(trace.tau_history[grid[gi]], world.best_site);
        }
    });

    ConvergenceResult result;
    result.table.experiment = "convergence";
    result.table.cell_columns = {"system", "steps"};
    result.curves.name = "convergence_curves";
    result.curves.description =
        "step = boosting iterations or recruitment waves; series <system>_mean is the "
        "replicate-mean accuracy (test accuracy for adaboost, probability of a correct "
        "decision for acar), <system>_stderr its standard error.";

    std::vector<double> column;
    for (std::size_t gi = 0; gi < n_grid; ++gi) {
        column.clear();
        for (std::size_t rep = 0; rep < spec.replicates_boost; ++rep) {
            column.push_back(boost_acc[rep * n_grid + gi]);
        }
        const auto s = stats::summarize(column);
        result.table.rows.push_back(
            make_row({std::string("adaboost"), static_cast<double>(grid[gi])}, s));
        result.curves.rows.push_back({static_cast<double>(grid[gi]), "adaboost_mean", s.mean});
        result.curves.rows.push_back({static_cast<double>(grid[gi]), "adaboost_stderr", s.stderr_});
    }
    for (std::size_t gi = 0; gi < n_grid; ++gi) {
        column.clear();
        for (std::size_t rep = 0; rep < spec.replicates_acar; ++rep) {
            column.push_back(acar_acc[rep * n_grid + gi]);
        }
        const auto s = stats::summarize(column);
        result.table.rows.push_back(
            make_row({std::string("acar"), static_cast<double>(grid[gi])}, s));
        result.curves.rows.push_back({static_cast<double>(grid[gi]), "acar_mean", s.mean});
        result.curves.rows.push_back({static_cast<double>(grid[gi]), "acar_stderr", s.stderr_});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Noise robustness (reference-table reproduction)
// ---------------------------------------------------------------------------

NoiseRobustnessResult run_noise_robustness(const NoiseSpec& spec, std::uint64_t master_seed,
                                           ExecMode mode) {
    const std::size_t n_levels = spec.levels.size();
    const std::size_t reps = spec.replicates;
    for (double l : spec.levels) {
        if (!(l >= 0.0 && l < 0.5))
            throw std::invalid_argument("run_noise_robustness: noise levels must lie in [0, 0.5)");
    }

    // Cells 0..L-1: boosting at each label-noise level.
    // Cells L..2L-1: colony at each proportional observation-noise level.
    std::vector<double> boost_acc(n_levels * reps);
    std::vector<double> acar_acc(n_levels * reps);
    for_each_index(2 * n_levels * reps, mode, [&](std::size_t idx) {
        const std::size_t cell = idx / reps;
        const std::size_t rep = idx % reps;
        RngStream rng = replicate_stream(master_seed, cell, rep);
        if (cell < n_levels) {
            const double level = spec.levels[cell];
            const auto& b = spec.boost;
            Dataset train = make_classification(b.data.n_train, b.data.dims, b.data.separation,
                                                level, rng);
            Dataset test =
                make_classification(b.data.n_test, b.data.dims, b.data.separation, 0.0, rng);
            BoostEnsemble ens = adaboost_train(train, b.rounds);
            boost_acc[cell * reps + rep] = accuracy_on_clean(ens, test);
        } else {
            const std::size_t li = cell - n_levels;
            SiteWorld world = make_site_world(spec.colony.sites, spec.colony.quality_gap, rng);
            ColonyConfig config = spec.colony.config;
            config.noise = NoiseModel{NoiseKind::proportional, spec.levels[li]};
            const auto decision = run_acar(world, config, rng).first;
            acar_acc[li * reps + rep] = decision.correct ? 1.0 : 0.0;
        }
    });

    NoiseRobustnessResult result;
    result.table.experiment = "noise";
    result.table.cell_columns = {"system", "noise_level"};
    result.curves.name = "noise_robustness_curves";
    result.curves.description =
        "step = noise level (label-noise fraction for adaboost, proportional observation "
        "noise sigma for acar); series <system>_mean / <system>_stderr as in the convergence "
        "curves.";

    for (std::size_t li = 0; li < n_levels; ++li) {
        const auto s =
            stats::summarize(std::span<const double>(boost_acc.data() + li * reps, reps));
        result.table.rows.push_back(make_row({std::string("adaboost"), spec.levels[li]}, s));
        result.curves.rows.push_back({spec.levels[li], "adaboost_mean", s.mean});
        result.curves.rows.push_back({spec.levels[li], "adaboost_stderr", s.stderr_});
    }
    for (std::size_t li = 0; li < n_levels; ++li) {
        const auto s =
            stats::summarize(std::span<const double>(acar_acc.data() + li * reps, reps));
        result.table.rows.push_back(make_row({std::string("acar"), spec.levels[li]}, s));
        result.curves.rows.push_back({spec.levels[li], "acar_mean", s.mean});
        result.curves.rows.push_back({spec.levels[li], "acar_stderr", s.stderr_});
    }

    // Equivalence of degradation deltas relative to the first level. The
    // baseline level's deltas are identically zero, so it is skipped.
    std::vector<double> da(reps), db(reps);
    for (std::size_t li = 1; li < n_levels; ++li) {
        for (std::size_t rep = 0; rep < reps; ++rep) {
            da[rep] = boost_acc[li * reps + rep] - boost_acc[rep];
            db[rep] = acar_acc[li * reps + rep] - acar_acc[rep];
        }
        result.tost_levels.push_back(spec.levels[li]);
        result.tost.push_back(tost_equivalence(da, db, spec.tost_delta));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Isomorphism update-equivalence experiment
// ---------------------------------------------------------------------------

IsoCheckResult run_iso_check(const IsoCheckSpec& spec, std::uint64_t master_seed, ExecMode mode) {
    auto [data, assignment] = make_equivalence_instance(spec.instances);
    SiteWorld world;
    world.qualities = {spec.quality_best, spec.quality_other};
    world.heuristics = {1.0, 1.0};
    world.best_site = 0;
    IsoCheckResult result;
    result.report = update_equivalence_check(data, assignment, world, spec.rounds,
                                             spec.mc_samples, spec.tolerance, master_seed, mode);
    return result;
}

// ---------------------------------------------------------------------------
// Error contraction study
// ---------------------------------------------------------------------------

ContractionResult run_error_contraction(const ContractionSpec& spec, std::uint64_t master_seed,
                                        ExecMode mode) {
    std::vector<WaveTrace> traces(spec.replicates);
    for_each_index(spec.replicates, mode, [&](std::size_t rep) {
        RngStream rng = replicate_stream(master_seed, 0, rep);
        auto [world, config] = make_weak_colony(spec.colony, spec.gamma, spec.waves, rng);
        traces[rep] = run_acar(world, config, rng).second;
    });

    ContractionResult result;
    result.report = error_contraction_trace(traces, spec.gamma);
    result.table.experiment = "contraction";
    result.table.cell_columns = {"wave"};
    for (std::size_t t = 0; t < result.report.mean_epsilon.size(); ++t) {
        stats::Summary s;
        s.mean = result.report.mean_epsilon[t];
        s.stderr_ = result.report.stderr_epsilon[t];
        s.sd = s.stderr_ * std::sqrt(static_cast<double>(spec.replicates));
        s.n = spec.replicates;
        result.table.rows.push_back(make_row({static_cast<double>(t + 1)}, s));
    }
    return result;
}

} // namespace antboost
