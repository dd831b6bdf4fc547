// Compares the serial reference path against the OpenMP path on the
// replicate-heavy experiments and checks that both produce identical
// numbers. Usage: antboost_bench [replicate_scale]

#include <chrono>
#include <cstdio>
#include <string>

#include "antboost/config.hpp"
#include "antboost/experiments.hpp"
#include "antboost/parallel.hpp"

using namespace antboost;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool tables_equal(const SummaryTable& a, const SummaryTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].mean != b.rows[i].mean || a.rows[i].sd != b.rows[i].sd ||
            a.rows[i].stderr_ != b.rows[i].stderr_ || a.rows[i].n != b.rows[i].n) {
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t scale = argc > 1 ? std::stoul(argv[1]) : 1;
    const std::uint64_t seed = 987654321;
    RunConfig config;

    std::printf("threads available: %d\n", worker_count());

    {
        auto spec = config.noise_spec();
        spec.replicates = 50 * scale;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = run_noise_robustness(spec, seed, ExecMode::serial);
        const double t_serial = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = run_noise_robustness(spec, seed, ExecMode::parallel);
        const double t_parallel = seconds_since(t0);
        std::printf("noise robustness   serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    tables_equal(serial.table, parallel.table) ? "identical" : "MISMATCH");
    }
    {
        auto spec = config.weak_learnability_spec();
        spec.replicates = 80 * scale;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = run_weak_learnability(spec, seed, ExecMode::serial);
        const double t_serial = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = run_weak_learnability(spec, seed, ExecMode::parallel);
        const double t_parallel = seconds_since(t0);
        std::printf("weak learnability  serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    tables_equal(serial.table, parallel.table) ? "identical" : "MISMATCH");
    }
    {
        auto spec = config.convergence_spec();
        spec.replicates_boost = 30 * scale;
        spec.replicates_acar = 200 * scale;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = run_convergence(spec, seed, ExecMode::serial);
        const double t_serial = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = run_convergence(spec, seed, ExecMode::parallel);
        const double t_parallel = seconds_since(t0);
        std::printf("convergence        serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    tables_equal(serial.table, parallel.table) ? "identical" : "MISMATCH");
    }
    return 0;
}
