#ifndef ANTBOOST_ISOMORPHISM_HPP
#define ANTBOOST_ISOMORPHISM_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "antboost/acar.hpp"
#include "antboost/boosting.hpp"
#include "antboost/data.hpp"
#include "antboost/parallel.hpp"

namespace antboost {

/// Total map from instance index to site index in {0..K-1}.
struct SiteAssignment {
    std::vector<std::size_t> site_of;
};

/// Collapses an instance weight vector onto sites:
/// mapped_j = sum over {i : site_of(i) = j} of D(i).
/// Linear in the weights and mass-preserving by construction.
std::vector<double> psi_map_weights(const WeightVector& weights, const SiteAssignment& assignment,
                                    std::size_t num_sites);

/// Parameter correspondence for one boosting round: the unhalved vote
/// ln((1-eps)/eps) and the literal rho = 1 - 1/Z. For any Z < 1 the latter
/// is negative, outside the evaporation domain (0, 1]; the value is
/// returned as-is with `rho_out_of_domain` set.
struct MatchedParams {
    double alpha_unhalved = 0.0;
    double rho_matched = 0.0;
    bool rho_out_of_domain = false;
};

MatchedParams matched_parameters(double epsilon_t, double z_t);

struct RoundEquivalence {
    std::size_t round = 0;
    double epsilon = 0.0;
    double alpha = 0.0;        // halved vote actually used by the training loop
    double z = 0.0;
    MatchedParams matched;
    double mass_shift = 0.0;   // sum_i |D_{t+1}(i) - D_t(i)|
    double deposit_rate = 0.0; // deposit scale chosen to match the shift
    std::vector<double> boost_simplex;  // mapped D_{t+1}, renormalized
    std::vector<double> colony_simplex; // MC mean one-wave update, renormalized
    double gap_l1 = 0.0;
    double mc_stderr = 0.0;
    bool pass = false;
};

struct EquivalenceReport {
    std::vector<RoundEquivalence> rounds;
    std::size_t mc_samples = 0;
    double tol = 0.0;
    bool all_pass = false;
    std::vector<std::string> notes;
};

/// Per-round comparison of the two update rules through the site mapping.
/// Round t maps the current weight vector to a pheromone state, runs one
/// boosting round on one side and `mc_samples` independent single-wave
/// colony updates on the other (deposit scale matched so the expected
/// deposit mass equals the boosting round's total weight movement), and
/// records the L1 gap between the two renormalized updates. A round passes
/// when gap < tol + 3 * (Monte Carlo standard error).
EquivalenceReport update_equivalence_check(const Dataset& data, const SiteAssignment& assignment,
                                           const SiteWorld& world, std::size_t rounds,
                                           std::size_t mc_samples, double tol,
                                           std::uint64_t seed,
                                           ExecMode mode = ExecMode::serial);

/// Benchmark instance for the equivalence check: n one-dimensional
/// instances at x = 0..n-1 with alternating labels, even positions labeled
/// +1 and assigned to site 0 (the best site). Every stump on this layout
/// has weighted error just below 1/2, so both updates move gently and the
/// mean-field comparison is informative for many rounds.
std::pair<Dataset, SiteAssignment> make_equivalence_instance(std::size_t n);

struct ContractionReport {
    double gamma = 0.0;
    std::size_t replicates = 0;
    std::vector<double> mean_epsilon;   // per wave, replicate-averaged
    std::vector<double> stderr_epsilon;
    std::vector<double> ratio;          // mean_eps[t+1] / mean_eps[t]
    std::vector<double> envelope;       // (1-gamma)^(t-1) * mean_eps[1]
    std::vector<bool> within_envelope;  // mean <= envelope + 2 stderr
};

/// Aggregates per-wave suboptimal-visit fractions across replicate traces
/// and compares them against the geometric contraction envelope.
ContractionReport error_contraction_trace(std::span<const WaveTrace> traces, double gamma_weak);

} // namespace antboost

#endif
