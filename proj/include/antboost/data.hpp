#ifndef ANTBOOST_DATA_HPP
#define ANTBOOST_DATA_HPP

#include <cstddef>
#include <vector>

#include "antboost/rng.hpp"

namespace antboost {

/// Binary classification sample: row-major n x d feature matrix with +/-1
/// labels. `clean_labels` keeps the pre-noise labels so test scoring can
/// always be done against the ground truth.
struct Dataset {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> features;   // n * d, row major
    std::vector<int> labels;        // in {-1, +1}
    std::vector<int> clean_labels;  // in {-1, +1}

    double at(std::size_t i, std::size_t j) const { return features[i * d + j]; }
    const double* row(std::size_t i) const { return features.data() + i * d; }
};

/// Synthetic two-class task. Both classes are equally likely; the class
/// means differ by `separation` along each of the first ceil(d/2)
/// coordinates and coincide on the rest (pure noise directions). Exactly
/// round(label_noise * n) labels are flipped, at uniformly random distinct
/// indices, so the corruption count is deterministic given the stream.
Dataset make_classification(std::size_t n, std::size_t d, double separation,
                            double label_noise, RngStream& rng);

/// K candidate sites with fixed true qualities and neutral heuristics.
struct SiteWorld {
    std::vector<double> qualities;   // Q_j > 0
    std::vector<double> heuristics;  // eta_j > 0
    std::size_t best_site = 0;

    std::size_t num_sites() const { return qualities.size(); }
};

/// Best site has quality 10; the others are drawn uniformly from
/// [10*(1-2*gap), 10*(1-gap)], so the best site is strictly unique for any
/// gap > 0. Heuristics default to 1 everywhere.
SiteWorld make_site_world(std::size_t num_sites, double quality_gap, RngStream& rng);

/// Base quality of the best site in generated worlds.
inline constexpr double kSiteQualityMax = 10.0;

} // namespace antboost

#endif
