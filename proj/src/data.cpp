#include "antboost/data.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace antboost {

Dataset make_classification(std::size_t n, std::size_t d, double separation,
                            double label_noise, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("make_classification: n must be >= 2");
    if (d < 1) throw std::invalid_argument("make_classification: d must be >= 1");
    if (!(label_noise >= 0.0 && label_noise <= 0.5))
        throw std::invalid_argument("make_classification: label_noise must lie in [0, 0.5]");

    Dataset data;
    data.n = n;
    data.d = d;
    data.features.resize(n * d);
    data.labels.resize(n);
    data.clean_labels.resize(n);

    const std::size_t informative = (d + 1) / 2;
    const double offset = separation / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int y = rng.next_double() < 0.5 ? 1 : -1;
        data.clean_labels[i] = y;
        data.labels[i] = y;
        for (std::size_t j = 0; j < d; ++j) {
            double x = rng.next_normal();
            if (j < informative) x += (y > 0 ? offset : -offset);
            data.features[i * d + j] = x;
        }
    }

    // Flip exactly round(noise * n) labels at distinct random positions.
    const std::size_t flips = static_cast<std::size_t>(std::llround(label_noise * static_cast<double>(n)));
    if (flips > 0) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t k = 0; k < flips; ++k) {
            const std::size_t pick = k + rng.next_below(n - k);
            std::swap(idx[k], idx[pick]);
            data.labels[idx[k]] = -data.labels[idx[k]];
        }
    }
    return data;
}

SiteWorld make_site_world(std::size_t num_sites, double quality_gap, RngStream& rng) {
    if (num_sites < 2) throw std::invalid_argument("make_site_world: need at least 2 sites");
    if (!(quality_gap > 0.0)) throw std::invalid_argument("make_site_world: quality_gap must be > 0");
    if (quality_gap >= 0.5)
        throw std::invalid_argument("make_site_world: quality_gap must be < 0.5");

    SiteWorld world;
    world.qualities.resize(num_sites);
    world.heuristics.assign(num_sites, 1.0);
    world.best_site = 0;
    world.qualities[0] = kSiteQualityMax;
    const double lo = kSiteQualityMax * (1.0 - 2.0 * quality_gap);
    const double hi = kSiteQualityMax * (1.0 - quality_gap);
    for (std::size_t j = 1; j < num_sites; ++j) {
        world.qualities[j] = lo + (hi - lo) * rng.next_double();
    }
    return world;
}

} // namespace antboost
