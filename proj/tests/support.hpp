#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "densgeo/coeffs.hpp"
#include "densgeo/grid.hpp"

namespace densgeo::testing {

using Rng = std::mt19937_64;

inline GridPtr random_grid(Rng& rng, int n) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> w(static_cast<size_t>(n));
    double total = 0.0;
    for (double& wi : w) {
        wi = u(rng);
        total += wi;
    }
    for (double& wi : w) wi /= total;
    double partial = 0.0;
    for (size_t i = 0; i + 1 < w.size(); ++i) partial += w[i];
    w.back() = 1.0 - partial;
    return Grid::from_weights(std::move(w));
}

inline ScalarField random_field(Rng& rng, const GridPtr& grid, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(static_cast<size_t>(grid->size()));
    for (double& x : v) x = u(rng);
    return ScalarField(grid, std::move(v));
}

inline DensityField random_positive_density(Rng& rng, const GridPtr& grid, double lo,
                                            double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(static_cast<size_t>(grid->size()));
    for (double& x : v) x = u(rng);
    return DensityField(grid, std::move(v));
}

// Closed-form arc-length maps of the four worked presets.
inline double w_reciprocal(double r) { return 2.0 * std::log(r); }
inline double w_fisher_rao(double r) { return 2.0 * (r - 1.0); }
inline double w_extended(double r) {
    const auto prim = [](double x) { return x * std::sqrt(1.0 + x * x) + std::asinh(x); };
    return prim(r) - prim(1.0);
}
inline double w_reciprocal_sq(double r) { return 2.0 - 2.0 / r; }

inline const std::vector<Preset>& example_presets() {
    static const std::vector<Preset> presets{Preset::reciprocal, Preset::fisher_rao,
                                             Preset::extended, Preset::reciprocal_sq};
    return presets;
}

}  // namespace densgeo::testing
