#pragma once

#include <memory>
#include <string>
#include <vector>

namespace densgeo {

/// Discretization of the compact manifold M: a weighted point set whose
/// quadrature weights represent the reference probability density mu0.
/// Invariants: n >= 2, all weights > 0, sum of weights = 1 within 1e-12.
class Grid {
  public:
    static std::shared_ptr<const Grid> uniform(int n_points);
    static std::shared_ptr<const Grid> from_weights(std::vector<double> weights,
                                                    std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double weight(int i) const { return weights_[static_cast<size_t>(i)]; }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }

    bool operator==(const Grid& other) const { return weights_ == other.weights_; }

  private:
    Grid(std::vector<double> weights, std::vector<std::string> labels);
    std::vector<double> weights_;
    std::vector<std::string> labels_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Real-valued function sampled on the grid (f, h, k in formulas).
struct ScalarField {
    GridPtr grid;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(GridPtr g, std::vector<double> v);
    static ScalarField constant(const GridPtr& g, double value);

    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(values.size()); }
};

/// Density expressed pointwise as a ratio against mu0: alpha = a . mu0.
/// An element of Dens_+ additionally has all ratios > 0.
struct DensityField {
    GridPtr grid;
    std::vector<double> ratio;

    DensityField() = default;
    DensityField(GridPtr g, std::vector<double> r);
    static DensityField constant(const GridPtr& g, double value);

    bool strictly_positive() const;
};

/// Point of the L2(mu0) unit sphere S; construction validates the norm.
class SpherePoint {
  public:
    explicit SpherePoint(ScalarField field);
    /// Rescales a nonzero field onto S.
    static SpherePoint normalize(const ScalarField& field);

    const ScalarField& field() const { return field_; }
    const GridPtr& grid() const { return field_.grid; }

  private:
    ScalarField field_;
};

// Field arithmetic used throughout the transform/metric layers.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);

/// Requires both operands to share a grid; throws DimensionError otherwise.
void require_same_grid(const GridPtr& a, const GridPtr& b);

/// Sums terms in sorted order: the result depends only on the multiset of
/// terms, so every reduction is exactly invariant under simultaneous
/// permutation of grid weights and field values.
double stable_sum(std::vector<double> terms);

/// <h, k> = sum_i w_i h_i k_i, the L2(mu0) inner product.
double l2_inner(const ScalarField& h, const ScalarField& k);
double l2_norm(const ScalarField& f);

/// int_M alpha = sum_i w_i a_i (total mass of the density).
double integrate_density(const DensityField& alpha);

/// Great-circle distance on S: arccos of the clamped inner product.
double sphere_distance(const SpherePoint& phi0, const SpherePoint& phi1);

}  // namespace densgeo
