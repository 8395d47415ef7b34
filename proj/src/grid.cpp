#include "densgeo/grid.hpp"

#include <algorithm>
#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

Grid::Grid(std::vector<double> weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
    if (weights_.size() < 2) {
        throw DomainError("grid needs at least 2 points");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw DomainError("grid weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("grid weights must sum to 1 (mu0 is a probability density)");
    }
    if (labels_.empty()) {
        labels_.reserve(weights_.size());
        for (size_t i = 0; i < weights_.size(); ++i) {
            labels_.push_back("p" + std::to_string(i));
        }
    } else if (labels_.size() != weights_.size()) {
        throw DimensionError("label count does not match grid size");
    }
}

GridPtr Grid::uniform(int n_points) {
    if (n_points < 2) throw DomainError("grid needs at least 2 points");
    // Exact unit sum: the last weight absorbs the rounding residue.
    std::vector<double> w(static_cast<size_t>(n_points), 1.0 / n_points);
    double partial = 0.0;
    for (int i = 0; i + 1 < n_points; ++i) partial += w[static_cast<size_t>(i)];
    w.back() = 1.0 - partial;
    return std::shared_ptr<const Grid>(new Grid(std::move(w), {}));
}

GridPtr Grid::from_weights(std::vector<double> weights, std::vector<std::string> labels) {
    return std::shared_ptr<const Grid>(new Grid(std::move(weights), std::move(labels)));
}

ScalarField::ScalarField(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw DomainError("scalar field needs a grid");
    if (static_cast<int>(values.size()) != grid->size()) {
        throw DimensionError("field length does not match grid size");
    }
}

ScalarField ScalarField::constant(const GridPtr& g, double value) {
    return ScalarField(g, std::vector<double>(static_cast<size_t>(g->size()), value));
}

DensityField::DensityField(GridPtr g, std::vector<double> r)
    : grid(std::move(g)), ratio(std::move(r)) {
    if (!grid) throw DomainError("density field needs a grid");
    if (static_cast<int>(ratio.size()) != grid->size()) {
        throw DimensionError("density length does not match grid size");
    }
}

DensityField DensityField::constant(const GridPtr& g, double value) {
    return DensityField(g, std::vector<double>(static_cast<size_t>(g->size()), value));
}

bool DensityField::strictly_positive() const {
    return std::all_of(ratio.begin(), ratio.end(), [](double a) { return a > 0.0; });
}

SpherePoint::SpherePoint(ScalarField field) : field_(std::move(field)) {
    const double n2 = l2_inner(field_, field_);
    if (std::abs(n2 - 1.0) > 1e-10) {
        throw DomainError("sphere point must have unit L2(mu0) norm");
    }
}

SpherePoint SpherePoint::normalize(const ScalarField& field) {
    const double n = l2_norm(field);
    if (n < 1e-10) throw DomainError("cannot normalize a (near-)zero field onto S");
    return SpherePoint((1.0 / n) * field);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    std::vector<double> v(a.values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] + b.values[i];
    return ScalarField(a.grid, std::move(v));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    std::vector<double> v(a.values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] - b.values[i];
    return ScalarField(a.grid, std::move(v));
}

ScalarField operator*(double c, const ScalarField& a) {
    std::vector<double> v(a.values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = c * a.values[i];
    return ScalarField(a.grid, std::move(v));
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    throw DimensionError("operands live on different grids");
}

double stable_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

double l2_inner(const ScalarField& h, const ScalarField& k) {
    require_same_grid(h.grid, k.grid);
    const auto& w = h.grid->weights();
    std::vector<double> terms(w.size());
    for (size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * h.values[i] * k.values[i];
    return stable_sum(std::move(terms));
}

double l2_norm(const ScalarField& f) { return std::sqrt(l2_inner(f, f)); }

double integrate_density(const DensityField& alpha) {
    const auto& w = alpha.grid->weights();
    std::vector<double> terms(w.size());
    for (size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * alpha.ratio[i];
    return stable_sum(std::move(terms));
}

double sphere_distance(const SpherePoint& phi0, const SpherePoint& phi1) {
    double c = l2_inner(phi0.field(), phi1.field());
    c = std::clamp(c, -1.0, 1.0);  // rounding can push |c| past 1 by ~1e-16
    return std::acos(c);
}

}  // namespace densgeo
