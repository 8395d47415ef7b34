#include "densgeo/transforms.hpp"

#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

ScalarField R_map(const DensityField& mu) {
    std::vector<double> f(mu.ratio.size());
    for (size_t i = 0; i < f.size(); ++i) {
        if (!(mu.ratio[i] > 0.0)) {
            throw DomainError("density not strictly positive; use R_signed for the "
                              "sign-extended branch");
        }
        f[i] = std::sqrt(mu.ratio[i]);
    }
    return ScalarField(mu.grid, std::move(f));
}

ScalarField R_signed(const DensityField& mu) {
    std::vector<double> f(mu.ratio.size());
    for (size_t i = 0; i < f.size(); ++i) {
        const double a = mu.ratio[i];
        f[i] = std::copysign(std::sqrt(std::abs(a)), a);
    }
    return ScalarField(mu.grid, std::move(f));
}

DensityField R_inv_signed(const ScalarField& f) {
    std::vector<double> a(f.values.size());
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] = f.values[i] * std::abs(f.values[i]);
    }
    return DensityField(f.grid, std::move(a));
}

PolarPoint polar(const ScalarField& f) {
    const double r = l2_norm(f);
    if (r < 1e-10) throw DomainError("polar coordinates exclude the zero field");
    return PolarPoint{r, SpherePoint((1.0 / r) * f)};
}

ScalarField polar_inv(const PolarPoint& p) {
    if (!(p.r > 0.0)) throw DomainError("polar radius must be positive");
    return p.r * p.phi.field();
}

ArcPoint to_arc(const PolarPoint& p, const CoefficientArcProfile& profile) {
    return ArcPoint{profile.W(p.r), p.phi};
}

PolarPoint from_arc(const ArcPoint& q, const CoefficientArcProfile& profile) {
    return PolarPoint{profile.W_inv(q.s), q.phi};
}

}  // namespace densgeo
