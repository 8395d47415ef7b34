#include "densgeo/metric.hpp"

#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

double G_density(const DensityField& base, const DensityField& alpha,
                 const DensityField& beta, const CoefficientSpec& spec) {
    require_same_grid(base.grid, alpha.grid);
    require_same_grid(base.grid, beta.grid);
    if (!base.strictly_positive()) {
        throw DomainError("base density must be strictly positive");
    }
    const auto& w = base.grid->weights();
    std::vector<double> terms(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        // (alpha/mu)(beta/mu) mu in ratio representation
        terms[i] = w[i] * (alpha.ratio[i] / base.ratio[i]) * (beta.ratio[i] / base.ratio[i]) *
                   base.ratio[i];
    }
    const double m = integrate_density(base);
    const double fisher = stable_sum(std::move(terms));
    return spec.c1(m) * fisher + spec.c2(m) * integrate_density(alpha) * integrate_density(beta);
}

double G_tilde(const ScalarField& f, const ScalarField& h, const ScalarField& k,
               const CoefficientSpec& spec) {
    require_same_grid(f.grid, h.grid);
    require_same_grid(f.grid, k.grid);
    const double m = l2_inner(f, f);
    return 4.0 * spec.c1(m) * l2_inner(h, k) +
           4.0 * spec.c2(m) * l2_inner(f, h) * l2_inner(f, k);
}

ScalarField project_sphere_tangent(const SpherePoint& phi, const ScalarField& dphi) {
    require_same_grid(phi.grid(), dphi.grid);
    const double drift = l2_inner(phi.field(), dphi);
    if (std::abs(drift) >= 1e-8) {
        throw ContractError("tangency violation above 1e-8: <phi, dphi> = " +
                            std::to_string(drift));
    }
    if (drift == 0.0) return dphi;
    return dphi - drift * phi.field();
}

double G_bar_polar(const PolarPoint& p, const TangentAtPolar& v,
                   const TangentAtPolar& w, const RadialFunctions& rf) {
    const ScalarField dv = project_sphere_tangent(p.phi, v.dphi);
    const ScalarField dw = project_sphere_tangent(p.phi, w.dphi);
    return rf.g1(p.r) * l2_inner(dv, dw) + rf.g2(p.r) * v.dr * w.dr;
}

double G_bar_arc(const ArcPoint& q, double ds1, const ScalarField& dphi1,
                 double ds2, const ScalarField& dphi2, const ArcProfile& profile) {
    const ScalarField d1 = project_sphere_tangent(q.phi, dphi1);
    const ScalarField d2 = project_sphere_tangent(q.phi, dphi2);
    return profile.a(q.s) * l2_inner(d1, d2) + ds1 * ds2;
}

}  // namespace densgeo
