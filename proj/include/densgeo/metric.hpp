#pragma once

#include "densgeo/coeffs.hpp"
#include "densgeo/grid.hpp"
#include "densgeo/profile.hpp"
#include "densgeo/transforms.hpp"

namespace densgeo {

/// Tangent vector at a polar point: radial part dr and spherical part
/// dphi with <phi, dphi> = 0.
struct TangentAtPolar {
    double dr;
    ScalarField dphi;
};

/// The invariant metric on densities,
///   G_mu(alpha, beta) = C1(m) int (alpha/mu)(beta/mu) mu + C2(m) int alpha . int beta,
/// with m = mu(M); all densities in ratio representation against mu0.
double G_density(const DensityField& base, const DensityField& alpha,
                 const DensityField& beta, const CoefficientSpec& spec);

/// Pullback through R:
///   G~_f(h,k) = 4 C1(||f||^2) <h,k> + 4 C2(||f||^2) <f,h><f,k>.
/// Defined for every f, including sign-changing fields.
double G_tilde(const ScalarField& f, const ScalarField& h, const ScalarField& k,
               const CoefficientSpec& spec);

/// Polar form: g1(r) <dphi_v, dphi_w> + g2(r) dr_v dr_w.
/// Tangency drift below 1e-8 is re-projected; larger violations are a
/// contract error.
double G_bar_polar(const PolarPoint& p, const TangentAtPolar& v,
                   const TangentAtPolar& w, const RadialFunctions& rf);

/// Arc-length form: a(s) <dphi1, dphi2> + ds1 ds2.
double G_bar_arc(const ArcPoint& q, double ds1, const ScalarField& dphi1,
                 double ds2, const ScalarField& dphi2, const ArcProfile& profile);

/// Orthogonal projection of dphi onto the tangent space of S at phi,
/// applying the tolerance rules above.
ScalarField project_sphere_tangent(const SpherePoint& phi, const ScalarField& dphi);

}  // namespace densgeo
