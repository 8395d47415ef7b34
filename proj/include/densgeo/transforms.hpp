#pragma once

#include "densgeo/grid.hpp"
#include "densgeo/profile.hpp"

namespace densgeo {

/// Polar representation (r, phi) with r = ||f|| and phi on the unit sphere.
struct PolarPoint {
    double r;
    SpherePoint phi;
};

/// Arc-length representation (s, phi) with s = W(r).
struct ArcPoint {
    double s;
    SpherePoint phi;
};

/// f = sqrt(mu/mu0) pointwise; smooth branch, requires mu > 0.
/// Non-positive entries raise a domain error directing the caller to
/// the sign-extended map R_signed.
ScalarField R_map(const DensityField& mu);

/// Sign-extended square root: f = sgn(mu) sqrt(|mu|/mu0).
ScalarField R_signed(const DensityField& mu);

/// Inverse of the sign-extended map: mu = f |f| mu0.
DensityField R_inv_signed(const ScalarField& f);

/// Polar coordinates on the pre-Hilbert space: (||f||, f/||f||).
/// Fields with ||f|| < 1e-10 are rejected (0 is excluded everywhere).
PolarPoint polar(const ScalarField& f);
ScalarField polar_inv(const PolarPoint& p);

/// Arc-length change of coordinates: s = W(r), phi unchanged.
ArcPoint to_arc(const PolarPoint& p, const CoefficientArcProfile& profile);
PolarPoint from_arc(const ArcPoint& q, const CoefficientArcProfile& profile);

}  // namespace densgeo
