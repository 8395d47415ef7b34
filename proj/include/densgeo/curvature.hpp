#pragma once

#include <vector>

#include "densgeo/profile.hpp"

namespace densgeo {

/// The two sectional curvatures of ds^2 + a(s)<dphi,dphi>:
///   sphere-sphere plane: 1/a - a'^2/(4a^2)
///   radial-sphere plane: -a''/(2a) + a'^2/(4a^2)
struct CurvaturePair {
    double sec_sphere;
    double sec_mixed;
    double at_s;
};

CurvaturePair sectional(const ArcProfile& profile, double s);

/// Independent oracle: Gauss curvature of the reduced 2D metric
/// ds^2 + a dtheta^2 is K = -(sqrt a)''/sqrt a; returns |K_fd - sec_mixed|
/// with (sqrt a)'' by central differences of step h.
double sectional_fd_check(const ArcProfile& profile, double s, double h);

/// Generating curve of the hypersurface of revolution:
///   c1(s) = int_0^s sqrt(1 - a'^2/(4a)), c2(s) = sqrt(a(s));
/// valid (embeddable) where a'^2 < 4a. The curve is arc-length
/// parametrized on valid samples.
struct ProfileCurve {
    std::vector<double> s;
    std::vector<double> c1;
    std::vector<double> c2;
    std::vector<char> valid;
};

ProfileCurve revolution_profile(const ArcProfile& profile, double s_lo, double s_hi,
                                int n);

/// a'(s)^2 < 4 a(s), equivalent to sec_sphere > 0.
bool validity_condition(const ArcProfile& profile, double s);

}  // namespace densgeo
