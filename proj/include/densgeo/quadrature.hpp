#pragma once

#include <functional>

namespace densgeo {

using ScalarFn = std::function<double(double)>;

/// Composite Gauss-Legendre quadrature of a smooth integrand on [a, b].
/// The panel count is doubled until two successive estimates agree to tol
/// (relative to max(1, |Q|)). Throws QuadratureError with the partial value
/// if the doubling budget is exhausted.
///
/// Panel boundaries scale smoothly with the endpoints, so the quadrature
/// error is a smooth function of b; finite differences through this
/// integral (curvature oracles) stay clean.
double integrate_smooth(const ScalarFn& f, double a, double b, double tol);

/// Result of an improper-integral estimate over a half-open interval.
struct ImproperResult {
    bool finite = false;
    double value = 0.0;   // meaningful only when finite
    int subdivisions = 0; // dyadic intervals consumed
};

/// Estimates I = \int_1^\infty f, subdividing [2^k, 2^{k+1}].
/// Declared infinite when the partial integrals fail the Cauchy criterion
/// at tol after max_subdiv subdivisions, or when the integrand overflows.
/// A geometric tail correction is added for convergent integrals.
/// With accept_geometric_decay (divergence classification only, value not
/// needed to tol) sustained ratio decay also counts as convergent.
ImproperResult improper_to_infinity(const ScalarFn& f, double tol,
                                    int max_subdiv = 60,
                                    bool accept_geometric_decay = false);

/// Estimates I = \int_0^1 f over [2^{-k-1}, 2^{-k}]; same rules.
ImproperResult improper_to_zero(const ScalarFn& f, double tol,
                                int max_subdiv = 60,
                                bool accept_geometric_decay = false);

/// I = \int_1^r f(rho) d rho for r > 0, computed in the substitution
/// rho = e^u so that panel resolution follows the decade scale of r.
double integrate_radial(const ScalarFn& f, double r, double tol);

}  // namespace densgeo
