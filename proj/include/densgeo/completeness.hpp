#pragma once

#include <optional>
#include <string>
#include <vector>

#include "densgeo/coeffs.hpp"
#include "densgeo/profile.hpp"

namespace densgeo {

enum class CompletionHint {
    none,
    one_point_at_zero,
    one_point_at_infinity,
    both,
};

std::string completion_hint_name(CompletionHint h);

/// Completion analysis of one end of the arc-length interval.
struct EndReport {
    bool w_finite = false;
    double w = 0.0;  // finite end value when w_finite, else +-inf
    // Theorem conditions at r = 0 / r = infinity:
    bool coeffs_extend = false;   // declared smooth extension of C1 and C2
    bool c1_positive = false;     // C1(0) > 0 (zero end; vacuous at infinity)
    // Band ends where a -> 0 close up like a cone of parameter K:
    bool pole = false;
    double pole_order_k = 0.0;
    bool smooth_completion = false;
    std::string failing_condition;  // empty when smooth_completion holds
};

struct CompletenessReport {
    double w_minus = 0.0;  // effective domain ends (band-aware)
    double w_plus = 0.0;
    bool complete = false;
    bool incomplete_toward_zero = false;
    bool incomplete_toward_infinity = false;
    CompletionHint hint = CompletionHint::none;
    EndReport at_zero;
    EndReport at_infinity;
    /// Direct W quadrature verdict vs the C1/C2 integral criterion
    /// (W_+ = inf iff int_1^inf m^{-1/2} sqrt(C1) = inf or int_1^inf sqrt(C2) = inf).
    bool criterion_consistent = true;
    bool criterion_infinite_at_zero = false;
    bool criterion_infinite_at_infinity = false;
};

/// Classifies metric/geodesic completeness of the spec via W_+- and the
/// coefficient integral criterion; fills completion hints.
CompletenessReport classify(const CoefficientSpec& spec, double quad_tol = 1e-10);

struct CompletionCheck {
    EndReport at_zero;
    EndReport at_infinity;
    CompletionHint hint = CompletionHint::none;
};

/// One-point completion conditions: at r=0 requires W_- finite, C1/C2
/// smoothly extendable to [0, inf) and C1(0) > 0; at r=infinity requires
/// W_+ finite and extendability in 1/m. Band ends (sphere poles) pass when
/// a vanishes quadratically with unit cone parameter.
CompletionCheck completion_check(const CoefficientSpec& spec, double quad_tol = 1e-10);

struct ConeSpec {
    CoefficientSpec spec;
    double angle_defect;                 // 2 pi (1 - K), concentrated at the tip
    std::optional<int> orbifold_order;   // k when K = 1/k within 1e-9
};

/// Coefficients realizing the generalized cone a = K^2 sigma^2 (tip at
/// sigma = 0, i.e. s = W_-): g2 = 4, C1 = K^2, C2 = (1 - K^2)/m.
ConeSpec cone_spec(double K);

/// Radial scalar function given as a power sum sum_i c_i r^{p_i}.
struct RadialPowerSum {
    std::vector<std::pair<double, double>> terms;  // (c, p)
    double value(double r) const;
    double deriv1(double r) const;
    double deriv2(double r) const;
};

/// Sphere-completion construction from a freely chosen g2 > 0:
///   g1(r) = sin^2(int_1^r sqrt(g2)), C1(m) = g1(sqrt m)/(4m),
///   C2(m) = g2(sqrt m)/(4m) - g1(sqrt m)/(4 m^2);
/// the warp becomes a(s) = sin^2(s) on the band (0, pi).
CoefficientSpec sphere_completion_from_g2(const RadialPowerSum& g2,
                                          double quad_tol = 1e-10);

}  // namespace densgeo
