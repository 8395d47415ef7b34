#pragma once

#include <functional>
#include <limits>

#include "densgeo/coeffs.hpp"
#include "densgeo/quadrature.hpp"

namespace densgeo {

/// Warp profile of the metric in arc-length form ds^2 + a(s)<dphi,dphi>.
/// a > 0 on the open interval (s_min, s_max).
class ArcProfile {
  public:
    struct AValues {
        double a;
        double a1;
        double a2;
    };

    virtual ~ArcProfile() = default;
    virtual AValues eval(double s) const = 0;
    virtual double s_min() const = 0;
    virtual double s_max() const = 0;

    double a(double s) const { return eval(s).a; }
    double a_prime(double s) const { return eval(s).a1; }
    double a_second(double s) const { return eval(s).a2; }
    bool contains(double s) const { return s > s_min() && s < s_max(); }
};

/// Profile given directly as a(s) (pseudosphere checks, cone matching).
/// Missing derivative callbacks fall back to central differences with
/// step h = max(1e-5, 1e-5 |s|).
class DirectArcProfile final : public ArcProfile {
  public:
    DirectArcProfile(ScalarFn a_fn, ScalarFn a1_fn = nullptr, ScalarFn a2_fn = nullptr,
                     double lo = -std::numeric_limits<double>::infinity(),
                     double hi = std::numeric_limits<double>::infinity());

    AValues eval(double s) const override;
    double s_min() const override { return lo_; }
    double s_max() const override { return hi_; }

  private:
    ScalarFn a_fn_, a1_fn_, a2_fn_;
    double lo_, hi_;
};

/// Profile derived from a coefficient spec through the arc-length change
/// of coordinates s = W(r) = int_1^r sqrt(g2), W(1) = 0. The warp is
/// a(s) = g1(W^-1(s)); derivatives come from the analytic chain rule
/// a' = g1'/sqrt(g2), a'' = g1''/g2 - g1' g2' / (2 g2^2).
class CoefficientArcProfile final : public ArcProfile {
  public:
    CoefficientArcProfile(RadialFunctions radials, double quad_tol);

    double W(double r) const;
    double W_inv(double s) const;

    /// Improper limits of W at r -> 0+ and r -> infinity (+-inf when the
    /// improper integral is declared divergent).
    double w_minus() const { return w_minus_; }
    double w_plus() const { return w_plus_; }

    /// Effective domain: (W_-, W_+) intersected with the spec's band.
    double s_min() const override { return s_lo_; }
    double s_max() const override { return s_hi_; }

    AValues eval(double s) const override;

    const RadialFunctions& radials() const { return rf_; }
    double quad_tol() const { return quad_tol_; }

  private:
    RadialFunctions rf_;
    double quad_tol_;
    double w_minus_, w_plus_;
    double s_lo_, s_hi_;
};

CoefficientArcProfile arc_profile(const RadialFunctions& rf, double quad_tol);
CoefficientArcProfile arc_profile(const CoefficientSpec& spec, double quad_tol);

}  // namespace densgeo
