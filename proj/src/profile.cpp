#include "densgeo/profile.hpp"

#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

DirectArcProfile::DirectArcProfile(ScalarFn a_fn, ScalarFn a1_fn, ScalarFn a2_fn,
                                   double lo, double hi)
    : a_fn_(std::move(a_fn)), a1_fn_(std::move(a1_fn)), a2_fn_(std::move(a2_fn)),
      lo_(lo), hi_(hi) {
    if (!a_fn_) throw DomainError("direct profile needs a(s)");
    if (!(lo_ < hi_)) throw DomainError("profile interval is empty");
}

ArcProfile::AValues DirectArcProfile::eval(double s) const {
    if (!(s > lo_ && s < hi_)) {
        throw DomainError("s outside profile domain");
    }
    AValues v;
    v.a = a_fn_(s);
    const double h = std::fmax(1e-5, 1e-5 * std::abs(s));
    v.a1 = a1_fn_ ? a1_fn_(s) : (a_fn_(s + h) - a_fn_(s - h)) / (2.0 * h);
    if (a2_fn_) {
        v.a2 = a2_fn_(s);
    } else if (a1_fn_) {
        v.a2 = (a1_fn_(s + h) - a1_fn_(s - h)) / (2.0 * h);
    } else {
        v.a2 = (a_fn_(s + h) - 2.0 * v.a + a_fn_(s - h)) / (h * h);
    }
    if (!(v.a > 0.0)) {
        throw DegenerateMetricError("a(s) must be positive inside the profile domain");
    }
    return v;
}

CoefficientArcProfile::CoefficientArcProfile(RadialFunctions radials, double quad_tol)
    : rf_(std::move(radials)), quad_tol_(quad_tol) {
    if (!(quad_tol_ > 0.0)) throw DomainError("quad_tol must be positive");

    const auto sqrt_g2 = [this](double rho) { return std::sqrt(rf_.g2_unguarded(rho)); };
    const ImproperResult below = improper_to_zero(sqrt_g2, quad_tol_);
    const ImproperResult above = improper_to_infinity(sqrt_g2, quad_tol_);
    w_minus_ = below.finite ? -below.value : -std::numeric_limits<double>::infinity();
    w_plus_ = above.finite ? above.value : std::numeric_limits<double>::infinity();

    s_lo_ = w_minus_;
    s_hi_ = w_plus_;
    if (const auto& band = rf_.spec().arc_band()) {
        s_lo_ = std::fmax(s_lo_, band->lo);
        s_hi_ = std::fmin(s_hi_, band->hi);
    }
    if (!(s_lo_ < s_hi_)) throw DomainError("profile domain is empty");
}

double CoefficientArcProfile::W(double r) const {
    if (!(r >= RadialFunctions::kRMin && r <= RadialFunctions::kRMax)) {
        throw DomainError("radius outside guarded range [1e-8, 1e8]");
    }
    if (r == 1.0) return 0.0;  // lower limit of the defining integral
    const auto sqrt_g2 = [this](double rho) { return std::sqrt(rf_.g2(rho)); };
    return integrate_radial(sqrt_g2, r, quad_tol_);
}

double CoefficientArcProfile::W_inv(double s) const {
    if (!(s > w_minus_ && s < w_plus_)) {
        throw DomainError("s outside (W_minus, W_plus)");
    }
    if (s == 0.0) return 1.0;

    // Bracket by doubling/halving from r = 1, then Newton with W' = sqrt(g2)
    // and bisection fallback. W is strictly increasing.
    double lo = 1.0, hi = 1.0, f_lo = -s, f_hi = -s;  // f = W(r) - s
    if (s > 0.0) {
        while (f_hi < 0.0) {
            if (hi >= RadialFunctions::kRMax) throw DomainError("s not reachable below r = 1e8");
            hi = std::fmin(hi * 2.0, RadialFunctions::kRMax);
            f_hi = W(hi) - s;
        }
    } else {
        while (f_lo > 0.0) {
            if (lo <= RadialFunctions::kRMin) throw DomainError("s not reachable above r = 1e-8");
            lo = std::fmax(lo * 0.5, RadialFunctions::kRMin);
            f_lo = W(lo) - s;
        }
    }

    double r = 0.5 * (lo + hi);
    double f = W(r) - s;
    const double f_tol = std::fmax(1e-14, 1e-14 * std::abs(s));
    for (int it = 0; it < 100; ++it) {
        if (std::abs(f) <= f_tol) break;
        if (f > 0.0) hi = r; else lo = r;
        const double step = -f / std::sqrt(rf_.g2(r));
        double next = r + step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == r) break;
        r = next;
        f = W(r) - s;
    }
    return r;
}

ArcProfile::AValues CoefficientArcProfile::eval(double s) const {
    if (!contains(s)) throw DomainError("s outside profile domain");
    const double r = W_inv(s);
    const double g2 = rf_.g2(r);
    const double g1p = rf_.g1_prime(r);
    AValues v;
    v.a = rf_.g1(r);
    v.a1 = g1p / std::sqrt(g2);
    v.a2 = rf_.g1_second(r) / g2 - g1p * rf_.g2_prime(r) / (2.0 * g2 * g2);
    if (!(v.a > 0.0)) {
        throw DegenerateMetricError("a(s) must be positive inside the profile domain");
    }
    return v;
}

CoefficientArcProfile arc_profile(const RadialFunctions& rf, double quad_tol) {
    return CoefficientArcProfile(rf, quad_tol);
}

CoefficientArcProfile arc_profile(const CoefficientSpec& spec, double quad_tol) {
    return CoefficientArcProfile(RadialFunctions(spec), quad_tol);
}

}  // namespace densgeo
