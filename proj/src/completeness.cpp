#include "densgeo/completeness.hpp"

#include <cmath>
#include <limits>

#include "densgeo/errors.hpp"
#include "densgeo/quadrature.hpp"

namespace densgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class End { zero, infinity };

bool improper_divergent(const ScalarFn& f, End end, double tol) {
    // Classification only: sustained geometric decay counts as convergent.
    const ImproperResult res = end == End::zero
                                   ? improper_to_zero(f, tol, 60, true)
                                   : improper_to_infinity(f, tol, 60, true);
    return !res.finite;
}

// Divergence of int m^{-1/2} sqrt(C1) dm toward the given end.
bool c1_integral_divergent(const CoefficientFunction& c1, End end, double tol) {
    if (c1.is_zero()) return false;
    double p_min = 0.0, p_max = 0.0;
    if (c1.power_range(p_min, p_max)) {
        // Integrand ~ m^{p/2 - 1/2}: divergent at infinity iff p >= -1,
        // at zero iff p <= -1.
        return end == End::infinity ? p_max >= -1.0 - 1e-12 : p_min <= -1.0 + 1e-12;
    }
    const auto f = [&c1](double m) {
        return std::sqrt(std::fmax(c1.value(m), 0.0) / m);
    };
    return improper_divergent(f, end, tol);
}

// Divergence of int sqrt(C2) dm toward the given end (C2 >= 0 assumed by
// the caller; clamped against rounding).
bool c2_integral_divergent(const CoefficientFunction& c2, End end, double tol) {
    if (c2.is_zero()) return false;
    double p_min = 0.0, p_max = 0.0;
    if (c2.power_range(p_min, p_max)) {
        return end == End::infinity ? p_max >= -2.0 - 1e-12 : p_min <= -2.0 + 1e-12;
    }
    const auto f = [&c2](double m) { return std::sqrt(std::fmax(c2.value(m), 0.0)); };
    return improper_divergent(f, end, tol);
}

bool c2_nonnegative_toward(const CoefficientFunction& c2, End end) {
    if (c2.is_zero()) return true;
    double p_min = 0.0, p_max = 0.0;
    if (c2.power_range(p_min, p_max)) return true;  // positive power sum
    for (int k = 0; k <= 40; ++k) {
        const double m = end == End::zero ? std::ldexp(1.0, -k) : std::ldexp(1.0, k);
        if (c2.value(m) < 0.0) return false;
    }
    return true;
}

// The paper's criterion splits sqrt(C2 + C1/m) term by term, which needs
// C2 >= 0 toward the end; otherwise fall back to the unsplit integrand
// C2 + C1/m = h(m)/m, evaluated through the cancellation-free h.
bool criterion_divergent(const CoefficientSpec& spec, End end, double tol) {
    const auto& c1 = spec.c1_fn();
    const auto& c2 = spec.c2_fn();
    if (c2_nonnegative_toward(c2, end)) {
        return c1_integral_divergent(c1, end, tol) || c2_integral_divergent(c2, end, tol);
    }
    const auto f = [&](double m) {
        const double combined = spec.combined_radial() != nullptr
                                    ? spec.combined_radial()->value(m)
                                    : c2.value(m) * m + c1.value(m);
        return std::sqrt(std::fmax(combined / m, 0.0));
    };
    return improper_divergent(f, end, tol);
}

// Cone parameter of a band end where a -> 0: K = lim sqrt(a)/dist,
// Richardson-extrapolated from eps and eps/2.
double pole_order(const ArcProfile& prof, double s_end, bool lower) {
    const double span = prof.s_max() - prof.s_min();
    const double eps = std::fmin(1e-3, 0.05 * span);
    const auto k_at = [&](double e) {
        const double s = lower ? s_end + e : s_end - e;
        return std::sqrt(prof.a(s)) / e;
    };
    return (4.0 * k_at(0.5 * eps) - k_at(eps)) / 3.0;
}

EndReport analyze_end(const CoefficientSpec& spec, const CoefficientArcProfile& prof,
                      bool lower) {
    EndReport rep;
    const double w_raw = lower ? prof.w_minus() : prof.w_plus();
    const double s_eff = lower ? prof.s_min() : prof.s_max();
    const bool band_bound = spec.arc_band().has_value() && std::isfinite(s_eff) &&
                            (!std::isfinite(w_raw) || (lower ? s_eff > w_raw : s_eff < w_raw));

    rep.w_finite = std::isfinite(s_eff);
    rep.w = s_eff;
    if (!rep.w_finite) {
        rep.failing_condition = "end is already complete (W diverges)";
        return rep;
    }

    if (band_bound) {
        // Sphere-pole mechanism: a vanishes at a finite interior radius.
        rep.pole = true;
        rep.pole_order_k = pole_order(prof, s_eff, lower);
        rep.smooth_completion = std::abs(rep.pole_order_k - 1.0) <= 1e-6;
        if (!rep.smooth_completion) {
            rep.failing_condition = "band end closes like a cone with K != 1";
        }
        return rep;
    }

    const auto& c1 = spec.c1_fn();
    const auto& c2 = spec.c2_fn();
    if (lower) {
        rep.coeffs_extend = c1.extends_at_zero() && c2.extends_at_zero();
        rep.c1_positive = rep.coeffs_extend && c1.value(0.0) > 0.0;
        rep.smooth_completion = rep.coeffs_extend && rep.c1_positive;
        if (!rep.coeffs_extend) {
            rep.failing_condition = "C1, C2 do not extend smoothly to [0, inf)";
        } else if (!rep.c1_positive) {
            rep.failing_condition = "C1(0) is not positive";
        }
    } else {
        rep.coeffs_extend = c1.extends_at_infinity() && c2.extends_at_infinity();
        rep.c1_positive = true;  // the theorem poses no positivity condition here
        rep.smooth_completion = rep.coeffs_extend;
        if (!rep.coeffs_extend) {
            rep.failing_condition = "C1, C2 do not extend smoothly in 1/m";
        }
    }
    return rep;
}

CompletionHint hint_from_ends(const EndReport& lo, const EndReport& hi) {
    if (lo.smooth_completion && hi.smooth_completion) return CompletionHint::both;
    if (lo.smooth_completion) return CompletionHint::one_point_at_zero;
    if (hi.smooth_completion) return CompletionHint::one_point_at_infinity;
    return CompletionHint::none;
}

}  // namespace

std::string completion_hint_name(CompletionHint h) {
    switch (h) {
        case CompletionHint::none: return "none";
        case CompletionHint::one_point_at_zero: return "one_point_at_zero";
        case CompletionHint::one_point_at_infinity: return "one_point_at_infinity";
        case CompletionHint::both: return "both";
    }
    return "none";
}

CompletenessReport classify(const CoefficientSpec& spec, double quad_tol) {
    const CoefficientArcProfile prof = arc_profile(spec, quad_tol);
    CompletenessReport rep;
    rep.w_minus = prof.s_min();
    rep.w_plus = prof.s_max();
    rep.complete = !std::isfinite(rep.w_minus) && !std::isfinite(rep.w_plus);
    rep.incomplete_toward_zero = std::isfinite(rep.w_minus);
    rep.incomplete_toward_infinity = std::isfinite(rep.w_plus);

    rep.criterion_infinite_at_zero = criterion_divergent(spec, End::zero, quad_tol);
    rep.criterion_infinite_at_infinity = criterion_divergent(spec, End::infinity, quad_tol);
    // The criterion speaks about the raw limits of W, before any band.
    const bool quad_infinite_zero = !std::isfinite(prof.w_minus());
    const bool quad_infinite_inf = !std::isfinite(prof.w_plus());
    rep.criterion_consistent = (rep.criterion_infinite_at_zero == quad_infinite_zero) &&
                               (rep.criterion_infinite_at_infinity == quad_infinite_inf);

    rep.at_zero = analyze_end(spec, prof, true);
    rep.at_infinity = analyze_end(spec, prof, false);
    rep.hint = hint_from_ends(rep.at_zero, rep.at_infinity);
    return rep;
}

CompletionCheck completion_check(const CoefficientSpec& spec, double quad_tol) {
    const CoefficientArcProfile prof = arc_profile(spec, quad_tol);
    CompletionCheck check;
    check.at_zero = analyze_end(spec, prof, true);
    check.at_infinity = analyze_end(spec, prof, false);
    check.hint = hint_from_ends(check.at_zero, check.at_infinity);
    return check;
}

ConeSpec cone_spec(double K) {
    if (!(K > 0.0)) throw DomainError("cone parameter K must be positive");
    ConeSpec out{make_preset(Preset::cone, K), 2.0 * kPi * (1.0 - K), std::nullopt};
    const double inv = 1.0 / K;
    if (std::abs(inv - std::round(inv)) < 1e-9) {
        out.orbifold_order = static_cast<int>(std::llround(inv));
    }
    return out;
}

double RadialPowerSum::value(double r) const {
    double sum = 0.0;
    for (const auto& [c, p] : terms) sum += c * std::pow(r, p);
    return sum;
}

double RadialPowerSum::deriv1(double r) const {
    double sum = 0.0;
    for (const auto& [c, p] : terms) {
        if (p != 0.0) sum += c * p * std::pow(r, p - 1.0);
    }
    return sum;
}

double RadialPowerSum::deriv2(double r) const {
    double sum = 0.0;
    for (const auto& [c, p] : terms) {
        if (p != 0.0 && p != 1.0) sum += c * p * (p - 1.0) * std::pow(r, p - 2.0);
    }
    return sum;
}

namespace {

// Coefficients of the sphere completion built from a chosen g2:
// with v(m) = int_1^{sqrt m} sqrt(g2) and w = sin^2(v),
//   C1 = w/(4m),  C2 = g2(sqrt m)/(4m) - w/(4m^2),
// all derivatives by the chain rule through the quadrature-backed v.
class SphereG2Coeff final : public CoefficientFunction {
  public:
    SphereG2Coeff(RadialPowerSum g2, double quad_tol, bool is_c1)
        : g2_(std::move(g2)), tol_(quad_tol), is_c1_(is_c1) {}

    double value(double m) const override {
        const Parts q = parts(m);
        return is_c1_ ? q.w / (4.0 * m) : q.z / (4.0 * m) - q.w / (4.0 * m * m);
    }

    double deriv1(double m) const override {
        const Parts q = parts(m);
        if (is_c1_) return q.w1 / (4.0 * m) - q.w / (4.0 * m * m);
        return q.z1 / (4.0 * m) - q.z / (4.0 * m * m) - q.w1 / (4.0 * m * m) +
               q.w / (2.0 * m * m * m);
    }

    double deriv2(double m) const override {
        const Parts q = parts(m);
        const double m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
        if (is_c1_) return q.w2 / (4.0 * m) - q.w1 / (2.0 * m2) + q.w / (2.0 * m3);
        return q.z2 / (4.0 * m) - q.z1 / (2.0 * m2) + q.z / (2.0 * m3) -
               q.w2 / (4.0 * m2) + q.w1 / m3 - 1.5 * q.w / m4;
    }

    bool extends_at_zero() const override { return false; }
    bool extends_at_infinity() const override { return false; }

    double seam_measure(double m) const { return std::sin(v_of(m)); }

  private:
    struct Parts {
        double w, w1, w2;  // sin^2(v) and derivatives in m
        double z, z1, z2;  // g2(sqrt m) and derivatives in m
    };

    double v_of(double m) const {
        const double r = std::sqrt(m);
        const auto sqrt_g2 = [this](double rho) {
            const double g = g2_.value(rho);
            if (!(g > 0.0)) {
                throw DegenerateMetricError("g2 must stay positive in the sphere "
                                            "completion construction");
            }
            return std::sqrt(g);
        };
        return integrate_radial(sqrt_g2, r, tol_);
    }

    Parts parts(double m) const {
        if (!(m > 0.0)) throw DomainError("total mass must be positive");
        Parts q;
        const double r = std::sqrt(m);
        const double g = g2_.value(r);
        const double gp = g2_.deriv1(r);
        const double v = v_of(m);
        const double sg = std::sqrt(g);
        const double v1 = sg / (2.0 * r);
        const double v2 = gp / (8.0 * m * sg) - sg / (4.0 * m * r);
        const double sv = std::sin(v);
        q.w = sv * sv;
        q.w1 = std::sin(2.0 * v) * v1;
        q.w2 = 2.0 * std::cos(2.0 * v) * v1 * v1 + std::sin(2.0 * v) * v2;
        q.z = g;
        q.z1 = gp / (2.0 * r);
        q.z2 = g2_.deriv2(r) / (4.0 * m) - gp / (4.0 * m * r);
        return q;
    }

    RadialPowerSum g2_;
    double tol_;
    bool is_c1_;
};

}  // namespace

CoefficientSpec sphere_completion_from_g2(const RadialPowerSum& g2, double quad_tol) {
    auto c1 = std::make_shared<const SphereG2Coeff>(g2, quad_tol, true);
    auto c2 = std::make_shared<const SphereG2Coeff>(g2, quad_tol, false);
    CoefficientSpec spec(c1, c2, Preset::custom);
    spec.set_band({0.0, kPi});
    spec.set_seam([c1](double m) { return c1->seam_measure(m); });
    // C2 m + C1 collapses to g2(sqrt m)/4 analytically; keep that exact
    // power form so the radial coefficient never suffers cancellation.
    std::vector<CoeffTerm> h_terms;
    for (const auto& [c, p] : g2.terms) h_terms.push_back(CoeffTerm{0.25 * c, 0.5 * p});
    spec.set_combined_radial(std::make_shared<const TermSum>(std::move(h_terms)));
    return spec;
}

}  // namespace densgeo
