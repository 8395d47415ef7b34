#include "densgeo/curvature.hpp"

#include <cmath>

#include "densgeo/errors.hpp"
#include "densgeo/quadrature.hpp"

namespace densgeo {

CurvaturePair sectional(const ArcProfile& profile, double s) {
    const auto v = profile.eval(s);
    CurvaturePair out;
    out.at_s = s;
    out.sec_sphere = 1.0 / v.a - v.a1 * v.a1 / (4.0 * v.a * v.a);
    out.sec_mixed = -v.a2 / (2.0 * v.a) + v.a1 * v.a1 / (4.0 * v.a * v.a);
    return out;
}

double sectional_fd_check(const ArcProfile& profile, double s, double h) {
    if (!profile.contains(s - h) || !profile.contains(s + h)) {
        throw DomainError("[s-h, s+h] must lie inside the profile domain");
    }
    const double u_lo = std::sqrt(profile.a(s - h));
    const double u_mid = std::sqrt(profile.a(s));
    const double u_hi = std::sqrt(profile.a(s + h));
    const double k_fd = -(u_hi - 2.0 * u_mid + u_lo) / (h * h * u_mid);
    return std::abs(k_fd - sectional(profile, s).sec_mixed);
}

bool validity_condition(const ArcProfile& profile, double s) {
    const auto v = profile.eval(s);
    return v.a1 * v.a1 < 4.0 * v.a;
}

ProfileCurve revolution_profile(const ArcProfile& profile, double s_lo, double s_hi,
                                int n) {
    if (n < 2) throw DomainError("revolution profile needs n >= 2 samples");
    if (!(s_lo < s_hi)) throw DomainError("empty sample range");

    ProfileCurve curve;
    for (int i = 0; i < n; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / (n - 1);
        if (profile.contains(s)) curve.s.push_back(s);
    }
    if (curve.s.empty()) {
        throw DomainError("empty profile: no sample lies inside the domain");
    }

    const size_t m = curve.s.size();
    curve.c1.resize(m);
    curve.c2.resize(m);
    curve.valid.resize(m);
    for (size_t i = 0; i < m; ++i) {
        const auto v = profile.eval(curve.s[i]);
        curve.c2[i] = std::sqrt(v.a);
        curve.valid[i] = v.a1 * v.a1 < 4.0 * v.a ? 1 : 0;
    }

    // Axial coordinate: cumulative quadrature of sqrt(1 - a'^2/4a), clamped
    // to 0 where the embedding condition fails, anchored at s = 0 (or the
    // nearest domain point when 0 is outside the closure).
    const auto speed = [&profile](double s) {
        const auto v = profile.eval(s);
        const double q = 1.0 - v.a1 * v.a1 / (4.0 * v.a);
        return q > 0.0 ? std::sqrt(q) : 0.0;
    };
    double anchor = 0.0;
    if (anchor < profile.s_min()) anchor = profile.s_min();
    if (anchor > profile.s_max()) anchor = profile.s_max();

    // Segment quadrature: open Gauss nodes keep evaluations interior even
    // when the anchor sits on an open domain end.
    double acc = integrate_smooth(speed, anchor, curve.s[0], 1e-10);
    curve.c1[0] = acc;
    for (size_t i = 1; i < m; ++i) {
        acc += integrate_smooth(speed, curve.s[i - 1], curve.s[i], 1e-10);
        curve.c1[i] = acc;
    }
    return curve;
}

}  // namespace densgeo
