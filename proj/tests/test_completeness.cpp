#include <doctest.h>

#include <cmath>

#include "densgeo/completeness.hpp"
#include "densgeo/curvature.hpp"
#include "densgeo/errors.hpp"
#include "support.hpp"

using namespace densgeo;
namespace dt = densgeo::testing;
using dt::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("classify the four worked examples") {
    const CompletenessReport rec = classify(make_preset(Preset::reciprocal));
    CHECK(rec.complete);
    CHECK(std::isinf(rec.w_minus));
    CHECK(std::isinf(rec.w_plus));
    CHECK_FALSE(rec.incomplete_toward_zero);

    const CompletenessReport fr = classify(make_preset(Preset::fisher_rao));
    CHECK_FALSE(fr.complete);
    CHECK(fr.incomplete_toward_zero);
    CHECK_FALSE(fr.incomplete_toward_infinity);
    CHECK(fr.w_minus == doctest::Approx(-2.0).epsilon(1e-8));

    const CompletenessReport ext = classify(make_preset(Preset::extended));
    CHECK(ext.incomplete_toward_zero);
    CHECK(ext.w_minus ==
          doctest::Approx(-(std::sqrt(2.0) + std::asinh(1.0))).epsilon(1e-6));
    CHECK(std::isinf(ext.w_plus));

    const CompletenessReport rsq = classify(make_preset(Preset::reciprocal_sq));
    CHECK(rsq.w_plus == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::isinf(rsq.w_minus));
    CHECK(rsq.w_minus < 0.0);
    CHECK(rsq.incomplete_toward_infinity);
    CHECK_FALSE(rsq.incomplete_toward_zero);
}

TEST_CASE("criterion cross-check agrees on presets and random expression trees") {
    CHECK(classify(make_preset(Preset::reciprocal)).criterion_consistent);
    CHECK(classify(make_preset(Preset::fisher_rao)).criterion_consistent);
    CHECK(classify(make_preset(Preset::extended)).criterion_consistent);
    CHECK(classify(make_preset(Preset::reciprocal_sq)).criterion_consistent);
    CHECK(classify(make_preset(Preset::sphere_completion)).criterion_consistent);
    CHECK(classify(make_preset(Preset::cone, 0.5)).criterion_consistent);
    CHECK(classify(make_preset(Preset::cone, 2.0)).criterion_consistent);

    Rng rng(41);
    std::uniform_real_distribution<double> uc(0.2, 2.0);
    std::uniform_int_distribution<int> up(-2, 2);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<CoeffTerm> t1{{uc(rng), static_cast<double>(up(rng))}};
        std::vector<CoeffTerm> t2;
        if (rep % 2 == 0) t2.push_back({uc(rng), static_cast<double>(up(rng))});
        auto c1 = std::make_shared<const TermSum>(t1);
        auto c2 = std::make_shared<const TermSum>(t2);
        const CoefficientSpec spec(c1, c2, Preset::custom);
        CHECK(classify(spec).criterion_consistent);
    }
}

TEST_CASE("completion_check examples") {
    // fisher_rao: flat cone point at r = 0.
    const CompletionCheck fr = completion_check(make_preset(Preset::fisher_rao));
    CHECK(fr.at_zero.w_finite);
    CHECK(fr.at_zero.coeffs_extend);
    CHECK(fr.at_zero.c1_positive);
    CHECK(fr.at_zero.smooth_completion);
    CHECK(fr.hint == CompletionHint::one_point_at_zero);

    // reciprocal: complete, nothing to complete.
    const CompletionCheck rec = completion_check(make_preset(Preset::reciprocal));
    CHECK_FALSE(rec.at_zero.w_finite);
    CHECK_FALSE(rec.at_zero.smooth_completion);
    CHECK(rec.hint == CompletionHint::none);

    // sphere_completion: smooth poles at both band ends.
    const CompletionCheck sc = completion_check(make_preset(Preset::sphere_completion));
    CHECK(sc.at_zero.pole);
    CHECK(sc.at_zero.pole_order_k == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sc.at_infinity.pole);
    CHECK(sc.at_infinity.pole_order_k == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sc.hint == CompletionHint::both);

    // extended: completes at zero (coefficients are constants).
    const CompletionCheck ext = completion_check(make_preset(Preset::extended));
    CHECK(ext.at_zero.smooth_completion);

    // reciprocal_sq: completion at infinity in the 1/m coordinate.
    const CompletionCheck rsq = completion_check(make_preset(Preset::reciprocal_sq));
    CHECK(rsq.at_infinity.w_finite);
    CHECK(rsq.at_infinity.coeffs_extend);
    CHECK(rsq.at_infinity.smooth_completion);
    CHECK(rsq.hint == CompletionHint::one_point_at_infinity);

    // cone with K != 1: C2 = (1-K^2)/m blocks the smooth extension.
    const CompletionCheck cone_half = completion_check(make_preset(Preset::cone, 0.5));
    CHECK(cone_half.at_zero.w_finite);
    CHECK_FALSE(cone_half.at_zero.coeffs_extend);
    CHECK_FALSE(cone_half.at_zero.smooth_completion);
    // ... while K = 1 is flat space and does extend.
    const CompletionCheck cone_one = completion_check(make_preset(Preset::cone, 1.0));
    CHECK(cone_one.at_zero.smooth_completion);
}

TEST_CASE("cone_spec") {
    CHECK_THROWS_AS(cone_spec(0.0), DomainError);

    const ConeSpec flat = cone_spec(1.0);
    CHECK(flat.angle_defect == doctest::Approx(0.0));
    CHECK(flat.orbifold_order.has_value());
    CHECK(*flat.orbifold_order == 1);

    const ConeSpec half = cone_spec(0.5);
    CHECK(half.angle_defect == doctest::Approx(kPi));
    REQUIRE(half.orbifold_order.has_value());
    CHECK(*half.orbifold_order == 2);

    const double k_beta = std::sin(kPi / 4.0);
    const ConeSpec beta = cone_spec(k_beta);
    CHECK(beta.angle_defect == doctest::Approx(2.0 * kPi * (1.0 - k_beta)));
    CHECK_FALSE(beta.orbifold_order.has_value());
}

TEST_CASE("cone_spec round trip: a(s) = K^2 sigma^2 from the tip") {
    for (double K : {0.5, 1.0, std::sin(kPi / 4.0), 2.0}) {
        const ConeSpec cone = cone_spec(K);
        const CoefficientArcProfile prof = arc_profile(cone.spec, 1e-10);
        CHECK(prof.w_minus() == doctest::Approx(-2.0).epsilon(1e-9));
        for (double sigma : {0.3, 1.0, 2.5}) {
            const double s = prof.w_minus() + sigma;
            CHECK(prof.a(s) ==
                  doctest::Approx(K * K * sigma * sigma).epsilon(1e-8));
        }
    }

    // K = 1 is flat space: both sectional curvatures vanish.
    const CoefficientArcProfile flat = arc_profile(cone_spec(1.0).spec, 1e-10);
    for (double s : {-1.0, 0.0, 1.5}) {
        CHECK(sectional(flat, s).sec_sphere == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(sectional(flat, s).sec_mixed == doctest::Approx(0.0).epsilon(1e-9));
    }

    // K = 1/2: sec_sphere = (1 - K^2)/(K^2 sigma^2) away from the tip.
    const CoefficientArcProfile halfp = arc_profile(cone_spec(0.5).spec, 1e-10);
    for (double sigma : {0.5, 1.0, 2.0}) {
        const double s = -2.0 + sigma;
        const double expected = (1.0 - 0.25) / (0.25 * sigma * sigma);
        CHECK(sectional(halfp, s).sec_sphere == doctest::Approx(expected).epsilon(1e-7));
        CHECK(sectional(halfp, s).sec_mixed == doctest::Approx(0.0).epsilon(1e-7));
    }
}

TEST_CASE("sphere_completion_from_g2 reproduces the printed pair") {
    const RadialPowerSum g2{{{4.0, 2.0}}};  // g2(r) = 4 r^2
    const CoefficientSpec spec = sphere_completion_from_g2(g2);

    for (double m : {0.5, 2.0, 3.5}) {
        const double c1_expected = std::sin(m - 1.0) * std::sin(m - 1.0) / (4.0 * m);
        const double c2_expected =
            1.0 - std::sin(m - 1.0) * std::sin(m - 1.0) / (4.0 * m * m);
        CHECK(spec.c1_fn().value(m) == doctest::Approx(c1_expected).epsilon(1e-10));
        CHECK(spec.c2_fn().value(m) == doctest::Approx(c2_expected).epsilon(1e-10));
    }

    // Derivatives agree with finite differences of the formulas.
    for (double m : {0.7, 2.2}) {
        const double h = 1e-6 * m;
        const double d1 =
            (spec.c1_fn().value(m + h) - spec.c1_fn().value(m - h)) / (2.0 * h);
        CHECK(spec.c1_fn().deriv1(m) == doctest::Approx(d1).epsilon(1e-6));
        const double d2 =
            (spec.c2_fn().value(m + h) - spec.c2_fn().value(m - h)) / (2.0 * h);
        CHECK(spec.c2_fn().deriv1(m) == doctest::Approx(d2).epsilon(1e-6));
    }

    // Round trip: a(s) = sin^2 s on the band, curvature 1.
    const CoefficientArcProfile prof = arc_profile(spec, 1e-10);
    CHECK(prof.s_min() == doctest::Approx(0.0));
    CHECK(prof.s_max() == doctest::Approx(kPi));
    for (double s : {0.3, 1.0, 2.0, 3.0}) {
        CHECK(prof.a(s) == doctest::Approx(std::sin(s) * std::sin(s)).epsilon(1e-8));
    }
    CHECK(sectional(prof, 0.3).sec_sphere == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sectional(prof, 0.3).sec_mixed == doctest::Approx(1.0).epsilon(1e-7));

    // The seam guard follows the construction.
    CHECK_THROWS_AS(spec.c1(1.0), DegenerateMetricError);
}
