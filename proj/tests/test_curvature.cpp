#include <doctest.h>

#include <cmath>

#include "densgeo/completeness.hpp"
#include "densgeo/curvature.hpp"
#include "densgeo/errors.hpp"
#include "densgeo/quadrature.hpp"
#include "support.hpp"

using namespace densgeo;
namespace dt = densgeo::testing;

namespace {

constexpr double kPi = 3.14159265358979323846;

DirectArcProfile pseudosphere() {
    return DirectArcProfile([](double s) { return std::exp(-2.0 * s); },
                            [](double s) { return -2.0 * std::exp(-2.0 * s); },
                            [](double s) { return 4.0 * std::exp(-2.0 * s); }, 0.0, 40.0);
}

}  // namespace

TEST_CASE("sectional curvature of the worked profiles") {
    const CoefficientArcProfile sphere =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    const CurvaturePair round = sectional(sphere, 0.7);
    CHECK(round.sec_sphere == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(round.sec_mixed == doctest::Approx(1.0).epsilon(1e-8));

    const CoefficientArcProfile flat = arc_profile(make_preset(Preset::fisher_rao), 1e-10);
    for (double s : {-1.0, 0.0, 2.0}) {
        const CurvaturePair c = sectional(flat, s);
        CHECK(c.sec_sphere == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(c.sec_mixed == doctest::Approx(0.0).epsilon(1e-10));
    }

    const DirectArcProfile tractrix = pseudosphere();
    CHECK(sectional(tractrix, 1.3).sec_mixed == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(sectional(flat, -2.5), DomainError);
}

TEST_CASE("finite-difference Gauss-curvature oracle") {
    const CoefficientArcProfile flat = arc_profile(make_preset(Preset::fisher_rao), 1e-10);
    CHECK(sectional_fd_check(flat, 1.0, 1e-4) < 1e-6);

    const CoefficientArcProfile sphere =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    CHECK(sectional_fd_check(sphere, 0.5, 1e-4) < 1e-5);

    const CoefficientArcProfile rec = arc_profile(make_preset(Preset::reciprocal), 1e-10);
    CHECK(sectional_fd_check(rec, 0.3, 1e-4) < 1e-10);  // constant warp, exact zero pair

    CHECK_THROWS_AS(sectional_fd_check(flat, -2.0 + 1e-5, 1e-4), DomainError);
}

TEST_CASE("fd oracle agrees across presets on log-spaced samples") {
    for (Preset p : dt::example_presets()) {
        const CoefficientArcProfile prof = arc_profile(make_preset(p), 1e-10);
        for (double s = 0.01; s < 1.9; s *= 2.3) {
            CHECK(sectional_fd_check(prof, s, 1e-4) < 1e-4);
        }
    }
}

TEST_CASE("validity condition matches the sign of sec_sphere") {
    const CoefficientArcProfile sphere =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    CHECK(validity_condition(sphere, 0.7));
    CHECK(sectional(sphere, 0.7).sec_sphere > 0.0);

    const CoefficientArcProfile flat = arc_profile(make_preset(Preset::fisher_rao), 1e-10);
    CHECK_FALSE(validity_condition(flat, 1.0));  // boundary case a'^2 = 4a
    CHECK(sectional(flat, 1.0).sec_sphere == doctest::Approx(0.0));

    const CoefficientArcProfile rec = arc_profile(make_preset(Preset::reciprocal), 1e-10);
    CHECK(validity_condition(rec, 0.4));
    CHECK(sectional(rec, 0.4).sec_sphere == doctest::Approx(0.25).epsilon(1e-10));

    // Equivalence on a sweep of profiles and samples.
    for (Preset p : dt::example_presets()) {
        const CoefficientArcProfile prof = arc_profile(make_preset(p), 1e-10);
        for (double s = 0.02; s < 1.8; s *= 1.7) {
            const bool valid = validity_condition(prof, s);
            const double sec = sectional(prof, s).sec_sphere;
            if (std::abs(sec) > 1e-12) CHECK(valid == (sec > 0.0));
        }
    }
}

TEST_CASE("revolution profile: tractrix") {
    const DirectArcProfile prof = pseudosphere();
    const ProfileCurve curve = revolution_profile(prof, 0.05, 3.0, 1200);
    REQUIRE(curve.s.size() == 1200);
    const auto c1_exact = [](double s) {
        return std::acosh(std::exp(s)) - std::sqrt(1.0 - std::exp(-2.0 * s));
    };
    for (size_t i = 0; i < curve.s.size(); i += 113) {
        CHECK(curve.valid[i] == 1);
        CHECK(curve.c2[i] == doctest::Approx(std::exp(-curve.s[i])).epsilon(1e-12));
        CHECK(curve.c1[i] == doctest::Approx(c1_exact(curve.s[i])).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("revolution profile: sphere completion at the equator") {
    const CoefficientArcProfile sphere =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    const ProfileCurve curve = revolution_profile(sphere, 0.05, kPi - 0.05, 801);
    const size_t mid = curve.s.size() / 2;  // s close to pi/2
    CHECK(curve.s[mid] == doctest::Approx(kPi / 2.0).epsilon(1e-2));
    CHECK(curve.c2[mid] == doctest::Approx(std::abs(std::sin(curve.s[mid]))).epsilon(1e-9));
    CHECK(curve.valid[mid] == 1);
    // Generating curve of the unit sphere: c1(s) = 1 - cos(s).
    for (size_t i = 0; i < curve.s.size(); i += 97) {
        CHECK(curve.c1[i] ==
              doctest::Approx(1.0 - std::cos(curve.s[i])).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("revolution profile: fisher_rao is fully embedding-invalid") {
    const CoefficientArcProfile flat = arc_profile(make_preset(Preset::fisher_rao), 1e-10);
    const ProfileCurve curve = revolution_profile(flat, -1.5, 2.0, 100);
    for (char v : curve.valid) CHECK(v == 0);

    CHECK_THROWS_AS(revolution_profile(flat, -10.0, -5.0, 50), DomainError);
    CHECK_THROWS_AS(revolution_profile(flat, 0.0, 1.0, 1), DomainError);
}

TEST_CASE("profile curve is arc-length parametrized on valid samples") {
    const DirectArcProfile prof = pseudosphere();
    const ProfileCurve curve = revolution_profile(prof, 0.2, 2.2, 2001);
    for (size_t i = 1; i + 1 < curve.s.size(); i += 31) {
        const double h2 = curve.s[i + 1] - curve.s[i - 1];
        const double d1 = (curve.c1[i + 1] - curve.c1[i - 1]) / h2;
        const double d2 = (curve.c2[i + 1] - curve.c2[i - 1]) / h2;
        CHECK(d1 * d1 + d2 * d2 == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("profile surface isometry: induced metric matches the warp") {
    // c2^2 dtheta^2 + ((c1')^2 + (c2')^2) ds^2 against a dtheta^2 + ds^2.
    const CoefficientArcProfile sphere =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    const ProfileCurve curve = revolution_profile(sphere, 0.3, 2.8, 2001);
    for (size_t i = 1; i + 1 < curve.s.size(); i += 41) {
        if (!curve.valid[i]) continue;
        const double a = sphere.a(curve.s[i]);
        CHECK(curve.c2[i] * curve.c2[i] == doctest::Approx(a).epsilon(1e-9));
        const double h2 = curve.s[i + 1] - curve.s[i - 1];
        const double d1 = (curve.c1[i + 1] - curve.c1[i - 1]) / h2;
        const double d2 = (curve.c2[i + 1] - curve.c2[i - 1]) / h2;
        CHECK(d1 * d1 + d2 * d2 == doctest::Approx(1.0).epsilon(1e-5));
    }
}
