#include <doctest.h>

#include <cmath>

#include "densgeo/coeffs.hpp"
#include "densgeo/errors.hpp"
#include "densgeo/profile.hpp"
#include "support.hpp"

using namespace densgeo;
namespace dt = densgeo::testing;

TEST_CASE("preset coefficient values") {
    const CoefficientSpec rec = make_preset(Preset::reciprocal);
    CHECK(rec.c1(1.0) == doctest::Approx(1.0));
    CHECK(rec.c2(1.0) == doctest::Approx(0.0));
    CHECK(rec.c1(4.0) == doctest::Approx(0.25));

    const CoefficientSpec ext = make_preset(Preset::extended);
    for (double m : {0.1, 1.0, 10.0}) {
        CHECK(ext.c2(m) > -ext.c1(m) / m);  // positivity condition
    }

    CHECK_THROWS_AS(make_preset("no_such_preset"), DomainError);
    CHECK_THROWS_AS(make_preset(Preset::cone, -1.0), DomainError);
}

TEST_CASE("sphere_completion preset is flagged and guards its seam") {
    const CoefficientSpec sc = make_preset(Preset::sphere_completion);
    CHECK(sc.flagged_degenerate());
    CHECK(sc.arc_band().has_value());
    CHECK(sc.arc_band()->lo == doctest::Approx(0.0));
    CHECK(sc.arc_band()->hi == doctest::Approx(3.14159265358979324));
    // C1(1) = sin^2(0)/4 = 0: rejected at evaluation.
    CHECK_THROWS_AS(sc.c1(1.0), DegenerateMetricError);
    // Away from the seam the printed pair holds.
    const double m = 2.0;
    CHECK(sc.c1(m) == doctest::Approx(std::sin(1.0) * std::sin(1.0) / 8.0));
    CHECK(sc.c2(m) ==
          doctest::Approx(1.0 - std::sin(1.0) * std::sin(1.0) / 16.0));
}

TEST_CASE("term-sum derivatives match finite differences") {
    const TermSum fn({CoeffTerm{0.7, -1.5}, CoeffTerm{0.2, 2.0},
                      CoeffTerm{0.4, -1.0, true, 1.3, 0.4}});
    for (double m : {0.3, 1.1, 2.7, 6.0}) {
        const double h = 1e-6 * m;
        const double d1 = (fn.value(m + h) - fn.value(m - h)) / (2.0 * h);
        const double d2 = (fn.value(m + h) - 2.0 * fn.value(m) + fn.value(m - h)) / (h * h);
        CHECK(fn.deriv1(m) == doctest::Approx(d1).epsilon(1e-7));
        CHECK(fn.deriv2(m) == doctest::Approx(d2).epsilon(1e-3));
    }
}

TEST_CASE("radial functions of the worked examples") {
    const RadialFunctions fr(make_preset(Preset::fisher_rao));
    const RadialFunctions rec(make_preset(Preset::reciprocal));
    const RadialFunctions ext(make_preset(Preset::extended));
    const RadialFunctions rsq(make_preset(Preset::reciprocal_sq));
    for (double r : {0.3, 1.0, 2.0, 7.5}) {
        CHECK(fr.g1(r) == doctest::Approx(4.0 * r * r).epsilon(1e-14));
        CHECK(fr.g2(r) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(rec.g1(r) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(rec.g2(r) == doctest::Approx(4.0 / (r * r)).epsilon(1e-14));
        CHECK(ext.g1(r) == doctest::Approx(4.0 * r * r).epsilon(1e-14));
        CHECK(ext.g2(r) == doctest::Approx(4.0 * r * r + 4.0).epsilon(1e-14));
        CHECK(rsq.g1(r) == doctest::Approx(4.0 / (r * r)).epsilon(1e-14));
        CHECK(rsq.g2(r) == doctest::Approx(4.0 / std::pow(r, 4)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(fr.g1(1e-9), DomainError);
    CHECK_THROWS_AS(fr.g1(1e9), DomainError);
}

TEST_CASE("radial derivatives are consistent with finite differences") {
    for (Preset p : dt::example_presets()) {
        const RadialFunctions rf(make_preset(p));
        for (double r : {0.4, 1.0, 3.0}) {
            const double h = 1e-6 * r;
            const double g1d = (rf.g1(r + h) - rf.g1(r - h)) / (2.0 * h);
            const double g2d = (rf.g2(r + h) - rf.g2(r - h)) / (2.0 * h);
            const double g1dd = (rf.g1_prime(r + h) - rf.g1_prime(r - h)) / (2.0 * h);
            CHECK(rf.g1_prime(r) == doctest::Approx(g1d).epsilon(1e-7));
            CHECK(rf.g2_prime(r) == doctest::Approx(g2d).epsilon(1e-7));
            CHECK(rf.g1_second(r) == doctest::Approx(g1dd).epsilon(1e-6));
        }
    }
}

TEST_CASE("validate_positive_definite") {
    const std::vector<double> samples{0.1, 0.5, 1.0, 2.0, 10.0};
    CHECK(validate_positive_definite(make_preset(Preset::fisher_rao), samples).all_ok);
    CHECK(validate_positive_definite(make_preset(Preset::extended), {0.1, 1.0, 10.0}).all_ok);

    // C1 = 1, C2 = -2/m violates C2 > -C1/m at every mass.
    auto c1 = std::make_shared<const TermSum>(std::vector<CoeffTerm>{{1.0, 0.0}});
    auto c2 = std::make_shared<const TermSum>(std::vector<CoeffTerm>{{-2.0, -1.0}});
    const CoefficientSpec bad(c1, c2, Preset::custom);
    const auto report = validate_positive_definite(bad, {1.0});
    CHECK_FALSE(report.all_ok);
    CHECK_FALSE(report.samples[0].ok);
    CHECK(report.samples[0].bound == doctest::Approx(-1.0));

    CHECK_THROWS_AS(validate_positive_definite(bad, {-1.0}), DomainError);
}

TEST_CASE("arc profile W for the worked examples") {
    const double tol = 1e-10;
    const CoefficientArcProfile rec = arc_profile(make_preset(Preset::reciprocal), tol);
    CHECK(rec.W(1.0) == 0.0);  // exact by construction
    CHECK(rec.W(std::exp(1.0)) == doctest::Approx(2.0).epsilon(1e-11));

    const CoefficientArcProfile fr = arc_profile(make_preset(Preset::fisher_rao), tol);
    CHECK(fr.w_minus() == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(std::isinf(fr.w_plus()));
    // a(s) = (s + 2)^2
    for (double s : {-1.5, 0.0, 1.0, 4.0}) {
        CHECK(fr.a(s) == doctest::Approx((s + 2.0) * (s + 2.0)).epsilon(1e-10));
    }

    const CoefficientArcProfile rsq = arc_profile(make_preset(Preset::reciprocal_sq), tol);
    CHECK(rsq.w_plus() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::isinf(rsq.w_minus()));
    CHECK(rsq.w_minus() < 0.0);
}

TEST_CASE("numerical W matches the closed forms on r in [0.05, 20]") {
    const double tol = 1e-10;
    struct Case {
        Preset preset;
        double (*w)(double);
    };
    const Case cases[] = {{Preset::reciprocal, dt::w_reciprocal},
                          {Preset::fisher_rao, dt::w_fisher_rao},
                          {Preset::extended, dt::w_extended},
                          {Preset::reciprocal_sq, dt::w_reciprocal_sq}};
    for (const Case& c : cases) {
        const CoefficientArcProfile prof = arc_profile(make_preset(c.preset), tol);
        for (double r = 0.05; r <= 20.0; r *= 1.7) {
            CHECK(prof.W(r) == doctest::Approx(c.w(r)).epsilon(tol).scale(1.0));
        }
    }
}

TEST_CASE("W and W_inv are mutually inverse; a(W(r)) = g1(r)") {
    const double tol = 1e-10;
    for (Preset p : dt::example_presets()) {
        const CoefficientSpec spec = make_preset(p);
        const RadialFunctions rf(spec);
        const CoefficientArcProfile prof = arc_profile(rf, tol);
        for (double r = 0.1; r <= 10.0; r *= 1.9) {
            const double s = prof.W(r);
            if (!(s > prof.s_min() && s < prof.s_max())) continue;
            CHECK(prof.W_inv(s) == doctest::Approx(r).epsilon(10.0 * tol));
            CHECK(prof.a(s) == doctest::Approx(rf.g1(r)).epsilon(1e-9));
            CHECK(prof.a(s) > 0.0);
        }
        for (double s : {-0.9, -0.3, 0.4, 1.2}) {
            if (!(s > prof.s_min() && s < prof.s_max())) continue;
            CHECK(prof.W(prof.W_inv(s)) == doctest::Approx(s).epsilon(10.0 * tol).scale(1.0));
        }
    }
}

TEST_CASE("arc profile domain guards") {
    const CoefficientArcProfile fr = arc_profile(make_preset(Preset::fisher_rao), 1e-10);
    CHECK_THROWS_AS(fr.eval(-2.5), DomainError);   // below W_minus
    CHECK_THROWS_AS(fr.W_inv(-2.0), DomainError);  // the open end itself
    CHECK_THROWS_AS(fr.W(0.0), DomainError);

    // sphere_completion: band (0, pi), a(s) = sin^2 s.
    const CoefficientArcProfile sc =
        arc_profile(make_preset(Preset::sphere_completion), 1e-10);
    CHECK(sc.s_min() == doctest::Approx(0.0));
    CHECK(sc.s_max() == doctest::Approx(3.14159265358979324));
    CHECK(sc.w_minus() == doctest::Approx(-1.0).epsilon(1e-9));
    for (double s : {0.4, 1.2, 2.9}) {
        CHECK(sc.a(s) == doctest::Approx(std::sin(s) * std::sin(s)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sc.eval(3.2), DomainError);  // outside the band
}

TEST_CASE("direct profile uses finite differences when derivatives are missing") {
    const DirectArcProfile prof([](double s) { return std::exp(-2.0 * s); }, nullptr,
                                nullptr, 0.0, 10.0);
    const auto v = prof.eval(1.0);
    CHECK(v.a == doctest::Approx(std::exp(-2.0)));
    CHECK(v.a1 == doctest::Approx(-2.0 * std::exp(-2.0)).epsilon(1e-8));
    CHECK(v.a2 == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-4));
}
