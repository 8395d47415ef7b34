#include "densgeo/coeffs.hpp"

#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonneg_integer(double p) {
    return p > -1e-12 && std::abs(p - std::round(p)) < 1e-12;
}

bool is_nonpos_integer(double p) {
    return p < 1e-12 && std::abs(p - std::round(p)) < 1e-12;
}

}  // namespace

TermSum::TermSum(std::vector<CoeffTerm> terms) : terms_(std::move(terms)) {}

double TermSum::value(double m) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.c * std::pow(m, t.p);
        if (t.has_sin2) {
            const double u = std::sin(t.sin2_k * (m - t.sin2_m0));
            v *= u * u;
        }
        sum += v;
    }
    return sum;
}

double TermSum::deriv1(double m) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const double mp = std::pow(m, t.p);
        const double mp1 = t.p == 0.0 ? 0.0 : t.p * std::pow(m, t.p - 1.0);
        if (!t.has_sin2) {
            sum += t.c * mp1;
        } else {
            const double u = t.sin2_k * (m - t.sin2_m0);
            const double S = std::sin(u) * std::sin(u);
            const double S1 = t.sin2_k * std::sin(2.0 * u);
            sum += t.c * (mp1 * S + mp * S1);
        }
    }
    return sum;
}

double TermSum::deriv2(double m) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const double mp = std::pow(m, t.p);
        const double mp1 = t.p == 0.0 ? 0.0 : t.p * std::pow(m, t.p - 1.0);
        const double mp2 =
            (t.p == 0.0 || t.p == 1.0) ? 0.0 : t.p * (t.p - 1.0) * std::pow(m, t.p - 2.0);
        if (!t.has_sin2) {
            sum += t.c * mp2;
        } else {
            const double u = t.sin2_k * (m - t.sin2_m0);
            const double S = std::sin(u) * std::sin(u);
            const double S1 = t.sin2_k * std::sin(2.0 * u);
            const double S2 = 2.0 * t.sin2_k * t.sin2_k * std::cos(2.0 * u);
            sum += t.c * (mp2 * S + 2.0 * mp1 * S1 + mp * S2);
        }
    }
    return sum;
}

bool TermSum::extends_at_zero() const {
    for (const auto& t : terms_) {
        if (t.c != 0.0 && !is_nonneg_integer(t.p)) return false;
    }
    return true;
}

bool TermSum::extends_at_infinity() const {
    for (const auto& t : terms_) {
        if (t.c == 0.0) continue;
        if (!is_nonpos_integer(t.p)) return false;
        if (t.has_sin2 && t.sin2_k != 0.0) return false;  // oscillates at infinity
    }
    return true;
}

bool TermSum::is_zero() const {
    for (const auto& t : terms_) {
        if (t.c != 0.0) return false;
    }
    return true;
}

bool TermSum::power_range(double& p_min, double& p_max) const {
    bool any = false;
    for (const auto& t : terms_) {
        if (t.c == 0.0) continue;
        if (t.c < 0.0 || t.has_sin2) return false;
        if (!any) {
            p_min = p_max = t.p;
            any = true;
        } else {
            p_min = std::fmin(p_min, t.p);
            p_max = std::fmax(p_max, t.p);
        }
    }
    return any;
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::reciprocal: return "reciprocal";
        case Preset::fisher_rao: return "fisher_rao";
        case Preset::extended: return "extended";
        case Preset::reciprocal_sq: return "reciprocal_sq";
        case Preset::sphere_completion: return "sphere_completion";
        case Preset::cone: return "cone";
        case Preset::custom: return "custom";
    }
    return "custom";
}

Preset preset_from_name(const std::string& name) {
    if (name == "reciprocal") return Preset::reciprocal;
    if (name == "fisher_rao") return Preset::fisher_rao;
    if (name == "extended") return Preset::extended;
    if (name == "reciprocal_sq") return Preset::reciprocal_sq;
    if (name == "sphere_completion") return Preset::sphere_completion;
    if (name == "cone") return Preset::cone;
    throw DomainError("unknown preset name: " + name);
}

namespace {

// h(m) = C2(m) m + C1(m) assembled term by term, with exactly matching
// opposite terms cancelled at construction; avoids catastrophic loss when
// huge C1 and C2 m contributions annihilate (sphere completions near m = 0).
CoeffFnPtr combined_radial_terms(const CoefficientFunction& c1,
                                 const CoefficientFunction& c2) {
    const auto* t1 = c1.terms();
    const auto* t2 = c2.terms();
    if (t1 == nullptr || t2 == nullptr) return nullptr;
    std::vector<CoeffTerm> merged;
    const auto add = [&merged](CoeffTerm t) {
        for (CoeffTerm& existing : merged) {
            if (existing.p == t.p && existing.has_sin2 == t.has_sin2 &&
                existing.sin2_k == t.sin2_k && existing.sin2_m0 == t.sin2_m0) {
                existing.c += t.c;
                return;
            }
        }
        merged.push_back(t);
    };
    for (CoeffTerm t : *t2) {
        t.p += 1.0;  // the C2 part enters multiplied by m
        add(t);
    }
    for (const CoeffTerm& t : *t1) add(t);
    std::vector<CoeffTerm> kept;
    for (const CoeffTerm& t : merged) {
        if (t.c != 0.0) kept.push_back(t);
    }
    return std::make_shared<const TermSum>(std::move(kept));
}

}  // namespace

CoefficientSpec::CoefficientSpec(CoeffFnPtr c1, CoeffFnPtr c2, Preset kind)
    : c1_(std::move(c1)), c2_(std::move(c2)), kind_(kind) {
    if (!c1_ || !c2_) throw DomainError("coefficient spec needs both C1 and C2");
    h_fn_ = combined_radial_terms(*c1_, *c2_);
}

void CoefficientSpec::check_mass(double m) const {
    if (!(m > 0.0)) throw DomainError("total mass must be positive");
    if (seam_measure_ && std::abs(seam_measure_(m)) < 1e-12) {
        throw DegenerateMetricError("metric degenerates at mass m = " + std::to_string(m) +
                                    " (C1 vanishes on the seam)");
    }
}

double CoefficientSpec::c1(double m) const {
    check_mass(m);
    const double v = c1_->value(m);
    if (!(v > 0.0)) {
        throw DegenerateMetricError("C1(m) must be positive; got " + std::to_string(v) +
                                    " at m = " + std::to_string(m));
    }
    return v;
}

double CoefficientSpec::c1_prime(double m) const {
    check_mass(m);
    return c1_->deriv1(m);
}

double CoefficientSpec::c1_second(double m) const {
    check_mass(m);
    return c1_->deriv2(m);
}

double CoefficientSpec::c2(double m) const {
    check_mass(m);
    return c2_->value(m);
}

double CoefficientSpec::c2_prime(double m) const {
    check_mass(m);
    return c2_->deriv1(m);
}

double CoefficientSpec::c2_second(double m) const {
    check_mass(m);
    return c2_->deriv2(m);
}

CoefficientSpec make_preset(Preset preset, double cone_k) {
    auto sum = [](std::vector<CoeffTerm> t) {
        return std::make_shared<const TermSum>(std::move(t));
    };
    switch (preset) {
        case Preset::reciprocal:
            return CoefficientSpec(sum({{1.0, -1.0}}), sum({}), preset);
        case Preset::fisher_rao:
            return CoefficientSpec(sum({{1.0, 0.0}}), sum({}), preset);
        case Preset::extended:
            return CoefficientSpec(sum({{1.0, 0.0}}), sum({{1.0, 0.0}}), preset);
        case Preset::reciprocal_sq:
            return CoefficientSpec(sum({{1.0, -2.0}}), sum({}), preset);
        case Preset::sphere_completion: {
            // C1 = sin^2(m-1)/(4m), C2 = 1 - sin^2(m-1)/(4m^2); a(s) = sin^2 s.
            CoeffTerm c1t{0.25, -1.0, true, 1.0, 1.0};
            CoeffTerm c2a{1.0, 0.0};
            CoeffTerm c2b{-0.25, -2.0, true, 1.0, 1.0};
            CoefficientSpec spec(sum({c1t}), sum({c2a, c2b}), preset);
            spec.set_band({0.0, kPi});
            spec.set_seam([](double m) { return std::sin(m - 1.0); });
            return spec;
        }
        case Preset::cone: {
            // Realizes a = K^2 sigma^2 with the tip at sigma = 0: g2 = 4,
            // C1 = K^2, C2 = (1 - K^2)/m.
            if (!(cone_k > 0.0)) throw DomainError("cone preset needs K > 0");
            CoefficientSpec spec(sum({{cone_k * cone_k, 0.0}}),
                                 sum({{1.0 - cone_k * cone_k, -1.0}}), preset);
            spec.set_cone_k(cone_k);
            return spec;
        }
        case Preset::custom:
            throw DomainError("custom specs are built from expression trees, not presets");
    }
    throw DomainError("unknown preset");
}

CoefficientSpec make_preset(const std::string& name, double cone_k) {
    return make_preset(preset_from_name(name), cone_k);
}

PositiveDefiniteReport validate_positive_definite(const CoefficientSpec& spec,
                                                  const std::vector<double>& m_samples) {
    PositiveDefiniteReport report;
    report.samples.reserve(m_samples.size());
    for (double m : m_samples) {
        if (!(m > 0.0)) throw DomainError("mass samples must be positive");
        PositiveDefiniteSample s;
        s.m = m;
        s.c1 = spec.c1_fn().value(m);
        s.c2 = spec.c2_fn().value(m);
        s.bound = -s.c1 / m;
        s.ok = s.c1 > 0.0 && s.c2 > s.bound;
        report.all_ok = report.all_ok && s.ok;
        report.samples.push_back(s);
    }
    return report;
}

RadialFunctions::RadialFunctions(CoefficientSpec spec) : spec_(std::move(spec)) {}

void RadialFunctions::check_domain(double r) const {
    if (!(r >= kRMin && r <= kRMax)) {
        throw DomainError("radius outside guarded range [1e-8, 1e8]");
    }
}

double RadialFunctions::g1(double r) const {
    check_domain(r);
    return 4.0 * spec_.c1(r * r) * r * r;
}

double RadialFunctions::g1_prime(double r) const {
    check_domain(r);
    const double m = r * r;
    return 8.0 * r * spec_.c1(m) + 8.0 * r * m * spec_.c1_prime(m);
}

double RadialFunctions::g1_second(double r) const {
    check_domain(r);
    const double m = r * r;
    return 8.0 * spec_.c1(m) + 40.0 * m * spec_.c1_prime(m) +
           16.0 * m * m * spec_.c1_second(m);
}

double RadialFunctions::g2(double r) const {
    check_domain(r);
    const double v = g2_unguarded(r);
    if (!(v > 0.0)) {
        throw DegenerateMetricError("g2(r) must be positive (metric not positive definite)");
    }
    return v;
}

double RadialFunctions::g2_unguarded(double r) const {
    const double m = r * r;
    if (const auto* h = spec_.combined_radial()) return 4.0 * h->value(m);
    return 4.0 * (spec_.c2_fn().value(m) * m + spec_.c1_fn().value(m));
}

double RadialFunctions::g2_prime(double r) const {
    check_domain(r);
    const double m = r * r;
    // g2 = 4 h(r^2) with h(m) = C2 m + C1, so g2' = 8 r h'(r^2)
    if (const auto* h = spec_.combined_radial()) return 8.0 * r * h->deriv1(m);
    const double h1 = spec_.c2_prime(m) * m + spec_.c2(m) + spec_.c1_prime(m);
    return 8.0 * r * h1;
}

double RadialFunctions::g2_second(double r) const {
    check_domain(r);
    const double m = r * r;
    if (const auto* h = spec_.combined_radial()) {
        return 8.0 * h->deriv1(m) + 16.0 * m * h->deriv2(m);
    }
    const double h1 = spec_.c2_prime(m) * m + spec_.c2(m) + spec_.c1_prime(m);
    const double h2 = spec_.c2_second(m) * m + 2.0 * spec_.c2_prime(m) + spec_.c1_second(m);
    return 8.0 * h1 + 16.0 * m * h2;
}

}  // namespace densgeo
