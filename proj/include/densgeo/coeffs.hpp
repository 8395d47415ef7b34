#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace densgeo {

/// One term of a coefficient expression: c * m^p, optionally times
/// sin^2(k (m - m0)). Sums of such terms keep every derivative analytic.
struct CoeffTerm {
    double c = 0.0;
    double p = 0.0;
    bool has_sin2 = false;
    double sin2_k = 0.0;
    double sin2_m0 = 0.0;
};

/// Scalar function of the total mass m > 0 with two analytic derivatives
/// and declared smooth-extension properties.
class CoefficientFunction {
  public:
    virtual ~CoefficientFunction() = default;
    virtual double value(double m) const = 0;
    virtual double deriv1(double m) const = 0;
    virtual double deriv2(double m) const = 0;

    /// Smooth extension to [0, inf): powers with nonnegative integer
    /// exponents and sin^2 factors extend; negative powers do not.
    virtual bool extends_at_zero() const = 0;
    /// Smooth extension to (0, inf] in the coordinate 1/m.
    virtual bool extends_at_infinity() const = 0;

    virtual bool is_zero() const { return false; }
    /// Term list when the function is an expression tree (else nullptr).
    virtual const std::vector<CoeffTerm>* terms() const { return nullptr; }
    /// Exponent range for the divergence shortcut; only available for pure
    /// power sums with positive coefficients.
    virtual bool power_range(double& p_min, double& p_max) const {
        (void)p_min; (void)p_max;
        return false;
    }
};

using CoeffFnPtr = std::shared_ptr<const CoefficientFunction>;

/// Sum of CoeffTerm entries.
class TermSum final : public CoefficientFunction {
  public:
    explicit TermSum(std::vector<CoeffTerm> terms);
    double value(double m) const override;
    double deriv1(double m) const override;
    double deriv2(double m) const override;
    bool extends_at_zero() const override;
    bool extends_at_infinity() const override;
    bool is_zero() const override;
    const std::vector<CoeffTerm>* terms() const override { return &terms_; }
    bool power_range(double& p_min, double& p_max) const override;

  private:
    std::vector<CoeffTerm> terms_;
};

enum class Preset {
    reciprocal,        // C1 = 1/m,   C2 = 0
    fisher_rao,        // C1 = 1,     C2 = 0
    extended,          // C1 = 1,     C2 = 1
    reciprocal_sq,     // C1 = 1/m^2, C2 = 0
    sphere_completion, // C1 = sin^2(m-1)/(4m), C2 = 1 - sin^2(m-1)/(4m^2)
    cone,              // C1 = K^2,   C2 = (1-K^2)/m
    custom,
};

std::string preset_name(Preset p);
Preset preset_from_name(const std::string& name);

/// Open interval in arc-length coordinates restricting where the warp
/// function a(s) stays positive (sphere-type presets).
struct ArcBand {
    double lo;
    double hi;
};

/// The metric coefficient pair (C1, C2) with analytic derivatives.
/// Evaluations require m > 0; C1 must stay positive (degeneracy error
/// otherwise), and a declared seam (sphere completions) raises a
/// degeneracy error when |seam measure| < 1e-12.
class CoefficientSpec {
  public:
    CoefficientSpec(CoeffFnPtr c1, CoeffFnPtr c2, Preset kind = Preset::custom);

    double c1(double m) const;
    double c1_prime(double m) const;
    double c1_second(double m) const;
    double c2(double m) const;
    double c2_prime(double m) const;
    double c2_second(double m) const;

    Preset kind() const { return kind_; }
    double cone_k() const { return cone_k_; }
    const std::optional<ArcBand>& arc_band() const { return band_; }
    bool flagged_degenerate() const { return static_cast<bool>(seam_measure_); }

    const CoefficientFunction& c1_fn() const { return *c1_; }
    const CoefficientFunction& c2_fn() const { return *c2_; }

    CoefficientSpec& set_band(ArcBand band) { band_ = band; return *this; }
    CoefficientSpec& set_seam(std::function<double(double)> measure) {
        seam_measure_ = std::move(measure);
        return *this;
    }
    CoefficientSpec& set_cone_k(double k) { cone_k_ = k; return *this; }
    /// Cancellation-free form of h(m) = C2(m) m + C1(m) (the radial metric
    /// coefficient is g2 = 4 h(r^2)); set automatically for term sums.
    CoefficientSpec& set_combined_radial(CoeffFnPtr h) {
        h_fn_ = std::move(h);
        return *this;
    }
    const CoefficientFunction* combined_radial() const { return h_fn_.get(); }

  private:
    void check_mass(double m) const;
    CoeffFnPtr c1_;
    CoeffFnPtr c2_;
    CoeffFnPtr h_fn_;
    Preset kind_;
    std::optional<ArcBand> band_;
    std::function<double(double)> seam_measure_;
    double cone_k_ = 0.0;
};

CoefficientSpec make_preset(Preset preset, double cone_k = 0.0);
CoefficientSpec make_preset(const std::string& name, double cone_k = 0.0);

struct PositiveDefiniteSample {
    double m;
    double c1;
    double c2;
    double bound;  // -C1(m)/m
    bool ok;       // C1 > 0 and C2 > bound
};

struct PositiveDefiniteReport {
    std::vector<PositiveDefiniteSample> samples;
    bool all_ok = true;
};

/// Checks C1(m) > 0 and C2(m) > -C1(m)/m on the given mass samples.
PositiveDefiniteReport validate_positive_definite(const CoefficientSpec& spec,
                                                  const std::vector<double>& m_samples);

/// Radial metric coefficients g1(r) = 4 C1(r^2) r^2 and
/// g2(r) = 4 (C2(r^2) r^2 + C1(r^2)), with analytic derivatives.
/// Public evaluations are guarded to r in [1e-8, 1e8].
class RadialFunctions {
  public:
    explicit RadialFunctions(CoefficientSpec spec);

    double g1(double r) const;
    double g1_prime(double r) const;
    double g1_second(double r) const;
    double g2(double r) const;
    double g2_prime(double r) const;
    double g2_second(double r) const;

    /// Tail evaluation for improper-limit quadrature; skips the r-guard.
    double g2_unguarded(double r) const;

    const CoefficientSpec& spec() const { return spec_; }

    static constexpr double kRMin = 1e-8;
    static constexpr double kRMax = 1e8;

  private:
    void check_domain(double r) const;
    CoefficientSpec spec_;
};

}  // namespace densgeo
