#pragma once

#include <optional>
#include <vector>

#include "densgeo/errors.hpp"
#include "densgeo/coeffs.hpp"
#include "densgeo/grid.hpp"
#include "densgeo/metric.hpp"
#include "densgeo/profile.hpp"
#include "densgeo/transforms.hpp"

namespace densgeo {

/// Launch data for the initial-value problem: base point (r0, phi0),
/// radial velocity r_t0, and initial sphere velocity psi0 with
/// <phi0, psi0> = 0 within 1e-10.
struct GeodesicInitial {
    PolarPoint p0;
    double r_t0;
    ScalarField psi0;
};

/// Reduced geodesic state: the sphere part is a great circle through
/// (phi0, psi_hat0) traversed by the angle theta.
struct ReducedState {
    double s;
    double s_t;
    double theta;
    double theta_t;
};

struct PathSample {
    double t;
    double r;      // NaN for paths on direct (coefficient-free) profiles
    double r_t;
    double s;
    double s_t;
    double theta;
    double theta_t;
    double a0_drift;  // |A0(t) - A0(0)| relative, for CSV export
};

struct InvariantDrift {
    double a0 = 0.0;
    double energy = 0.0;
    double first_integral = 0.0;
};

/// Sampled geodesic. The full path on the sphere is reconstructed from the
/// reduced state as phi(t) = cos(theta) phi0 + sin(theta) psi_hat0.
struct GeodesicPath {
    std::vector<PathSample> samples;
    double a0 = 0.0;  // conserved g1(r)||phi_t|| = a(s) theta_t at launch
    std::optional<SpherePoint> phi0;
    std::optional<ScalarField> psi_hat0;
    InvariantDrift drift;

    int size() const { return static_cast<int>(samples.size()); }
    const PathSample& back() const { return samples.back(); }
    ReducedState state(int k) const {
        const PathSample& p = samples[static_cast<size_t>(k)];
        return ReducedState{p.s, p.s_t, p.theta, p.theta_t};
    }
    ScalarField reconstruct_phi(int k) const;
    ScalarField reconstruct_field(int k) const;  // r(t) phi(t)
};

/// Geodesic left the coordinate domain in finite time (incompleteness is
/// observable); carries the integrated partial path and the exit estimate.
struct BoundaryHitError : Error {
    BoundaryHitError(const std::string& msg, GeodesicPath partial, double t_exit)
        : Error(msg), partial_path(std::move(partial)), exit_time(t_exit) {}
    GeodesicPath partial_path;
    double exit_time;
};

/// No connecting geodesic found within the iteration budget; carries the
/// best candidate seen (possible for incomplete metrics).
struct ConnectFailure : Error {
    ConnectFailure(const std::string& msg, GeodesicPath best, double miss)
        : Error(msg), best_path(std::move(best)), best_miss(miss) {}
    GeodesicPath best_path;
    double best_miss;
};

/// Integrates the reduced system (d):
///   r_tt = (A0^2/2) g1'/(g1^2 g2) - (1/2) d/dt(log g2) r_t
///   theta_tt = -d/dt(log g1) theta_t        (theta = ||psi0|| alpha)
/// with classical fixed-step RK4, in (r, theta) by default and in
/// (s, theta) when |g2'/g2| > 1e3 or the spec carries an arc band.
GeodesicPath shoot(const GeodesicInitial& init, const CoefficientSpec& spec,
                   double t_end, int n_steps);

/// Same dynamics in arc-length form: s_tt = (A0^2/2) a'(s)/a(s)^2 with
/// A0 = a(s0) theta_t0.
GeodesicPath shoot_arc(double s0, double s_t0, double theta_t0,
                       const ArcProfile& profile, double t_end, int n_steps);

/// Exact solutions for the presets that admit them:
/// reciprocal: r(t) = r0 exp((r_t0/r0) t), alpha(t) = t;
/// fisher_rao: straight line f0 + t v pushed through polar coordinates.
PathSample closed_form(Preset preset, const GeodesicInitial& init, double t);

struct ConnectOptions {
    int n_starts = 32;
    int iter_budget = 200;   // refinement shoots per bracket
    double h_target = 2e-3;  // RK4 step for the shooting fan
    int record_samples = 512;
};

struct ConnectResult {
    GeodesicPath path;
    double distance;
    double endpoint_mismatch;  // |s_hit - s1| of the accepted candidate
    int iterations;
    int starts_used;
};

/// Boundary-value problem: reduces to the plane spanned by phi0, phi1
/// (totally geodesic) and shoots on the initial direction angle, with
/// bracketing over a direction fan plus secant refinement. Returns the
/// shortest solution found.
ConnectResult connect(const PolarPoint& p0, const PolarPoint& p1,
                      const CoefficientSpec& spec, double tol,
                      const ConnectOptions& opts = {});

/// Max norm of the covariant acceleration along the sampled path, by
/// finite differences of the reduced state in the Levi-Civita formula:
///   D_t c' = (s_tt - (a'/2) theta_t^2) d_s + (theta_tt + (a'/a) s_t theta_t) e_theta.
double levi_civita_residual(const GeodesicPath& path, const ArcProfile& profile);

/// Length of the comparison path: radial segment at phi0 followed by the
/// sphere arc at s1, both by direct quadrature of the speed.
double two_segment_length(const ArcProfile& profile, double s0, double s1,
                          double theta1, double quad_tol = 1e-10);

/// Deterministic unit tangent orthogonal to phi0 (first coordinate unit
/// field projected and normalized; falls back to the second).
ScalarField orthonormal_direction(const SpherePoint& phi0);

}  // namespace densgeo
