#include "densgeo/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "densgeo/errors.hpp"

namespace densgeo {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kStiffSwitch = 1e3;
const double kNan = std::numeric_limits<double>::quiet_NaN();
const double kInf = std::numeric_limits<double>::infinity();

using State4 = std::array<double, 4>;  // {x, x_t, theta, theta_t}

State4 rhs_radial(const RadialFunctions& rf, double a0, const State4& y) {
    const double r = y[0];
    const double g1 = rf.g1(r);
    const double g2 = rf.g2(r);
    const double g1p = rf.g1_prime(r);
    const double g2p = rf.g2_prime(r);
    return State4{y[1],
                  0.5 * a0 * a0 * g1p / (g1 * g1 * g2) - 0.5 * (g2p / g2) * y[1] * y[1],
                  y[3],
                  -(g1p / g1) * y[1] * y[3]};
}

State4 rhs_arc(const ArcProfile& prof, double a0, const State4& y) {
    const auto v = prof.eval(y[0]);
    return State4{y[1],
                  0.5 * a0 * a0 * v.a1 / (v.a * v.a),
                  y[3],
                  -(v.a1 / v.a) * y[1] * y[3]};
}

template <typename Rhs>
State4 rk4_step(const Rhs& f, const State4& y, double h) {
    const State4 k1 = f(y);
    State4 tmp;
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const State4 k2 = f(tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const State4 k3 = f(tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * k3[i];
    const State4 k4 = f(tmp);
    State4 out;
    for (int i = 0; i < 4; ++i) {
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

// Earliest tau in (0, 1.5 h] at which x + x_t tau + (x_tt/2) tau^2 crosses
// one of the finite bounds; h when nothing crosses (conservative).
double exit_time_estimate(double x, double x_t, double x_tt, double lo, double hi, double h) {
    double best = h;
    bool found = false;
    for (double bound : {lo, hi}) {
        if (!std::isfinite(bound)) continue;
        const double a = 0.5 * x_tt;
        const double b = x_t;
        const double c = x - bound;
        if (std::abs(a) < 1e-300) {
            if (b != 0.0) {
                const double tau = -c / b;
                if (tau > 0.0 && tau <= 1.5 * h && (!found || tau < best)) {
                    best = tau;
                    found = true;
                }
            }
            continue;
        }
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        for (double tau : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
            if (tau > 0.0 && tau <= 1.5 * h && (!found || tau < best)) {
                best = tau;
                found = true;
            }
        }
    }
    return best;
}

// Shared reduced-system integrator. Keeps the state in (r, theta) unless the
// spec is band-restricted or the step is stiff, in which case the step runs
// in (s, theta) coordinates.
class ReducedIntegrator {
  public:
    ReducedIntegrator(const RadialFunctions& rf, const CoefficientArcProfile& prof, double a0)
        : rf_(&rf), prof_(&prof), a0_(a0),
          banded_(rf.spec().arc_band().has_value()) {}

    // Arc-only mode (shoot_arc, possibly on a direct profile).
    ReducedIntegrator(const ArcProfile& prof, double a0)
        : rf_(nullptr), prof_(&prof), a0_(a0), banded_(true), arc_only_(true) {}

    bool arc_state() const { return arc_only_ || banded_; }

    // One RK4 step of size h from y (in the resident representation).
    // Throws DomainError and relatives when the state leaves the chart.
    State4 step(const State4& y, double h) const {
        if (arc_state()) {
            return rk4_step([this](const State4& z) { return rhs_arc(*prof_, a0_, z); }, y, h);
        }
        const double stiff = std::abs(rf_->g2_prime(y[0]) / rf_->g2(y[0]));
        if (stiff <= kStiffSwitch) {
            return rk4_step([this](const State4& z) { return rhs_radial(*rf_, a0_, z); }, y, h);
        }
        // Arc coordinates are better conditioned near singular ends.
        State4 ys = to_arc_state(y);
        ys = rk4_step([this](const State4& z) { return rhs_arc(*prof_, a0_, z); }, ys, h);
        return to_radial_state(ys);
    }

    State4 derivative(const State4& y) const {
        return arc_state() ? rhs_arc(*prof_, a0_, y) : rhs_radial(*rf_, a0_, y);
    }

    State4 to_arc_state(const State4& y) const {
        const auto* cp = static_cast<const CoefficientArcProfile*>(prof_);
        return State4{cp->W(y[0]), std::sqrt(rf_->g2(y[0])) * y[1], y[2], y[3]};
    }

    State4 to_radial_state(const State4& y) const {
        const auto* cp = static_cast<const CoefficientArcProfile*>(prof_);
        const double r = cp->W_inv(y[0]);
        return State4{r, y[1] / std::sqrt(rf_->g2(r)), y[2], y[3]};
    }

    // Bounds of the resident coordinate.
    double x_lo() const {
        return arc_state() ? prof_->s_min() : RadialFunctions::kRMin;
    }
    double x_hi() const {
        return arc_state() ? prof_->s_max() : RadialFunctions::kRMax;
    }

    bool in_domain(const State4& y) const {
        for (double v : y) {
            if (!std::isfinite(v)) return false;
        }
        return y[0] > x_lo() && y[0] < x_hi();
    }

    // Fills a PathSample from the resident state (r <-> s conversions).
    PathSample sample(double t, const State4& y) const {
        PathSample p;
        p.t = t;
        p.theta = y[2];
        p.theta_t = y[3];
        if (arc_state()) {
            p.s = y[0];
            p.s_t = y[1];
            if (arc_only_) {
                const auto* cp = dynamic_cast<const CoefficientArcProfile*>(prof_);
                if (cp != nullptr && y[0] > cp->w_minus() && y[0] < cp->w_plus()) {
                    p.r = cp->W_inv(y[0]);
                    p.r_t = y[1] / std::sqrt(cp->radials().g2(p.r));
                } else {
                    p.r = kNan;
                    p.r_t = kNan;
                }
            } else {
                const State4 yr = to_radial_state(y);
                p.r = yr[0];
                p.r_t = yr[1];
            }
        } else {
            p.r = y[0];
            p.r_t = y[1];
            const auto* cp = static_cast<const CoefficientArcProfile*>(prof_);
            p.s = cp->W(y[0]);
            p.s_t = std::sqrt(rf_->g2(y[0])) * y[1];
        }
        p.a0_drift = 0.0;
        return p;
    }

    double warp_at(const PathSample& p) const {
        if (!arc_only_) return rf_->g1(p.r);
        return prof_->a(p.s);
    }

  private:
    const RadialFunctions* rf_;
    const ArcProfile* prof_;
    double a0_;
    bool banded_ = false;
    bool arc_only_ = false;
};

void finalize_drift(GeodesicPath& path, const ReducedIntegrator& integ) {
    if (path.samples.empty()) return;
    const double tiny = 1e-30;
    double a0_ref = 0.0, e_ref = 0.0, fi_ref = 0.0;
    double a0_max = 0.0, e_max = 0.0, fi_max = 0.0;
    for (size_t k = 0; k < path.samples.size(); ++k) {
        PathSample& p = path.samples[k];
        const double a = integ.warp_at(p);
        const double a0_meas = a * p.theta_t;
        const double energy = 0.5 * (a * p.theta_t * p.theta_t + p.s_t * p.s_t);
        const double first = p.s_t * p.s_t + path.a0 * path.a0 / a;
        if (k == 0) {
            a0_ref = a0_meas;
            e_ref = energy;
            fi_ref = first;
        }
        const double a0_drift = std::abs(a0_meas - a0_ref) / std::fmax(std::abs(a0_ref), tiny);
        p.a0_drift = a0_drift;
        a0_max = std::fmax(a0_max, a0_drift);
        e_max = std::fmax(e_max, std::abs(energy - e_ref) / std::fmax(std::abs(e_ref), tiny));
        fi_max = std::fmax(fi_max, std::abs(first - fi_ref) / std::fmax(std::abs(fi_ref), tiny));
    }
    path.drift = InvariantDrift{a0_max, e_max, fi_max};
}

// Integration loop shared by shoot and shoot_arc: n fixed steps, boundary
// hits reported with an exit-time estimate from the last interior state.
GeodesicPath integrate_path(const ReducedIntegrator& integ, State4 y, double t_end,
                            int n_steps, double a0, std::optional<SpherePoint> phi0,
                            std::optional<ScalarField> psi_hat0) {
    GeodesicPath path;
    path.a0 = a0;
    path.phi0 = std::move(phi0);
    path.psi_hat0 = std::move(psi_hat0);
    path.samples.reserve(static_cast<size_t>(n_steps) + 1);
    path.samples.push_back(integ.sample(0.0, y));

    const double h = t_end / n_steps;
    for (int k = 0; k < n_steps; ++k) {
        const double t = h * k;
        bool exited = false;
        State4 next{};
        try {
            next = integ.step(y, h);
            exited = !integ.in_domain(next);
        } catch (const DomainError&) {
            exited = true;
        }
        if (exited) {
            const State4 d = integ.derivative(y);
            const double tau =
                exit_time_estimate(y[0], y[1], d[1], integ.x_lo(), integ.x_hi(), h);
            finalize_drift(path, integ);
            throw BoundaryHitError("geodesic left the coordinate domain (incomplete "
                                   "direction reached in finite time)",
                                   std::move(path), t + tau);
        }
        y = next;
        path.samples.push_back(integ.sample(t + h, y));
    }
    finalize_drift(path, integ);
    return path;
}

}  // namespace

ScalarField GeodesicPath::reconstruct_phi(int k) const {
    if (!phi0 || !psi_hat0) throw DomainError("path carries no sphere frame");
    const PathSample& p = samples[static_cast<size_t>(k)];
    return std::cos(p.theta) * phi0->field() + std::sin(p.theta) * (*psi_hat0);
}

ScalarField GeodesicPath::reconstruct_field(int k) const {
    const PathSample& p = samples[static_cast<size_t>(k)];
    if (!std::isfinite(p.r)) throw DomainError("path has no radial representation");
    return p.r * reconstruct_phi(k);
}

ScalarField orthonormal_direction(const SpherePoint& phi0) {
    const GridPtr& grid = phi0.grid();
    for (int idx = 0; idx < std::min(grid->size(), 2); ++idx) {
        std::vector<double> e(static_cast<size_t>(grid->size()), 0.0);
        e[static_cast<size_t>(idx)] = 1.0;
        ScalarField unit(grid, std::move(e));
        const ScalarField v = unit - l2_inner(unit, phi0.field()) * phi0.field();
        const double n = l2_norm(v);
        if (n >= 1e-8) return (1.0 / n) * v;
    }
    throw DomainError("could not build a direction orthogonal to phi0");
}

GeodesicPath shoot(const GeodesicInitial& init, const CoefficientSpec& spec,
                   double t_end, int n_steps) {
    if (n_steps < 8) throw DomainError("shoot needs n_steps >= 8");
    if (!(t_end > 0.0)) throw DomainError("shoot needs t_end > 0");
    require_same_grid(init.p0.phi.grid(), init.psi0.grid);
    const double tangency = l2_inner(init.p0.phi.field(), init.psi0);
    if (std::abs(tangency) > 1e-10) {
        throw ContractError("psi0 must be tangent to the sphere at phi0");
    }

    const RadialFunctions rf(spec);
    const CoefficientArcProfile prof(rf, kQuadTol);

    const double r0 = init.p0.r;
    const double nu = l2_norm(init.psi0);
    const double a0 = rf.g1(r0) * nu;
    std::optional<ScalarField> psi_hat;
    if (nu > 0.0) {
        psi_hat = (1.0 / nu) * init.psi0;
    } else {
        psi_hat = orthonormal_direction(init.p0.phi);
    }

    ReducedIntegrator integ(rf, prof, a0);
    State4 y{r0, init.r_t0, 0.0, nu};
    if (integ.arc_state()) y = integ.to_arc_state(y);
    if (!integ.in_domain(y)) throw DomainError("initial point outside the chart domain");
    return integrate_path(integ, y, t_end, n_steps, a0, init.p0.phi, std::move(psi_hat));
}

GeodesicPath shoot_arc(double s0, double s_t0, double theta_t0,
                       const ArcProfile& profile, double t_end, int n_steps) {
    if (n_steps < 8) throw DomainError("shoot_arc needs n_steps >= 8");
    if (!(t_end > 0.0)) throw DomainError("shoot_arc needs t_end > 0");
    if (!profile.contains(s0)) throw DomainError("s0 outside the profile domain");
    const double a0 = profile.a(s0) * theta_t0;
    ReducedIntegrator integ(profile, a0);
    State4 y{s0, s_t0, 0.0, theta_t0};
    return integrate_path(integ, y, t_end, n_steps, a0, std::nullopt, std::nullopt);
}

PathSample closed_form(Preset preset, const GeodesicInitial& init, double t) {
    const double r0 = init.p0.r;
    const double nu = l2_norm(init.psi0);
    PathSample p;
    p.t = t;
    p.a0_drift = 0.0;
    switch (preset) {
        case Preset::reciprocal: {
            const double c = init.r_t0 / r0;
            p.r = r0 * std::exp(c * t);
            p.r_t = c * p.r;
            p.theta = nu * t;
            p.theta_t = nu;
            p.s = 2.0 * std::log(p.r);
            p.s_t = 2.0 * c;
            return p;
        }
        case Preset::fisher_rao: {
            // Straight line f0 + t v in the flat pullback, in the frame
            // {phi0, psi_hat0}: x along phi0, y along psi_hat0.
            const double x = r0 + t * init.r_t0;
            const double y = t * r0 * nu;
            p.r = std::hypot(x, y);
            p.r_t = (x * init.r_t0 + y * r0 * nu) / p.r;
            p.theta = std::atan2(y, x);
            p.theta_t = (r0 * nu * x - init.r_t0 * y) / (p.r * p.r);
            p.s = 2.0 * (p.r - 1.0);
            p.s_t = 2.0 * p.r_t;
            return p;
        }
        default:
            throw DomainError("closed_form supports the reciprocal and fisher_rao presets");
    }
}

double two_segment_length(const ArcProfile& profile, double s0, double s1,
                          double theta1, double quad_tol) {
    const double radial = std::abs(
        integrate_smooth([&](double) { return s1 >= s0 ? 1.0 : -1.0; }, s0, s1, quad_tol));
    const double arc =
        theta1 == 0.0
            ? 0.0
            : integrate_smooth([&](double) { return std::sqrt(profile.a(s1)); }, 0.0,
                               theta1, quad_tol);
    return radial + arc;
}

double levi_civita_residual(const GeodesicPath& path, const ArcProfile& profile) {
    const int n = path.size();
    if (n < 16) throw DomainError("levi_civita_residual needs at least 16 samples");
    double worst = 0.0;
    for (int k = 1; k + 1 < n; ++k) {
        const PathSample& lo = path.samples[static_cast<size_t>(k - 1)];
        const PathSample& mid = path.samples[static_cast<size_t>(k)];
        const PathSample& hi = path.samples[static_cast<size_t>(k + 1)];
        const double dt2 = hi.t - lo.t;
        const double s_tt = (hi.s_t - lo.s_t) / dt2;
        const double th_tt = (hi.theta_t - lo.theta_t) / dt2;
        const auto v = profile.eval(mid.s);
        const double rad = s_tt - 0.5 * v.a1 * mid.theta_t * mid.theta_t;
        const double ang = th_tt + (v.a1 / v.a) * mid.s_t * mid.theta_t;
        worst = std::fmax(worst, std::sqrt(rad * rad + v.a * ang * ang));
    }
    return worst;
}

namespace {

struct CrossResult {
    bool crossed = false;
    bool boundary = false;
    double t_hit = 0.0;
    double s_hit = 0.0;
    double miss = kInf;  // distance-scale gap when not crossed
    State4 end_state{};
};

// Shoots a unit-speed geodesic at direction angle beta from (r0, theta=0)
// until theta crosses theta1 (Newton-refined inside the step), the state
// leaves the domain, or t exceeds t_max.
class PlaneShooter {
  public:
    PlaneShooter(const RadialFunctions& rf, const CoefficientArcProfile& prof,
                 double r0, double s1, double theta1, double t_max, double h_target)
        : rf_(rf), prof_(prof), r0_(r0), s1_(s1), theta1_(theta1), t_max_(t_max) {
        n_steps_ = static_cast<int>(std::clamp(std::ceil(t_max / h_target), 64.0, 200000.0));
        h_ = t_max / n_steps_;
    }

    CrossResult shoot_angle(double beta) const {
        const double g1 = rf_.g1(r0_);
        const double g2 = rf_.g2(r0_);
        const double theta_t0 = std::sin(beta) / std::sqrt(g1);
        const double a0 = g1 * theta_t0;
        ReducedIntegrator integ(rf_, prof_, a0);
        State4 y{r0_, std::cos(beta) / std::sqrt(g2), 0.0, theta_t0};
        if (integ.arc_state()) y = integ.to_arc_state(y);

        CrossResult res;
        for (int k = 0; k < n_steps_; ++k) {
            State4 next{};
            try {
                next = integ.step(y, h_);
                if (!integ.in_domain(next)) throw DomainError("out of domain");
            } catch (const DomainError&) {
                res.boundary = true;
                res.miss = gap(integ, y);
                res.end_state = y;
                return res;
            }
            if (next[2] >= theta1_) {
                return refine_crossing(integ, y, h_ * k);
            }
            y = next;
        }
        res.miss = gap(integ, y);
        res.end_state = y;
        return res;
    }

    int steps() const { return n_steps_; }

  private:
    double gap(const ReducedIntegrator& integ, const State4& y) const {
        const double s = integ.arc_state() ? y[0] : prof_.W(y[0]);
        const double ds = s - s1_;
        const double dth = std::sqrt(prof_.a(s1_)) * (y[2] - theta1_);
        return std::hypot(ds, dth);
    }

    CrossResult refine_crossing(const ReducedIntegrator& integ, const State4& y_prev,
                                double t_prev) const {
        // Newton in the substep length tau: theta is strictly increasing.
        double tau = h_;
        if (y_prev[3] > 0.0) tau = std::clamp((theta1_ - y_prev[2]) / y_prev[3], 0.0, h_);
        State4 y = y_prev;
        for (int it = 0; it < 8; ++it) {
            y = tau > 0.0 ? integ.step(y_prev, tau) : y_prev;
            const double f = y[2] - theta1_;
            if (std::abs(f) < 1e-14) break;
            const double dth = y[3] > 1e-300 ? y[3] : 1e-300;
            tau = std::clamp(tau - f / dth, 0.0, h_);
        }
        CrossResult res;
        res.crossed = true;
        res.t_hit = t_prev + tau;
        res.s_hit = integ.arc_state() ? y[0] : prof_.W(y[0]);
        res.end_state = y;
        res.miss = std::abs(res.s_hit - s1_);
        return res;
    }

    const RadialFunctions& rf_;
    const CoefficientArcProfile& prof_;
    double r0_, s1_, theta1_, t_max_, h_;
    int n_steps_ = 0;
};

GeodesicPath radial_segment_path(const CoefficientArcProfile& prof, double s0, double s1,
                                 const SpherePoint& phi0, const ScalarField& psi_hat,
                                 int n_samples) {
    GeodesicPath path;
    path.a0 = 0.0;
    path.phi0 = phi0;
    path.psi_hat0 = psi_hat;
    const double len = std::abs(s1 - s0);
    const double dir = s1 >= s0 ? 1.0 : -1.0;
    const int n = std::max(2, n_samples);
    path.samples.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double t = len * k / n;
        PathSample p;
        p.t = t;
        p.s = s0 + dir * t;
        p.s_t = dir;
        p.theta = 0.0;
        p.theta_t = 0.0;
        p.r = prof.W_inv(p.s);
        p.r_t = dir / std::sqrt(prof.radials().g2(p.r));
        p.a0_drift = 0.0;
        path.samples.push_back(p);
    }
    return path;
}

}  // namespace

ConnectResult connect(const PolarPoint& p0, const PolarPoint& p1,
                      const CoefficientSpec& spec, double tol, const ConnectOptions& opts) {
    require_same_grid(p0.phi.grid(), p1.phi.grid());
    if (!(tol > 0.0)) throw DomainError("connect needs tol > 0");

    const RadialFunctions rf(spec);
    const CoefficientArcProfile prof(rf, kQuadTol);
    const double s0 = prof.W(p0.r);
    const double s1 = prof.W(p1.r);
    const double theta1 = sphere_distance(p0.phi, p1.phi);

    // Degenerate sphere part: the radial line {phi0} x R is a minimal geodesic.
    if (theta1 < 1e-12) {
        const ScalarField psi_hat = orthonormal_direction(p0.phi);
        ConnectResult res{radial_segment_path(prof, s0, s1, p0.phi, psi_hat,
                                              opts.record_samples),
                          std::abs(s1 - s0), 0.0, 0, 0};
        return res;
    }

    // Great-circle frame through both endpoints; antipodal pairs get the
    // deterministic auxiliary direction.
    ScalarField psi_hat = orthonormal_direction(p0.phi);
    if (theta1 < 3.14159265358979323846 - 1e-12) {
        const ScalarField raw =
            p1.phi.field() - std::cos(theta1) * p0.phi.field();
        const double n = l2_norm(raw);
        if (n >= 1e-12) psi_hat = (1.0 / n) * raw;
    }

    const double l_cmp = two_segment_length(prof, s0, s1, theta1, kQuadTol);
    const double t_max = 1.25 * l_cmp + 0.25;
    PlaneShooter shooter(rf, prof, p0.r, s1, theta1, t_max, opts.h_target);

    const double pi = 3.14159265358979323846;
    std::vector<double> betas(static_cast<size_t>(opts.n_starts));
    std::vector<CrossResult> fan(static_cast<size_t>(opts.n_starts));
    for (int j = 0; j < opts.n_starts; ++j) {
        betas[static_cast<size_t>(j)] = pi * (j + 0.5) / opts.n_starts;
        fan[static_cast<size_t>(j)] = shooter.shoot_angle(betas[static_cast<size_t>(j)]);
    }

    struct Candidate {
        double beta;
        double length;
        double mismatch;
    };
    std::vector<Candidate> found;
    int iterations = 0;

    auto consider = [&](double beta, const CrossResult& cr) {
        if (cr.crossed && std::abs(cr.s_hit - s1) <= tol) {
            found.push_back({beta, cr.t_hit, std::abs(cr.s_hit - s1)});
        }
    };

    for (int j = 0; j < opts.n_starts; ++j) consider(betas[static_cast<size_t>(j)], fan[static_cast<size_t>(j)]);

    for (int j = 0; j + 1 < opts.n_starts; ++j) {
        const CrossResult& a = fan[static_cast<size_t>(j)];
        const CrossResult& b = fan[static_cast<size_t>(j + 1)];
        if (!a.crossed || !b.crossed) continue;
        double fa = a.s_hit - s1;
        double fb = b.s_hit - s1;
        if (fa == 0.0 || fb == 0.0 || fa * fb > 0.0) continue;
        double ba = betas[static_cast<size_t>(j)];
        double bb = betas[static_cast<size_t>(j + 1)];
        // Secant with a maintained bracket (bisection fallback).
        for (int it = 0; it < opts.iter_budget; ++it) {
            double bm = bb - fb * (bb - ba) / (fb - fa);
            if (!(bm > ba && bm < bb)) bm = 0.5 * (ba + bb);
            const CrossResult cm = shooter.shoot_angle(bm);
            ++iterations;
            if (!cm.crossed) {  // thin invalid sliver inside the bracket
                break;
            }
            const double fm = cm.s_hit - s1;
            if (std::abs(fm) <= tol) {
                found.push_back({bm, cm.t_hit, std::abs(fm)});
                break;
            }
            if (fa * fm < 0.0) {
                bb = bm;
                fb = fm;
            } else {
                ba = bm;
                fa = fm;
            }
        }
    }

    if (found.empty()) {
        // Best effort diagnostic: re-shoot the fan angle that came closest.
        int best_j = 0;
        double best_miss = kInf;
        for (int j = 0; j < opts.n_starts; ++j) {
            if (fan[static_cast<size_t>(j)].miss < best_miss) {
                best_miss = fan[static_cast<size_t>(j)].miss;
                best_j = j;
            }
        }
        GeodesicPath best;
        try {
            const double g1 = rf.g1(p0.r);
            const double g2 = rf.g2(p0.r);
            const double beta = betas[static_cast<size_t>(best_j)];
            GeodesicInitial gi{PolarPoint{p0.r, p0.phi}, std::cos(beta) / std::sqrt(g2),
                               (std::sin(beta) / std::sqrt(g1)) * psi_hat};
            best = shoot(gi, spec, t_max, std::max(64, shooter.steps()));
        } catch (const BoundaryHitError& e) {
            best = e.partial_path;
        }
        throw ConnectFailure("no connecting geodesic found within the iteration budget",
                             std::move(best), best_miss);
    }

    const Candidate* winner = &found.front();
    for (const Candidate& c : found) {
        if (c.length < winner->length - 1e-15) winner = &c;
    }

    // Reconstruct the winning geodesic with uniform sampling up to t_hit.
    const double g1 = rf.g1(p0.r);
    const double g2 = rf.g2(p0.r);
    const double theta_t0 = std::sin(winner->beta) / std::sqrt(g1);
    const double a0 = g1 * theta_t0;
    ReducedIntegrator integ(rf, prof, a0);
    State4 y{p0.r, std::cos(winner->beta) / std::sqrt(g2), 0.0, theta_t0};
    if (integ.arc_state()) y = integ.to_arc_state(y);
    GeodesicPath path = integrate_path(integ, y, winner->length,
                                       std::max(2, opts.record_samples), a0, p0.phi,
                                       psi_hat);

    ConnectResult res{std::move(path), winner->length, winner->mismatch, iterations,
                      opts.n_starts};
    return res;
}

}  // namespace densgeo
