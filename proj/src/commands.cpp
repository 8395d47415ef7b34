#include "densgeo/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "densgeo/completeness.hpp"
#include "densgeo/curvature.hpp"
#include "densgeo/geodesics.hpp"
#include "densgeo/io.hpp"
#include "densgeo/metric.hpp"
#include "densgeo/profile.hpp"
#include "densgeo/transforms.hpp"

namespace densgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string ensure_out_dir(const RunConfig& cfg) {
    const std::string dir = cfg.out_dir();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir);
    return dir;
}

void write_config_snapshot(const RunConfig& cfg, const std::string& dir) {
    write_text_file(dir + "/config.json", cfg.emit().dump(2) + "\n");
}

SpherePoint base_sphere_point(const GridPtr& grid, const Json& section,
                              const std::string& key) {
    if (section.contains(key)) {
        const auto values = section[key].get<std::vector<double>>();
        return SpherePoint::normalize(ScalarField(grid, values));
    }
    return SpherePoint(ScalarField::constant(grid, 1.0));
}

ScalarField tangent_direction(const SpherePoint& phi0, const Json& section,
                              const std::string& key) {
    if (section.contains(key)) {
        const auto values = section[key].get<std::vector<double>>();
        ScalarField raw(phi0.grid(), values);
        const ScalarField proj = raw - l2_inner(phi0.field(), raw) * phi0.field();
        const double n = l2_norm(proj);
        if (n < 1e-10) {
            throw ConfigError("config: '" + key + "' is parallel to phi0");
        }
        return (1.0 / n) * proj;
    }
    return orthonormal_direction(phi0);
}

std::vector<std::vector<double>> path_rows(const GeodesicPath& path, bool with_fields) {
    std::vector<std::vector<double>> rows;
    rows.reserve(path.samples.size());
    for (int k = 0; k < path.size(); ++k) {
        const PathSample& p = path.samples[static_cast<size_t>(k)];
        std::vector<double> row{p.t, p.s, p.r, p.theta, p.s_t, p.theta_t, p.a0_drift};
        if (with_fields) {
            const ScalarField f = path.reconstruct_field(k);
            row.insert(row.end(), f.values.begin(), f.values.end());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> path_header(const GridPtr& grid, bool with_fields) {
    std::vector<std::string> header{"t", "s", "r", "theta", "s_t", "theta_t", "A0_drift"};
    if (with_fields) {
        for (int i = 0; i < grid->size(); ++i) header.push_back("f_" + std::to_string(i));
    }
    return header;
}

std::pair<double, double> sample_range(const ArcProfile& prof, const Json& section) {
    double lo, hi;
    const double dom_lo = prof.s_min();
    const double dom_hi = prof.s_max();
    if (section.contains("s_min") && section.contains("s_max")) {
        lo = section["s_min"].get<double>();
        hi = section["s_max"].get<double>();
        if (!(lo < hi)) throw ConfigError("config: s_min must be below s_max");
        return {lo, hi};
    }
    lo = std::isfinite(dom_lo) ? dom_lo : -3.0;
    hi = std::isfinite(dom_hi) ? dom_hi : 3.0;
    if (hi <= lo) {
        lo = dom_lo;
        hi = dom_hi;
    }
    const double pad = 0.04 * (hi - lo);
    if (std::isfinite(dom_lo)) lo += pad;
    if (std::isfinite(dom_hi)) hi -= pad;
    return {lo, hi};
}

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

int cmd_shoot(const RunConfig& cfg) {
    const CoefficientSpec spec = cfg.spec();
    const GridPtr grid = cfg.grid();
    const Json S = cfg.section("shoot");
    const std::string dir = ensure_out_dir(cfg);

    const double r0 = S["r0"].get<double>();
    const double psi_norm = S["psi_norm"].get<double>();
    const double t_end = S["t_end"].get<double>();
    const int steps = S["steps"].get<int>();

    const SpherePoint phi0 = base_sphere_point(grid, S, "phi0");
    const ScalarField psi_hat = tangent_direction(phi0, S, "psi0");

    std::vector<double> fan;
    if (S["r_t0_fan"].is_array() && !S["r_t0_fan"].empty()) {
        fan = S["r_t0_fan"].get<std::vector<double>>();
    } else {
        fan.push_back(S["r_t0"].get<double>());
    }

    std::vector<std::vector<double>> xy_rows;
    std::vector<Polyline> polylines;
    for (size_t i = 0; i < fan.size(); ++i) {
        GeodesicInitial init{PolarPoint{r0, phi0}, fan[i], psi_norm * psi_hat};
        const GeodesicPath path = shoot(init, spec, t_end, steps);

        char name[32];
        std::snprintf(name, sizeof(name), "geodesic_%02zu.csv", i);
        write_csv(dir + "/" + name, path_header(grid, cfg.fields()),
                  path_rows(path, cfg.fields()));

        Polyline line;
        for (const PathSample& p : path.samples) {
            const double x = p.r * std::cos(p.theta);
            const double y = p.r * std::sin(p.theta);
            xy_rows.push_back({static_cast<double>(i), p.t, x, y});
            line.points.emplace_back(x, y);
        }
        polylines.push_back(std::move(line));
    }

    write_csv(dir + "/fan_xy.csv", {"geodesic", "t", "x", "y"}, xy_rows);
    if (cfg.svg()) write_svg(dir + "/fan.svg", polylines);
    write_config_snapshot(cfg, dir);
    std::cout << "shoot: wrote " << fan.size() << " geodesic(s) to " << dir << "\n";
    return kExitOk;
}

int cmd_connect(const RunConfig& cfg) {
    const CoefficientSpec spec = cfg.spec();
    const GridPtr grid = cfg.grid();
    const Json C = cfg.section("connect");
    const std::string dir = ensure_out_dir(cfg);

    PolarPoint p0{1.0, SpherePoint(ScalarField::constant(grid, 1.0))};
    PolarPoint p1 = p0;
    if (C.contains("f0") || C.contains("f1")) {
        if (!C.contains("f0") || !C.contains("f1")) {
            throw ConfigError("config: connect needs both f0 and f1 when given as fields");
        }
        p0 = polar(ScalarField(grid, C["f0"].get<std::vector<double>>()));
        p1 = polar(ScalarField(grid, C["f1"].get<std::vector<double>>()));
    } else {
        const double theta1 = C["theta1"].get<double>();
        if (!(theta1 >= 0.0 && theta1 <= kPi)) {
            throw ConfigError("config: theta1 must lie in [0, pi]");
        }
        const SpherePoint phi0 = p0.phi;
        const ScalarField psi_hat = orthonormal_direction(phi0);
        p0.r = C["r0"].get<double>();
        const ScalarField f1 =
            std::cos(theta1) * phi0.field() + std::sin(theta1) * psi_hat;
        p1 = PolarPoint{C["r1"].get<double>(), SpherePoint::normalize(f1)};
    }

    ConnectOptions opts;
    opts.n_starts = C["starts"].get<int>();
    opts.record_samples = C["record_samples"].get<int>();
    const ConnectResult res = connect(p0, p1, spec, C["tol"].get<double>(), opts);

    write_csv(dir + "/path.csv", path_header(grid, cfg.fields()),
              path_rows(res.path, cfg.fields()));
    Json summary;
    summary["distance"] = res.distance;
    summary["iterations"] = res.iterations;
    summary["starts_used"] = res.starts_used;
    summary["endpoint_mismatch"] = res.endpoint_mismatch;
    summary["a0_drift"] = res.path.drift.a0;
    summary["energy_drift"] = res.path.drift.energy;
    summary["first_integral_drift"] = res.path.drift.first_integral;
    write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
    write_config_snapshot(cfg, dir);
    std::cout << "connect: distance " << fmt(res.distance) << ", summary in " << dir
              << "\n";
    return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
    const CoefficientSpec spec = cfg.spec();
    const Json R = cfg.section("report");
    const std::string dir = ensure_out_dir(cfg);

    const CompletenessReport rep = classify(spec, cfg.quad_tol());
    const CoefficientArcProfile prof = arc_profile(spec, cfg.quad_tol());

    std::ostringstream out;
    out << "densgeo report\n==============\n";
    out << "coefficients: " << cfg.emit()["coefficients"].dump() << "\n";

    const std::vector<double> masses{0.1, 0.2, 0.5, 1.0 + 1e-3, 2.0, 5.0, 10.0};
    const PositiveDefiniteReport pd = validate_positive_definite(spec, masses);
    out << "positive definite: " << (pd.all_ok ? "pass" : "FAIL") << " on "
        << masses.size() << " mass samples in [0.1, 10]\n";

    if (spec.kind() == Preset::cone) {
        const ConeSpec cone = cone_spec(spec.cone_k());
        out << "cone: K = " << fmt(spec.cone_k())
            << ", angle defect at the tip = " << fmt(cone.angle_defect) << "\n";
        if (cone.orbifold_order) {
            out << "cone: orbifold symmetry group Z/" << *cone.orbifold_order
                << "Z at the tip\n";
        }
    }

    out << "W_minus = " << fmt(rep.w_minus) << "\n";
    out << "W_plus  = " << fmt(rep.w_plus) << "\n";
    out << "complete: " << (rep.complete ? "yes" : "no") << "\n";
    out << "incomplete toward zero: " << (rep.incomplete_toward_zero ? "yes" : "no")
        << "\n";
    out << "incomplete toward infinity: "
        << (rep.incomplete_toward_infinity ? "yes" : "no") << "\n";
    out << "criterion cross-check: "
        << (rep.criterion_consistent ? "consistent" : "INCONSISTENT") << "\n";

    const auto end_line = [&](const char* label, const EndReport& e) {
        out << "completion at " << label << ": ";
        if (!e.w_finite) {
            out << "none needed (W diverges)\n";
        } else if (e.smooth_completion && e.pole) {
            out << "smooth pole (a vanishes quadratically, K = " << fmt(e.pole_order_k)
                << ")\n";
        } else if (e.smooth_completion) {
            out << "smooth 1-point completion (coefficients extend)\n";
        } else {
            out << "none (" << e.failing_condition << ")\n";
        }
    };
    end_line("lower end", rep.at_zero);
    end_line("upper end", rep.at_infinity);
    out << "completion hint: " << completion_hint_name(rep.hint) << "\n\n";

    const auto [lo, hi] = sample_range(prof, R);
    const int n = R["n_samples"].get<int>();
    out << "curvature table (" << n << " samples on [" << fmt(lo) << ", " << fmt(hi)
        << "])\n";
    out << "           s          a(s)         a'(s)    sec_sphere     sec_mixed  embeddable\n";
    int valid_count = 0;
    for (int i = 0; i < n; ++i) {
        const double s = lo + (hi - lo) * i / std::max(1, n - 1);
        const CurvaturePair c = sectional(prof, s);
        const auto v = prof.eval(s);
        const bool ok = validity_condition(prof, s);
        valid_count += ok ? 1 : 0;
        char row[160];
        std::snprintf(row, sizeof(row), "%12.6g  %12.6g  %12.6g  %12.6g  %12.6g  %s\n", s,
                      v.a, v.a1, c.sec_sphere, c.sec_mixed, ok ? "yes" : "no");
        out << row;
    }
    out << "embeddable (a'^2 < 4a): " << valid_count << "/" << n << " samples\n";

    write_text_file(dir + "/report.txt", out.str());
    write_config_snapshot(cfg, dir);
    std::cout << out.str();
    return kExitOk;
}

int cmd_profile(const RunConfig& cfg) {
    const CoefficientSpec spec = cfg.spec();
    const Json P = cfg.section("profile");
    const std::string dir = ensure_out_dir(cfg);

    const CoefficientArcProfile prof = arc_profile(spec, cfg.quad_tol());
    const auto [lo, hi] = sample_range(prof, P);
    const ProfileCurve curve = revolution_profile(prof, lo, hi, P["n_samples"].get<int>());

    std::vector<std::vector<double>> rows;
    rows.reserve(curve.s.size());
    for (size_t i = 0; i < curve.s.size(); ++i) {
        rows.push_back({curve.s[i], curve.c1[i], curve.c2[i],
                        static_cast<double>(curve.valid[i])});
    }
    write_csv(dir + "/profile.csv", {"s", "c1", "c2", "valid"}, rows);
    if (cfg.svg()) {
        Polyline line;
        for (size_t i = 0; i < curve.s.size(); ++i) {
            if (curve.valid[i]) line.points.emplace_back(curve.c1[i], curve.c2[i]);
        }
        write_svg(dir + "/profile.svg", {line});
    }
    write_config_snapshot(cfg, dir);
    std::cout << "profile: wrote " << curve.s.size() << " samples to " << dir << "\n";
    return kExitOk;
}

int run_command(const std::string& name, const RunConfig& cfg) noexcept {
    try {
        if (name == "shoot") return cmd_shoot(cfg);
        if (name == "connect") return cmd_connect(cfg);
        if (name == "report") return cmd_report(cfg);
        if (name == "profile") return cmd_profile(cfg);
        std::cerr << "unknown command: " << name << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const BoundaryHitError& e) {
        std::cerr << "solver: " << e.what() << " (exit time ~ " << e.exit_time << ")\n";
        return kExitSolver;
    } catch (const ConnectFailure& e) {
        std::cerr << "solver: " << e.what() << " (best miss " << e.best_miss << ")\n";
        return kExitSolver;
    } catch (const Error& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace densgeo
