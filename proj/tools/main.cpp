#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "densgeo/commands.hpp"
#include "densgeo/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"densgeo: geodesics, curvature, and completeness of the invariant "
                 "metric family on discretized density spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    double cone_k = 0.0;
    std::string out_dir;
    int steps = 0;
    double tol = 0.0;
    bool svg = false;

    app.add_option("--config", config_path, "JSON run configuration")->capture_default_str();
    app.add_option("--preset", preset,
                   "coefficient preset (reciprocal, fisher_rao, extended, reciprocal_sq, "
                   "sphere_completion, cone)");
    app.add_option("--cone-k", cone_k, "cone opening parameter K (with --preset cone)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--steps", steps, "integration steps / sample count override");
    app.add_option("--tol", tol, "solver tolerance override");
    app.add_flag("--svg", svg, "also emit SVG figures");
    app.fallthrough();

    auto* shoot = app.add_subcommand("shoot", "integrate a fan of geodesics");
    auto* connect = app.add_subcommand("connect", "solve the two-point boundary problem");
    auto* report = app.add_subcommand("report", "completeness and curvature report");
    auto* profile = app.add_subcommand("profile", "surface-of-revolution generating curve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : densgeo::kExitConfig;
    }

    std::string command;
    if (shoot->parsed()) command = "shoot";
    if (connect->parsed()) command = "connect";
    if (report->parsed()) command = "report";
    if (profile->parsed()) command = "profile";

    try {
        densgeo::RunConfig cfg = [&]() {
            if (!config_path.empty()) return densgeo::RunConfig::from_file(config_path);
            if (!preset.empty()) return densgeo::RunConfig::from_preset_flag(preset, cone_k);
            throw densgeo::ConfigError("config: pass --config FILE or --preset NAME");
        }();

        if (!preset.empty() && !config_path.empty()) cfg.override_preset(preset, cone_k);
        if (!out_dir.empty()) cfg.override_out(out_dir);
        if (steps > 0) cfg.override_steps(steps);
        if (tol > 0.0) cfg.override_tol(tol);
        if (svg) cfg.override_svg(true);

        return densgeo::run_command(command, cfg);
    } catch (const densgeo::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return densgeo::kExitConfig;
    }
}
