#pragma once

#include <string>

#include <json.hpp>

#include "densgeo/coeffs.hpp"
#include "densgeo/errors.hpp"
#include "densgeo/grid.hpp"

namespace densgeo {

using Json = nlohmann::json;

struct ConfigError : Error {
    using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;

/// Run configuration: a single JSON document (key-value with nested
/// sections) plus flag overrides. parse() normalizes the document
/// (defaults filled into the sections that are present), so
/// parse(emit(c)) == c on the canonical form.
class RunConfig {
  public:
    static RunConfig parse(const Json& j);
    static RunConfig from_file(const std::string& path);
    static RunConfig from_preset_flag(const std::string& preset, double cone_k);

    Json emit() const { return root_; }

    CoefficientSpec spec() const;
    GridPtr grid() const;
    double quad_tol() const;
    std::string out_dir() const;
    bool svg() const;
    bool fields() const;

    bool has_section(const std::string& name) const { return root_.contains(name); }
    /// Command section with defaults applied; the section need not be
    /// present in the document.
    Json section(const std::string& name) const;

    void override_preset(const std::string& name, double cone_k);
    void override_out(const std::string& dir);
    void override_steps(int n);
    void override_tol(double tol);
    void override_svg(bool on);

  private:
    Json root_;
};

}  // namespace densgeo
