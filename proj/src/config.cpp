#include "densgeo/config.hpp"

#include <cmath>
#include <fstream>

namespace densgeo {

namespace {

constexpr double kTwoPi = 6.283185307179586;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

double require_number(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) fail("missing numeric key '" + key + "'");
    return j[key].get<double>();
}

Json normalize_terms(const Json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
        fail("coefficient expression needs a 'terms' array");
    }
    Json out;
    out["terms"] = Json::array();
    for (const auto& t : j["terms"]) {
        if (!t.is_object()) fail("coefficient term must be an object");
        Json term;
        term["c"] = require_number(t, "c");
        term["p"] = require_number(t, "p");
        const bool has_k = t.contains("sin2_k");
        const bool has_m0 = t.contains("sin2_m0");
        if (has_k != has_m0) fail("sin2 terms need both sin2_k and sin2_m0");
        if (has_k) {
            term["sin2_k"] = require_number(t, "sin2_k");
            term["sin2_m0"] = require_number(t, "sin2_m0");
        }
        if (std::abs(term["p"].get<double>()) > 8.0) {
            fail("term exponents are limited to |p| <= 8");
        }
        out["terms"].push_back(term);
    }
    return out;
}

std::vector<CoeffTerm> terms_from_json(const Json& j) {
    std::vector<CoeffTerm> terms;
    for (const auto& t : j["terms"]) {
        CoeffTerm term;
        term.c = t["c"].get<double>();
        term.p = t["p"].get<double>();
        if (t.contains("sin2_k")) {
            term.has_sin2 = true;
            term.sin2_k = t["sin2_k"].get<double>();
            term.sin2_m0 = t["sin2_m0"].get<double>();
        }
        terms.push_back(term);
    }
    return terms;
}

Json normalize_coefficients(const Json& j) {
    if (!j.is_object()) fail("'coefficients' must be an object");
    Json out;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) fail("'preset' must be a string");
        const std::string name = j["preset"].get<std::string>();
        try {
            preset_from_name(name);
        } catch (const DomainError& e) {
            fail(e.what());
        }
        out["preset"] = name;
        if (name == "cone") {
            const double k = require_number(j, "k");
            if (!(k > 0.0)) fail("cone preset needs k > 0");
            out["k"] = k;
        }
        return out;
    }
    if (!j.contains("c1") || !j.contains("c2")) {
        fail("'coefficients' needs a 'preset' or both 'c1' and 'c2'");
    }
    out["c1"] = normalize_terms(j["c1"]);
    out["c2"] = normalize_terms(j["c2"]);
    if (j.contains("band")) {
        if (!j["band"].is_array() || j["band"].size() != 2) {
            fail("'band' must be [lo, hi]");
        }
        const double lo = j["band"][0].get<double>();
        const double hi = j["band"][1].get<double>();
        if (!(lo < hi)) fail("'band' must satisfy lo < hi");
        out["band"] = Json::array({lo, hi});
    }
    return out;
}

Json normalize_grid(const Json& j) {
    if (!j.is_object()) fail("'grid' must be an object");
    Json out;
    if (j.contains("weights")) {
        if (!j["weights"].is_array() || j["weights"].size() < 2) {
            fail("'grid.weights' must be an array of at least 2 weights");
        }
        out["weights"] = j["weights"];
        if (j.contains("labels")) out["labels"] = j["labels"];
        return out;
    }
    const double n = j.contains("n_points") ? require_number(j, "n_points") : 8.0;
    if (!(n >= 2.0) || n != std::floor(n)) fail("'grid.n_points' must be an integer >= 2");
    out["n_points"] = static_cast<int>(n);
    return out;
}

Json section_defaults(const std::string& name) {
    Json d = Json::object();
    if (name == "shoot") {
        d["r0"] = 1.0;
        d["r_t0"] = 0.0;
        d["r_t0_fan"] = Json::array();
        d["psi_norm"] = 1.0;
        d["t_end"] = kTwoPi;
        d["steps"] = 1000;
    } else if (name == "connect") {
        d["r0"] = 1.0;
        d["r1"] = 2.0;
        d["theta1"] = 1.0;
        d["tol"] = 1e-8;
        d["starts"] = 32;
        d["record_samples"] = 512;
    } else if (name == "report") {
        d["n_samples"] = 24;
    } else if (name == "profile") {
        d["n_samples"] = 200;
    } else {
        fail("unknown command section '" + name + "'");
    }
    return d;
}

Json normalize_section(const std::string& name, const Json& j) {
    if (!j.is_object()) fail("section '" + name + "' must be an object");
    Json out = section_defaults(name);
    for (const auto& [key, value] : j.items()) out[key] = value;
    return out;
}

}  // namespace

RunConfig RunConfig::parse(const Json& j) {
    if (!j.is_object()) fail("config root must be an object");
    RunConfig cfg;
    if (!j.contains("coefficients")) fail("config needs a 'coefficients' section");
    cfg.root_["coefficients"] = normalize_coefficients(j["coefficients"]);
    cfg.root_["grid"] = normalize_grid(j.contains("grid") ? j["grid"] : Json::object());
    const double tol = j.contains("quad_tol") ? j["quad_tol"].get<double>() : 1e-10;
    if (!(tol > 0.0 && tol <= 1e-2)) fail("'quad_tol' must lie in (0, 1e-2]");
    cfg.root_["quad_tol"] = tol;

    Json out_section = j.contains("output") ? j["output"] : Json::object();
    if (!out_section.is_object()) fail("'output' must be an object");
    Json out;
    out["dir"] = out_section.value("dir", std::string("out"));
    out["svg"] = out_section.value("svg", false);
    out["fields"] = out_section.value("fields", false);
    cfg.root_["output"] = out;

    for (const std::string name : {"shoot", "connect", "report", "profile"}) {
        if (j.contains(name)) cfg.root_[name] = normalize_section(name, j[name]);
    }
    // Make sure the coefficient spec and grid actually build.
    cfg.spec();
    cfg.grid();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return parse(j);
}

RunConfig RunConfig::from_preset_flag(const std::string& preset, double cone_k) {
    Json j;
    j["coefficients"]["preset"] = preset;
    if (preset == "cone") j["coefficients"]["k"] = cone_k;
    return parse(j);
}

CoefficientSpec RunConfig::spec() const {
    const Json& c = root_.at("coefficients");
    try {
        if (c.contains("preset")) {
            const std::string name = c["preset"].get<std::string>();
            return make_preset(name, c.value("k", 0.0));
        }
        auto c1 = std::make_shared<const TermSum>(terms_from_json(c["c1"]));
        auto c2 = std::make_shared<const TermSum>(terms_from_json(c["c2"]));
        CoefficientSpec spec(c1, c2, Preset::custom);
        if (c.contains("band")) {
            spec.set_band({c["band"][0].get<double>(), c["band"][1].get<double>()});
        }
        return spec;
    } catch (const DomainError& e) {
        fail(e.what());
    }
}

GridPtr RunConfig::grid() const {
    const Json& g = root_.at("grid");
    try {
        if (g.contains("weights")) {
            std::vector<double> w = g["weights"].get<std::vector<double>>();
            std::vector<std::string> labels;
            if (g.contains("labels")) labels = g["labels"].get<std::vector<std::string>>();
            return Grid::from_weights(std::move(w), std::move(labels));
        }
        return Grid::uniform(g["n_points"].get<int>());
    } catch (const DomainError& e) {
        fail(e.what());
    }
}

double RunConfig::quad_tol() const { return root_.at("quad_tol").get<double>(); }
std::string RunConfig::out_dir() const { return root_.at("output").at("dir").get<std::string>(); }
bool RunConfig::svg() const { return root_.at("output").at("svg").get<bool>(); }
bool RunConfig::fields() const { return root_.at("output").at("fields").get<bool>(); }

Json RunConfig::section(const std::string& name) const {
    return normalize_section(name, root_.contains(name) ? root_[name] : Json::object());
}

void RunConfig::override_preset(const std::string& name, double cone_k) {
    Json c;
    c["preset"] = name;
    if (name == "cone") c["k"] = cone_k;
    root_["coefficients"] = normalize_coefficients(c);
    spec();  // validate
}

void RunConfig::override_out(const std::string& dir) { root_["output"]["dir"] = dir; }

void RunConfig::override_steps(int n) {
    if (n < 8) fail("--steps must be at least 8");
    root_["shoot"] = section("shoot");
    root_["shoot"]["steps"] = n;
    root_["report"] = section("report");
    root_["report"]["n_samples"] = n;
    root_["profile"] = section("profile");
    root_["profile"]["n_samples"] = n;
    root_["connect"] = section("connect");
    root_["connect"]["record_samples"] = n;
}

void RunConfig::override_tol(double tol) {
    if (!(tol > 0.0)) fail("--tol must be positive");
    root_["connect"] = section("connect");
    root_["connect"]["tol"] = tol;
    root_["quad_tol"] = std::fmin(tol, 1e-2);
}

void RunConfig::override_svg(bool on) { root_["output"]["svg"] = on; }

}  // namespace densgeo
