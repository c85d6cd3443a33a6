#include "spiralcap/runconfig.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "spiralcap/errors.hpp"

namespace spiralcap {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

double get_number(const json& j, const std::string& key, double fallback,
                  bool require_positive = false, bool require_non_negative = false) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) bad_key(key, "expected a number");
    const double x = v.get<double>();
    if (require_positive && !(x > 0.0)) bad_key(key, "must be positive");
    if (require_non_negative && x < 0.0) bad_key(key, "must be non-negative");
    return x;
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) bad_key(key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) bad_key(key, "expected a boolean");
    return v.get<bool>();
}

void reject_unknown(const json& j, const std::string& scope,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw ConfigError("unknown config key '" +
                              (scope.empty() ? key : scope + "." + key) + "'");
    }
}

RunConfig ingest(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: the document must be a JSON object");
    reject_unknown(doc, "",
                   {"omega_loops", "plate_width", "cylinder_radius", "wall_thickness",
                    "outer_radius", "eps_in", "eps_wall", "eps_out",
                    "fixed_cross_section", "mesh", "solver", "sweep", "optimize",
                    "profile"});

    RunConfig config;
    CapacitorConfig& cap = config.capacitor;
    config.nu = get_number(doc, "omega_loops", config.nu, false, true);
    cap.d = get_number(doc, "plate_width", cap.d, true);
    cap.r_cyl = get_number(doc, "cylinder_radius", cap.r_cyl, true);
    cap.wall = get_number(doc, "wall_thickness", cap.wall, true);
    cap.R = get_number(doc, "outer_radius", cap.R, true);
    cap.eps_in = get_number(doc, "eps_in", cap.eps_in, true);
    cap.eps_wall = get_number(doc, "eps_wall", cap.eps_wall, true);
    cap.eps_out = get_number(doc, "eps_out", cap.eps_out, true);
    cap.fixed_cross_section = get_bool(doc, "fixed_cross_section", false);

    if (doc.contains("mesh")) {
        const json& m = doc.at("mesh");
        if (!m.is_object()) bad_key("mesh", "expected an object");
        reject_unknown(m, "mesh",
                       {"center_size", "d_size", "sectors", "center_density",
                        "cyl_density", "out_density", "near_cyl_density",
                        "plate_tolerance"});
        MeshGeometry& g = cap.mesh;
        g.center_size = get_number(m, "center_size", g.center_size, true);
        g.d_size = get_number(m, "d_size", g.d_size, true);
        g.sectors = get_int(m, "sectors", g.sectors);
        g.center_density = get_number(m, "center_density", g.center_density, true);
        g.cyl_density = get_number(m, "cyl_density", g.cyl_density, true);
        g.out_density = get_number(m, "out_density", g.out_density, true);
        g.near_cyl_density = get_number(m, "near_cyl_density", g.near_cyl_density, true);
        cap.plate_tol = get_number(m, "plate_tolerance", cap.plate_tol, true);
    }

    if (doc.contains("solver")) {
        const json& s = doc.at("solver");
        if (!s.is_object()) bad_key("solver", "expected an object");
        reject_unknown(s, "solver", {"rel_tol", "max_iter"});
        cap.solver_rel_tol = get_number(s, "rel_tol", cap.solver_rel_tol, true);
        cap.solver_max_iter = get_int(s, "max_iter", cap.solver_max_iter);
        if (cap.solver_max_iter < 0) bad_key("solver.max_iter", "must be non-negative");
    }

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        if (!s.is_object()) bad_key("sweep", "expected an object");
        reject_unknown(s, "sweep", {"nu_grid"});
        if (s.contains("nu_grid")) {
            const json& grid = s.at("nu_grid");
            if (!grid.is_array()) bad_key("sweep.nu_grid", "expected an array of numbers");
            for (const json& v : grid) {
                if (!v.is_number()) bad_key("sweep.nu_grid", "expected an array of numbers");
                const double nu = v.get<double>();
                if (nu < 0.0) bad_key("sweep.nu_grid", "frequencies must be non-negative");
                config.sweep_grid.push_back(nu);
            }
        }
    }

    if (doc.contains("optimize")) {
        const json& o = doc.at("optimize");
        if (!o.is_object()) bad_key("optimize", "expected an object");
        reject_unknown(o, "optimize", {"tol_x", "tol_f", "max_iter"});
        config.optimizer.tol_x = get_number(o, "tol_x", config.optimizer.tol_x, true);
        config.optimizer.tol_f = get_number(o, "tol_f", config.optimizer.tol_f, true);
        config.optimizer.max_iter = get_int(o, "max_iter", config.optimizer.max_iter);
        if (config.optimizer.max_iter <= 0) bad_key("optimize.max_iter", "must be positive");
    }

    if (doc.contains("profile")) {
        const json& p = doc.at("profile");
        if (!p.is_object()) bad_key("profile", "expected an object");
        reject_unknown(p, "profile", {"samples"});
        config.profile_samples = get_int(p, "samples", config.profile_samples);
        if (config.profile_samples < 2) bad_key("profile.samples", "need at least 2");
    }

    // cross-field validation (plate overlap is omega-dependent and checked
    // when the problem is built)
    if (!(cap.wall < cap.r_cyl))
        throw ConfigError("config: wall_thickness must be below cylinder_radius");
    if (!(cap.R > cap.r_cyl))
        throw ConfigError("config: outer_radius must exceed cylinder_radius");
    return config;
}

void apply_override(json& doc, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + spec + "': expected key=value");
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        bad_key(path, "override value '" + raw + "' is not valid JSON");
    }
    json* node = &doc;
    std::istringstream keys(path);
    std::string key, next;
    if (!std::getline(keys, key, '.')) bad_key(path, "empty key");
    while (std::getline(keys, next, '.')) {
        node = &(*node)[key];
        if (!node->is_object() && !node->is_null()) bad_key(path, "not an object");
        key = next;
    }
    (*node)[key] = value;
}

}  // namespace

RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides) {
    json doc = json::object();
    if (!text.empty()) {
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
    }
    for (const std::string& o : overrides) apply_override(doc, o);
    return ingest(doc);
}

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) return parse_config("", overrides);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

nlohmann::json effective_json(const RunConfig& config) {
    const CapacitorConfig& cap = config.capacitor;
    nlohmann::json doc;
    doc["omega_loops"] = config.nu;
    doc["plate_width"] = cap.d;
    doc["cylinder_radius"] = cap.r_cyl;
    doc["wall_thickness"] = cap.wall;
    doc["outer_radius"] = cap.R;
    doc["eps_in"] = cap.eps_in;
    doc["eps_wall"] = cap.eps_wall;
    doc["eps_out"] = cap.eps_out;
    doc["fixed_cross_section"] = cap.fixed_cross_section;
    doc["mesh"] = {{"center_size", cap.mesh.center_size},
                   {"d_size", cap.mesh.d_size},
                   {"sectors", cap.mesh.sectors},
                   {"center_density", cap.mesh.center_density},
                   {"cyl_density", cap.mesh.cyl_density},
                   {"out_density", cap.mesh.out_density},
                   {"near_cyl_density", cap.mesh.near_cyl_density},
                   {"plate_tolerance", cap.plate_tol}};
    doc["solver"] = {{"rel_tol", cap.solver_rel_tol}, {"max_iter", cap.solver_max_iter}};
    doc["sweep"] = {{"nu_grid", config.sweep_grid}};
    doc["optimize"] = {{"tol_x", config.optimizer.tol_x},
                       {"tol_f", config.optimizer.tol_f},
                       {"max_iter", config.optimizer.max_iter}};
    doc["profile"] = {{"samples", config.profile_samples}};
    return doc;
}

std::string config_hash(const RunConfig& config) {
    const std::string dump = effective_json(config).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace spiralcap
