#include "plexp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "plexp/version.hpp"

namespace plexp {

using nlohmann::json;

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::Profiles: return "profiles";
    case Scenario::Slow: return "slow";
    case Scenario::Fast: return "fast";
    case Scenario::Bvp: return "bvp";
    case Scenario::Pic: return "pic";
    case Scenario::Verify: return "verify";
    case Scenario::Figures: return "figures";
    }
    throw std::logic_error("unreachable scenario");
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "profiles") return Scenario::Profiles;
    if (s == "slow") return Scenario::Slow;
    if (s == "fast") return Scenario::Fast;
    if (s == "bvp") return Scenario::Bvp;
    if (s == "pic") return Scenario::Pic;
    if (s == "verify") return Scenario::Verify;
    if (s == "figures") return Scenario::Figures;
    throw std::invalid_argument("config: unknown scenario '" + s + "'");
}

std::vector<double> GridBlock::values() const {
    std::vector<double> v(static_cast<std::size_t>(points));
    const double step = (max - min) / (points - 1);
    for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = min + step * k;
    v.back() = max;
    return v;
}

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
}

double get_num(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw std::invalid_argument("config: " + where + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw std::invalid_argument("config: " + where + "." + key + " must be an integer");
    return v.get<int>();
}

std::vector<double> get_list(const json& obj, const char* key, std::vector<double> fallback,
                             const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array()) throw std::invalid_argument("config: " + where + "." + key + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw std::invalid_argument("config: " + where + "." + key + " must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

GridBlock parse_grid(const json& obj, const char* key, GridBlock def, const std::string& where) {
    if (!obj.contains(key)) return def;
    const json& g = obj.at(key);
    const std::string ctx = where + "." + key;
    require_object(g, ctx);
    reject_unknown(g, {"min", "max", "points"}, ctx);
    def.min = get_num(g, "min", def.min, ctx);
    def.max = get_num(g, "max", def.max, ctx);
    def.points = get_int(g, "points", def.points, ctx);
    if (!(def.max > def.min)) throw std::invalid_argument("config: " + ctx + " needs max > min");
    if (def.points < 2) throw std::invalid_argument("config: " + ctx + " needs points >= 2");
    return def;
}

json grid_json(const GridBlock& g) {
    return json{{"min", g.min}, {"max", g.max}, {"points", g.points}};
}

} // namespace

DensityProfile RunConfig::make_profile() const {
    if (profile_kind == "gaussian") return DensityProfile::gaussian(params.b);
    if (profile_kind == "lorentz") return DensityProfile::lorentz(params.b);
    if (profile_kind == "tabulated") return DensityProfile::tabulated(profile_x, profile_n, params.b);
    throw std::invalid_argument("config: unknown profile kind '" + profile_kind + "'");
}

std::string RunConfig::resolved_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["scenario"] = to_string(scenario);
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["params"] = json{{"eps", params.eps},
                       {"mu", params.mu},
                       {"gamma", params.gamma},
                       {"b", params.b},
                       {"Ti0", params.Ti0}};
    json prof{{"kind", profile_kind}};
    if (profile_kind == "tabulated") {
        prof["x"] = profile_x;
        prof["n"] = profile_n;
    }
    j["profile"] = prof;
    j["tolerances"] = json{{"map", tolerances.map},
                           {"quad", tolerances.quad},
                           {"bvp", tolerances.bvp},
                           {"flow_rel", tolerances.flow_rel},
                           {"flow_abs", tolerances.flow_abs}};
    j["grid"] = grid_json(grid);
    j["tau_list"] = tau_list;
    if (figures) {
        j["figures"] = json{{"initial_grid", grid_json(figures->initial_grid)},
                            {"label_grid", grid_json(figures->label_grid)},
                            {"gaussian_tau", figures->gaussian_tau},
                            {"lorentz_tau", figures->lorentz_tau},
                            {"fast_tau", figures->fast_tau}};
    }
    j["pic"] = json{{"x_max", pic.x_max},
                    {"n_cells", pic.n_cells},
                    {"n_particles", pic.n_particles},
                    {"dt", pic.dt},
                    {"tau_end", pic.tau_end},
                    {"diag_every", pic.diag_every},
                    {"sample_cap", pic.sample_cap},
                    {"compare_tau", pic.compare_tau}};
    return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    require_object(j, "top level");
    reject_unknown(j,
                   {"schema_version", "scenario", "seed", "out_dir", "params", "profile",
                    "tolerances", "grid", "tau_list", "figures", "pic"},
                   "top level");

    RunConfig cfg;

    if (!j.contains("schema_version"))
        throw std::invalid_argument("config: schema_version is required");
    cfg.schema_version = get_int(j, "schema_version", 0, "top level");
    if (cfg.schema_version != kConfigSchemaVersion)
        throw std::invalid_argument("config: unsupported schema_version " +
                                    std::to_string(cfg.schema_version));

    if (!j.contains("scenario")) throw std::invalid_argument("config: scenario is required");
    if (!j.at("scenario").is_string())
        throw std::invalid_argument("config: scenario must be a string");
    cfg.scenario = scenario_from_string(j.at("scenario").get<std::string>());

    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned())
            throw std::invalid_argument("config: seed must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string())
            throw std::invalid_argument("config: out_dir must be a string");
        cfg.out_dir = j.at("out_dir").get<std::string>();
    }

    if (j.contains("params")) {
        const json& p = j.at("params");
        require_object(p, "params");
        reject_unknown(p, {"eps", "mu", "gamma", "b", "Ti0"}, "params");
        cfg.params.eps = get_num(p, "eps", cfg.params.eps, "params");
        cfg.params.mu = get_num(p, "mu", cfg.params.mu, "params");
        cfg.params.gamma = get_num(p, "gamma", cfg.params.gamma, "params");
        cfg.params.b = get_num(p, "b", cfg.params.b, "params");
        cfg.params.Ti0 = get_num(p, "Ti0", cfg.params.Ti0, "params");
    }
    cfg.params.validate();

    if (j.contains("profile")) {
        const json& p = j.at("profile");
        require_object(p, "profile");
        reject_unknown(p, {"kind", "x", "n"}, "profile");
        if (p.contains("kind")) {
            if (!p.at("kind").is_string())
                throw std::invalid_argument("config: profile.kind must be a string");
            cfg.profile_kind = p.at("kind").get<std::string>();
        }
        if (cfg.profile_kind != "gaussian" && cfg.profile_kind != "lorentz" &&
            cfg.profile_kind != "tabulated")
            throw std::invalid_argument("config: unknown profile kind '" + cfg.profile_kind + "'");
        cfg.profile_x = get_list(p, "x", {}, "profile");
        cfg.profile_n = get_list(p, "n", {}, "profile");
        if (cfg.profile_kind == "tabulated") {
            if (cfg.profile_x.size() != cfg.profile_n.size() || cfg.profile_x.size() < 4)
                throw std::invalid_argument(
                    "config: tabulated profile needs matching x/n arrays with >= 4 samples");
        } else if (!cfg.profile_x.empty() || !cfg.profile_n.empty()) {
            throw std::invalid_argument("config: profile.x/n only apply to the tabulated kind");
        }
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        require_object(t, "tolerances");
        reject_unknown(t, {"map", "quad", "bvp", "flow_rel", "flow_abs"}, "tolerances");
        cfg.tolerances.map = get_num(t, "map", cfg.tolerances.map, "tolerances");
        cfg.tolerances.quad = get_num(t, "quad", cfg.tolerances.quad, "tolerances");
        cfg.tolerances.bvp = get_num(t, "bvp", cfg.tolerances.bvp, "tolerances");
        cfg.tolerances.flow_rel = get_num(t, "flow_rel", cfg.tolerances.flow_rel, "tolerances");
        cfg.tolerances.flow_abs = get_num(t, "flow_abs", cfg.tolerances.flow_abs, "tolerances");
        for (double tol : {cfg.tolerances.map, cfg.tolerances.quad, cfg.tolerances.bvp,
                           cfg.tolerances.flow_rel, cfg.tolerances.flow_abs})
            if (!(tol > 0.0) || tol > 1e-2)
                throw std::invalid_argument("config: tolerances must lie in (0, 1e-2]");
    }

    cfg.grid = parse_grid(j, "grid", cfg.grid, "top level");
    cfg.tau_list = get_list(j, "tau_list", cfg.tau_list, "top level");
    for (double tau : cfg.tau_list)
        if (tau < 0.0) throw std::invalid_argument("config: tau_list entries must be >= 0");

    if (j.contains("figures")) {
        const json& f = j.at("figures");
        require_object(f, "figures");
        reject_unknown(f, {"initial_grid", "label_grid", "gaussian_tau", "lorentz_tau", "fast_tau"},
                       "figures");
        FigureBlock fb;
        fb.initial_grid = parse_grid(f, "initial_grid", fb.initial_grid, "figures");
        fb.label_grid = parse_grid(f, "label_grid", fb.label_grid, "figures");
        fb.gaussian_tau = get_list(f, "gaussian_tau", {}, "figures");
        fb.lorentz_tau = get_list(f, "lorentz_tau", {}, "figures");
        fb.fast_tau = get_list(f, "fast_tau", {}, "figures");
        if (!(fb.label_grid.min > 0.0))
            throw std::invalid_argument("config: figures.label_grid.min must be > 0");
        for (const auto* list : {&fb.gaussian_tau, &fb.lorentz_tau, &fb.fast_tau})
            for (double tau : *list)
                if (tau < 0.0) throw std::invalid_argument("config: figure slow times must be >= 0");
        cfg.figures = fb;
    }
    if (cfg.scenario == Scenario::Figures && !cfg.figures)
        throw std::invalid_argument(
            "config: scenario 'figures' requires an explicit figures block");

    if (j.contains("pic")) {
        const json& p = j.at("pic");
        require_object(p, "pic");
        reject_unknown(p,
                       {"x_max", "n_cells", "n_particles", "dt", "tau_end", "diag_every",
                        "sample_cap", "compare_tau"},
                       "pic");
        cfg.pic.x_max = get_num(p, "x_max", cfg.pic.x_max, "pic");
        cfg.pic.n_cells = get_int(p, "n_cells", cfg.pic.n_cells, "pic");
        cfg.pic.n_particles = get_int(p, "n_particles", cfg.pic.n_particles, "pic");
        cfg.pic.dt = get_num(p, "dt", cfg.pic.dt, "pic");
        cfg.pic.tau_end = get_num(p, "tau_end", cfg.pic.tau_end, "pic");
        cfg.pic.diag_every = get_int(p, "diag_every", cfg.pic.diag_every, "pic");
        cfg.pic.sample_cap = get_num(p, "sample_cap", cfg.pic.sample_cap, "pic");
        cfg.pic.compare_tau = get_list(p, "compare_tau", cfg.pic.compare_tau, "pic");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace plexp
