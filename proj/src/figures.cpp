#include "plexp/figures.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "json.hpp"

#include "plexp/csv.hpp"
#include "plexp/fast.hpp"
#include "plexp/slow.hpp"
#include "plexp/version.hpp"

namespace plexp {

using nlohmann::json;

PlasmaParams gaussian_figure_params() {
    PlasmaParams p;
    p.eps = 0.1;
    p.mu = std::sqrt(1.0 / 2000.0);
    p.gamma = 0.1;
    p.b = 1.01;
    return p;
}

PlasmaParams lorentz_figure_params() {
    PlasmaParams p;
    p.eps = 0.1;
    p.mu = std::sqrt(1.0 / 2000.0);
    p.gamma = 0.001;
    p.b = 1.0661;
    return p;
}

namespace {

// Column parities: -1 flips sign on the mirrored half, +1 copies.
csv::Table mirror(const csv::Table& half, const std::vector<int>& parity) {
    csv::Table full;
    full.header = half.header;
    for (auto it = half.rows.rbegin(); it != half.rows.rend(); ++it) {
        if ((*it)[0] == 0.0) continue; // the axis row appears once
        std::vector<double> row(it->size());
        for (std::size_t c = 0; c < it->size(); ++c)
            row[c] = (parity[c] < 0) ? -(*it)[c] : (*it)[c];
        full.rows.push_back(std::move(row));
    }
    full.rows.insert(full.rows.end(), half.rows.begin(), half.rows.end());
    return full;
}

struct Emitter {
    std::filesystem::path dir;
    int figure;
    std::vector<std::string> files;
    json manifest_files = json::array();

    std::string emit(const std::string& panel, double tau, const csv::Table& half,
                     const std::vector<int>& parity) {
        const std::string name =
            "fig" + std::to_string(figure) + "_" + panel + "_" + csv::format_double(tau) + ".csv";
        const std::string path = (dir / name).string();
        csv::write_table(path, mirror(half, parity));
        files.push_back(path);
        manifest_files.push_back(
            json{{"file", name}, {"panel", panel}, {"tau", tau}, {"columns", half.header}});
        return path;
    }
};

json params_json(const PlasmaParams& p) {
    return json{{"eps", p.eps}, {"mu", p.mu}, {"gamma", p.gamma}, {"b", p.b}, {"Ti0", p.Ti0}};
}

json grid_json(const GridBlock& g) {
    return json{{"min", g.min}, {"max", g.max}, {"points", g.points}};
}

const std::vector<double>& tau_list_for(const FigureBlock& fb, int figure) {
    const std::vector<double>* list = nullptr;
    const char* key = nullptr;
    if (figure <= 2) {
        list = &fb.gaussian_tau;
        key = "gaussian_tau";
    } else if (figure <= 4) {
        list = &fb.lorentz_tau;
        key = "lorentz_tau";
    } else {
        list = &fb.fast_tau;
        key = "fast_tau";
    }
    if (list->empty())
        throw std::invalid_argument(std::string("figures: figure ") + std::to_string(figure) +
                                    " needs a non-empty " + key + " list");
    return *list;
}

// Left panels of figures 1 and 3: initial averaged field and restoring
// slope on the initial-condition grid.
void emit_initial(Emitter& em, const FieldFunctions& fields, const GridBlock& grid) {
    csv::Table t;
    t.header = {"x", "p0", "xi"};
    for (double x : grid.values()) t.rows.push_back({x, fields.p0(x), fields.xi(x)});
    em.emit("initial", 0.0, t, {-1, -1, -1});
}

// Right panels of figures 1 and 3: transported averaged field
// p_bar = (xi'/xi_bar)^3 p0(x') against the mapped position.
void emit_pbar(Emitter& em, const FieldFunctions& fields, const GridBlock& labels,
               const std::vector<double>& taus, double map_tol) {
    for (double tau : taus) {
        if (tau == 0.0) continue; // the initial panel already shows tau = 0
        csv::Table t;
        t.header = {"x_bar", "p_bar"};
        for (double xp : labels.values()) {
            const double xb = slow_map_forward(xp, tau, fields, map_tol);
            const double r = fields.xi(xp) / fields.xi(xb);
            t.rows.push_back({xb, r * r * r * fields.p0(xp)});
        }
        em.emit("pbar", tau, t, {-1, -1});
    }
}

// Figures 2 and 4: averaged ion density and velocity at each slow time.
void emit_ion_panels(Emitter& em, const FieldFunctions& fields, const GridBlock& labels,
                     const std::vector<double>& taus, double quad_tol) {
    for (double tau : taus) {
        csv::Table nav, vav;
        nav.header = {"x_bar", "n_av"};
        vav.header = {"x_bar", "v_av"};
        for (double xp : labels.values()) {
            const auto d = ion_diagnostics(xp, tau, fields, quad_tol);
            nav.rows.push_back({d.x_bar, d.n_av});
            vav.rows.push_back({d.x_bar, d.v_av});
        }
        em.emit("nav", tau, nav, {-1, +1});
        em.emit("vav", tau, vav, {-1, -1});
    }
}

// Figures 5 through 7: full field with its oscillation on top of the slow
// part, and the averaged electron velocity, at one slow time each.
void emit_fast_panels(Emitter& em, const FieldFunctions& fields, const PrimedState& primed,
                      const GridBlock& labels, double tau, const FastOptions& options) {
    const auto rec = reconstruct_fast(fields, primed, tau, labels.values(), options);
    csv::Table field, ueav;
    field.header = {"x_bar", "p_full", "p_slow"};
    ueav.header = {"x_bar", "u_e_av"};
    for (const auto& pt : rec.points) {
        field.rows.push_back({pt.x_bar, pt.p_full, pt.p_slow});
        ueav.rows.push_back({pt.x_bar, pt.u_e_av});
    }
    em.emit("field", tau, field, {-1, -1, -1});
    em.emit("ueav", tau, ueav, {-1, -1});
}

} // namespace

FigureOutput run_figures(const RunConfig& cfg, int figure) {
    if (figure < 1 || figure > 7)
        throw std::invalid_argument("figures: unknown figure id " + std::to_string(figure));
    if (!cfg.figures)
        throw std::invalid_argument("figures: config has no figures block");
    const FigureBlock& fb = *cfg.figures;
    const auto& taus = tau_list_for(fb, figure);

    const bool gaussian_family = figure <= 2;
    const PlasmaParams params = gaussian_family ? gaussian_figure_params() : lorentz_figure_params();
    const DensityProfile profile =
        gaussian_family ? DensityProfile::gaussian(params.b) : DensityProfile::lorentz(params.b);
    const FieldFunctions fields = make_fields(profile, params);

    std::filesystem::create_directories(cfg.out_dir);
    Emitter em{cfg.out_dir, figure, {}, json::array()};

    FastOptions fast_options;
    fast_options.map_tol = cfg.tolerances.map;

    switch (figure) {
    case 1:
        emit_initial(em, fields, fb.initial_grid);
        emit_pbar(em, fields, fb.label_grid, taus, cfg.tolerances.map);
        break;
    case 2:
        emit_ion_panels(em, fields, fb.label_grid, taus, cfg.tolerances.quad);
        break;
    case 3:
        emit_initial(em, fields, fb.initial_grid);
        emit_pbar(em, fields, fb.label_grid, taus, cfg.tolerances.map);
        break;
    case 4:
        emit_ion_panels(em, fields, fb.label_grid, taus, cfg.tolerances.quad);
        break;
    default: {
        const std::size_t idx = static_cast<std::size_t>(figure - 5);
        if (idx >= taus.size())
            throw std::invalid_argument("figures: fast_tau has no entry for figure " +
                                        std::to_string(figure));
        const PrimedState primed(solve_quasineutral_potential(fields, {}, cfg.tolerances.bvp),
                                 fields);
        emit_fast_panels(em, fields, primed, fb.label_grid, taus[idx], fast_options);
        break;
    }
    }

    json manifest;
    manifest["figure"] = figure;
    manifest["family"] = gaussian_family ? "gaussian" : "lorentz";
    manifest["params"] = params_json(params);
    manifest["initial_grid"] = grid_json(fb.initial_grid);
    manifest["label_grid"] = grid_json(fb.label_grid);
    manifest["tau"] = taus;
    manifest["files"] = em.manifest_files;
    manifest["mirrored"] = true; // negative half filled in by column parity
    manifest["version"] = kVersion;
    if (figure >= 5) {
        manifest["points_per_period"] = fast_options.points_per_period;
        manifest["delta_transport"] = "label_frozen";
    }

    FigureOutput out;
    out.figure = figure;
    out.files = std::move(em.files);
    out.manifest_path =
        (std::filesystem::path(cfg.out_dir) / ("fig" + std::to_string(figure) + "_manifest.json"))
            .string();
    write_text_file(out.manifest_path, manifest.dump(2) + "\n");
    return out;
}

} // namespace plexp
