#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "plexp/bvp.hpp"
#include "plexp/config.hpp"
#include "plexp/csv.hpp"
#include "plexp/fast.hpp"
#include "plexp/figures.hpp"
#include "plexp/pic.hpp"
#include "plexp/profiles.hpp"
#include "plexp/slow.hpp"
#include "plexp/verify.hpp"
#include "plexp/version.hpp"

namespace {

using namespace plexp;
namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

void run_profiles(const RunConfig& cfg) {
    const auto fields = make_fields(cfg.make_profile(), cfg.params);
    csv::Table t;
    t.header = {"x", "ne0", "ni0", "p0", "xi", "delta"};
    for (double x : cfg.grid.values())
        t.rows.push_back(
            {x, fields.ne0(x), fields.ni0(x), fields.p0(x), fields.xi(x), fields.delta(x)});
    csv::write_table(out_path(cfg, "profiles.csv"), t);
}

void run_slow(const RunConfig& cfg) {
    const auto fields = make_fields(cfg.make_profile(), cfg.params);
    csv::Table t;
    t.header = {"tau", "x_prime", "x_bar", "p_bar", "n_av", "v_av", "T"};
    for (double tau : cfg.tau_list) {
        for (double xp : cfg.grid.values()) {
            if (xp <= 0.0) continue; // the map is odd; emit the positive half
            const auto d = ion_diagnostics(xp, tau, fields, cfg.tolerances.quad);
            const double r = fields.xi(xp) / fields.xi(d.x_bar);
            t.rows.push_back({tau, xp, d.x_bar, r * r * r * fields.p0(xp), d.n_av, d.v_av, d.T});
        }
    }
    csv::write_table(out_path(cfg, "slow.csv"), t);
}

void run_fast(const RunConfig& cfg) {
    if (cfg.grid.min <= 0.0)
        throw std::invalid_argument("fast scenario needs grid.min > 0 (labels start off-axis)");
    const auto fields = make_fields(cfg.make_profile(), cfg.params);
    const PrimedState primed(solve_quasineutral_potential(fields, {}, cfg.tolerances.bvp), fields);
    FastOptions options;
    options.map_tol = cfg.tolerances.map;
    csv::Table t;
    t.header = {"tau", "x_bar", "p_full", "p_slow", "u", "n_e_av", "u_e_av"};
    for (double tau : cfg.tau_list) {
        if (tau <= 0.0)
            throw std::invalid_argument("fast scenario needs tau > 0 entries in tau_list");
        const auto rec = reconstruct_fast(fields, primed, tau, cfg.grid.values(), options);
        for (const auto& pt : rec.points)
            t.rows.push_back({tau, pt.x_bar, pt.p_full, pt.p_slow, pt.u, pt.n_e_av, pt.u_e_av});
    }
    csv::write_table(out_path(cfg, "fast.csv"), t);
}

void run_bvp(const RunConfig& cfg) {
    const auto fields = make_fields(cfg.make_profile(), cfg.params);
    const auto sol = solve_quasineutral_potential(fields, {}, cfg.tolerances.bvp);
    const PrimedState primed(sol, fields);
    csv::Table t;
    t.header = {"x", "phi", "p_prime"};
    for (std::size_t j = 0; j < sol.x.size(); ++j) {
        // The initial field reads the potential slope at a shifted point;
        // stop the table where the shift would leave the solved grid.
        if (primed.shift(sol.x[j]) > sol.x.back()) break;
        t.rows.push_back({sol.x[j], sol.phi[j], primed.p_prime(sol.x[j])});
    }
    csv::write_table(out_path(cfg, "bvp.csv"), t);

    nlohmann::json rec;
    rec["residual"] = sol.residual;
    rec["newton_iterations"] = sol.newton_iterations;
    rec["phi0"] = sol.C;
    rec["tol"] = cfg.tolerances.bvp;
    rec["tol_plateau"] = sol.tol_plateau;
    write_text_file(out_path(cfg, "bvp_convergence.json"), rec.dump(2) + "\n");
}

void run_pic(const RunConfig& cfg) {
    if (!(cfg.params.mu > 0.0))
        throw std::invalid_argument("pic scenario needs mu > 0 to reach a slow time");
    PicConfig pc;
    pc.params = cfg.params;
    pc.profile = cfg.make_profile();
    pc.x_max = cfg.pic.x_max;
    pc.n_cells = cfg.pic.n_cells;
    pc.n_particles = cfg.pic.n_particles;
    pc.dt = cfg.pic.dt;
    pc.t_end = cfg.pic.tau_end / cfg.params.mu;
    pc.seed = cfg.seed;
    pc.diag_every = cfg.pic.diag_every;
    pc.sample_cap = cfg.pic.sample_cap;
    pc.dump_path = out_path(cfg, "pic_abort.chk");
    const auto result = plexp::run_pic(pc);

    csv::Table series;
    series.header = {"t",           "tau",        "energy",     "momentum",
                     "gauss_residual", "continuity_residual", "lost_weight"};
    for (const auto& s : result.snapshots)
        series.rows.push_back({s.t, s.tau, s.energy, s.momentum, s.gauss_residual,
                               s.continuity_residual, s.lost_weight});
    csv::write_table(out_path(cfg, "pic_series.csv"), series);

    const auto& last = result.snapshots.back();
    csv::Table fin;
    fin.header = {"x", "p", "ni", "vi", "Ti", "ne", "ve", "Te"};
    for (std::size_t j = 0; j < result.grid.size(); ++j)
        fin.rows.push_back({result.grid[j], last.field[j], last.ions.density[j],
                            last.ions.velocity[j], last.ions.temperature[j],
                            last.electrons.density[j], last.electrons.velocity[j],
                            last.electrons.temperature[j]});
    csv::write_table(out_path(cfg, "pic_final.csv"), fin);

    if (!cfg.pic.compare_tau.empty()) {
        const auto fields = make_fields(cfg.make_profile(), cfg.params);
        const auto cmp = compare_slow(result, fields, cfg.pic.compare_tau);
        csv::Table t;
        t.header = {"tau",       "half_width_pic", "half_width_ref", "half_width_err",
                    "peak_pic",  "peak_ref",       "peak_err",       "slope_pic",
                    "slope_ref", "slope_err",      "temperature_pic", "temperature_ref",
                    "temperature_err"};
        for (const auto& c : cmp)
            t.rows.push_back({c.tau, c.half_width_pic, c.half_width_ref, c.half_width_err,
                              c.peak_pic, c.peak_ref, c.peak_err, c.slope_pic, c.slope_ref,
                              c.slope_err, c.temperature_pic, c.temperature_ref,
                              c.temperature_err});
        csv::write_table(out_path(cfg, "pic_compare.csv"), t);
    }
}

int run_verify_scenario(const RunConfig& cfg) {
    const auto report = run_verify(cfg.seed);
    write_text_file(out_path(cfg, "verify_report.json"), report.to_json());
    for (const auto& c : report.checks)
        std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
                  << " (measured " << csv::format_double(c.measured) << ", tolerance "
                  << csv::format_double(c.tolerance) << ")\n";
    std::cout << (report.pass ? "verify: all checks passed" : "verify: FAILURES present") << "\n";
    return report.pass ? 0 : 2;
}

void run_figures_scenario(const RunConfig& cfg, int figure) {
    std::vector<int> wanted;
    if (figure != 0) {
        wanted.push_back(figure);
    } else {
        // No explicit id: render every figure whose slow-time list is set.
        if (!cfg.figures)
            throw std::invalid_argument("figures: config has no figures block");
        if (!cfg.figures->gaussian_tau.empty()) wanted.insert(wanted.end(), {1, 2});
        if (!cfg.figures->lorentz_tau.empty()) wanted.insert(wanted.end(), {3, 4});
        for (std::size_t k = 0; k < cfg.figures->fast_tau.size() && k < 3; ++k)
            wanted.push_back(5 + static_cast<int>(k));
        if (wanted.empty())
            throw std::invalid_argument("figures: every slow-time list in the config is empty");
    }
    for (int fig : wanted) {
        const auto out = run_figures(cfg, fig);
        std::cout << "figure " << fig << ": " << out.files.size() << " curves, manifest "
                  << out.manifest_path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-component plasma bunch expansion: averaged solutions, potential solve, "
                 "particle reference run, figure data"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int figure = 0;
    app.add_option("--config", config_path, "JSON run configuration");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides the config)");
    app.add_option("--figure", figure, "Figure id 1..7 (figures scenario only)")
        ->check(CLI::Range(1, 7));

    const std::vector<std::pair<std::string, Scenario>> subs = {
        {"profiles", Scenario::Profiles}, {"slow", Scenario::Slow}, {"fast", Scenario::Fast},
        {"bvp", Scenario::Bvp},           {"pic", Scenario::Pic},   {"verify", Scenario::Verify},
        {"figures", Scenario::Figures},
    };
    for (const auto& [name, scen] : subs) {
        (void)scen;
        app.add_subcommand(name, "Run the " + name + " scenario")->fallthrough();
    }
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        bool have_scenario = !config_path.empty();
        for (const auto& [name, scen] : subs) {
            if (app.got_subcommand(name)) {
                cfg.scenario = scen;
                have_scenario = true;
            }
        }
        if (!have_scenario)
            throw std::invalid_argument("nothing to do: give a subcommand or --config");
        if (out_opt->count()) cfg.out_dir = out_dir;
        if (seed_opt->count()) cfg.seed = seed;
        if (cfg.scenario == Scenario::Figures && !cfg.figures)
            throw std::invalid_argument(
                "figures runs need a config with an explicit figures block");

        fs::create_directories(cfg.out_dir);
        write_text_file(out_path(cfg, "resolved_config.json"), cfg.resolved_json());

        switch (cfg.scenario) {
        case Scenario::Profiles: run_profiles(cfg); break;
        case Scenario::Slow: run_slow(cfg); break;
        case Scenario::Fast: run_fast(cfg); break;
        case Scenario::Bvp: run_bvp(cfg); break;
        case Scenario::Pic: run_pic(cfg); break;
        case Scenario::Verify: return run_verify_scenario(cfg);
        case Scenario::Figures: run_figures_scenario(cfg, figure); break;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
