#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"

#include "plexp/csv.hpp"
#include "plexp/figures.hpp"

using namespace plexp;
namespace fs = std::filesystem;

namespace {

RunConfig small_fig_config(const std::string& out) {
    RunConfig cfg;
    cfg.scenario = Scenario::Figures;
    cfg.out_dir = out;
    FigureBlock fb;
    fb.initial_grid = {0.0, 3.0, 61};
    fb.label_grid = {0.05, 3.0, 60};
    fb.gaussian_tau = {0.0, 2.0, 8.0};
    fb.lorentz_tau = {0.0, 4.0, 10.0};
    fb.fast_tau = {4.0};
    cfg.figures = fb;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(std::string p) : path(std::move(p)) { fs::remove_all(path); }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("unknown figure ids and missing slow-time lists are rejected") {
    TempDir dir("test_figs_bad");
    auto cfg = small_fig_config(dir.path.string());
    CHECK_THROWS_AS(run_figures(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_figures(cfg, 8), std::invalid_argument);
    CHECK_THROWS_AS(run_figures(cfg, 6), std::invalid_argument); // fast_tau has one entry
    cfg.figures->gaussian_tau.clear();
    CHECK_THROWS_WITH_AS(run_figures(cfg, 1), doctest::Contains("gaussian_tau"),
                         std::invalid_argument);
    cfg.figures.reset();
    CHECK_THROWS_AS(run_figures(cfg, 1), std::invalid_argument);
}

TEST_CASE("initial panel is odd with a single interior extremum") {
    TempDir dir("test_figs_fig3");
    const auto out = run_figures(small_fig_config(dir.path.string()), 3);
    CHECK(out.files.size() == 3); // initial + two nonzero slow times
    const auto t = csv::read_table((dir.path / "fig3_initial_0.csv").string());
    REQUIRE(t.header == std::vector<std::string>{"x", "p0", "xi"});
    const std::size_t n = t.rows.size();
    REQUIRE(n == 121); // 61 mirrored about the axis row
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(t.rows[i][0] == -t.rows[n - 1 - i][0]);
        CHECK(t.rows[i][1] == -t.rows[n - 1 - i][1]);
    }
    int extrema = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (t.rows[i][0] <= 0.0) continue;
        const double dl = t.rows[i][1] - t.rows[i - 1][1];
        const double dr = t.rows[i + 1][1] - t.rows[i][1];
        if (dl > 0.0 && dr < 0.0) ++extrema;
    }
    CHECK(extrema == 1);
}

TEST_CASE("averaged density curves are even and their peak decays in time") {
    TempDir dir("test_figs_fig2");
    const auto out = run_figures(small_fig_config(dir.path.string()), 2);
    CHECK(out.files.size() == 6); // density and velocity at three slow times
    double last_peak = 1e300;
    for (double tau : {0.0, 2.0, 8.0}) {
        const auto t = csv::read_table(
            (dir.path / ("fig2_nav_" + csv::format_double(tau) + ".csv")).string());
        double peak = 0.0;
        for (const auto& row : t.rows) {
            peak = std::max(peak, row[1]);
            CHECK(row[1] >= 0.0);
        }
        CHECK(peak < last_peak);
        last_peak = peak;
    }
    // Velocity is odd: mirrored rows carry the sign.
    const auto v = csv::read_table((dir.path / "fig2_vav_2.csv").string());
    const std::size_t n = v.rows.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(v.rows[i][1] == -v.rows[n - 1 - i][1]);
}

TEST_CASE("fast panels carry an oscillation on top of the slow field") {
    TempDir dir("test_figs_fig5");
    auto cfg = small_fig_config(dir.path.string());
    // The ripple needs a few labels per spatial period to register.
    cfg.figures->label_grid = {0.05, 3.0, 300};
    const auto out = run_figures(cfg, 5);
    CHECK(out.files.size() == 2);
    const auto t = csv::read_table((dir.path / "fig5_field_4.csv").string());
    REQUIRE(t.header == std::vector<std::string>{"x_bar", "p_full", "p_slow"});
    double max_osc = 0.0, max_slow = 0.0;
    int sign_changes = 0;
    double prev = 0.0;
    for (const auto& row : t.rows) {
        if (row[0] <= 0.0) continue;
        const double osc = row[1] - row[2];
        max_osc = std::max(max_osc, std::abs(osc));
        max_slow = std::max(max_slow, std::abs(row[2]));
        if (osc * prev < 0.0) ++sign_changes;
        prev = osc;
    }
    CHECK(max_osc > 1e-4);           // the oscillation exists
    CHECK(max_osc < 0.5 * max_slow); // and stays a ripple on the slow field
    CHECK(sign_changes >= 6);
    const auto u = csv::read_table((dir.path / "fig5_ueav_4.csv").string());
    CHECK(u.header == std::vector<std::string>{"x_bar", "u_e_av"});
}

TEST_CASE("manifests list the emitted files and reruns are byte-identical") {
    TempDir d1("test_figs_rep1"), d2("test_figs_rep2");
    const auto o1 = run_figures(small_fig_config(d1.path.string()), 1);
    const auto o2 = run_figures(small_fig_config(d2.path.string()), 1);
    REQUIRE(o1.files.size() == o2.files.size());
    for (std::size_t i = 0; i < o1.files.size(); ++i)
        CHECK(slurp(o1.files[i]) == slurp(o2.files[i]));
    CHECK(slurp(o1.manifest_path) == slurp(o2.manifest_path));

    const auto manifest = nlohmann::json::parse(slurp(o1.manifest_path));
    CHECK(manifest.at("figure") == 1);
    CHECK(manifest.at("family") == "gaussian");
    CHECK(manifest.at("params").at("b") == 1.01);
    REQUIRE(manifest.at("files").size() == o1.files.size());
    for (const auto& entry : manifest.at("files")) {
        const fs::path p = d1.path / entry.at("file").get<std::string>();
        CHECK(fs::exists(p));
    }
}
