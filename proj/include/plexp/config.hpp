#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plexp/params.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

enum class Scenario { Profiles, Slow, Fast, Bvp, Pic, Verify, Figures };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

// Inclusive uniform grid with `points` samples.
struct GridBlock {
    double min = 0.0;
    double max = 3.0;
    int points = 201;

    std::vector<double> values() const;
};

struct ToleranceBlock {
    double map = 1e-10;      // slow-map root solve
    double quad = 1e-10;     // averaged-diagnostics quadrature
    double bvp = 1e-10;      // Newton residual of the potential solve
    double flow_rel = 1e-10; // flow integrator, relative
    double flow_abs = 1e-10; // flow integrator, absolute
};

// Figure mode carries its grids and slow-time lists explicitly; there are
// no hidden defaults behind a figure run.
struct FigureBlock {
    GridBlock initial_grid{0.0, 3.0, 241};
    GridBlock label_grid{0.02, 3.0, 150};
    std::vector<double> gaussian_tau; // figures 1 and 2
    std::vector<double> lorentz_tau;  // figures 3 and 4
    std::vector<double> fast_tau;     // one entry per figure 5..7
};

struct PicBlock {
    double x_max = 6.0;
    int n_cells = 300;
    int n_particles = 100000;
    double dt = 0.02;
    double tau_end = 4.0;
    int diag_every = 200;
    double sample_cap = 0.0; // 0 = sample out to x_max
    std::vector<double> compare_tau{1.0, 2.0};
};

struct RunConfig {
    int schema_version = 1;
    Scenario scenario = Scenario::Verify;
    std::uint64_t seed = 12345;
    std::string out_dir = "out";

    PlasmaParams params;

    std::string profile_kind = "gaussian"; // gaussian | lorentz | tabulated
    std::vector<double> profile_x;         // tabulated kind only
    std::vector<double> profile_n;         // tabulated kind only

    ToleranceBlock tolerances;
    GridBlock grid;                            // label grid for slow/fast/bvp output
    std::vector<double> tau_list{0.0, 2.0, 8.0, 12.0, 18.0};

    std::optional<FigureBlock> figures; // required when scenario == Figures
    PicBlock pic;

    DensityProfile make_profile() const;

    // Echo of every resolved value, key-sorted with round-trip numeric
    // formatting: reparsing reproduces this config field for field, and a
    // rerun from the echo is byte-identical.
    std::string resolved_json() const;
};

// Parses and validates. Unknown keys at any nesting level are rejected by
// name; missing keys fall back to the defaults above. schema_version is
// mandatory and must match the supported version.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

} // namespace plexp
