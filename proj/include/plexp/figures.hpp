#pragma once

#include <string>
#include <vector>

#include "plexp/config.hpp"

namespace plexp {

struct FigureOutput {
    int figure = 0;
    std::vector<std::string> files; // CSV paths, in emission order
    std::string manifest_path;
};

// The two parameter sets behind the figure families. Figures 1 and 2 use
// the near-balanced Gaussian bunch, figures 3 through 7 the near-balanced
// Lorentz bunch with cold ions.
PlasmaParams gaussian_figure_params(); // eps 0.1, mu sqrt(1/2000), gamma 0.1,   b 1.01
PlasmaParams lorentz_figure_params();  // eps 0.1, mu sqrt(1/2000), gamma 0.001, b 1.0661

// Writes every curve of figure `figure` (1..7) into cfg.out_dir as
// fig{N}_{panel}_{tau}.csv plus fig{N}_manifest.json recording the
// parameters, grids, slow times, column names and emitted files. The
// grids and slow-time lists are taken from cfg.figures; an absent block,
// a missing slow-time list, or an unknown figure id is rejected. Curves
// cover the full line: the positive half is computed and the negative
// half filled in by the parity of each column.
FigureOutput run_figures(const RunConfig& cfg, int figure);

} // namespace plexp
