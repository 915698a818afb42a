#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plexp/params.hpp"
#include "plexp/profiles.hpp"

namespace plexp {

// Desk-scale 1D1V electrostatic particle-in-cell reference solver on the
// single fast clock t:
//
//   electrons  dx/dt = eps u,    du/dt = -p
//   ions       dx/dt = eps mu w, dw/dt = +mu p
//   field      eps dp/dx = n_i - n_e,  p(0) = 0 by odd symmetry
//
// Cloud-in-cell deposition/gather, leapfrog push, Gauss-law field
// integration from the center (open bunch, vanishing far field). Loading
// is a quiet start: stratified inverse-CDF positions and stratified
// Maxwellian velocities decorrelated by a seeded shuffle, so identical
// configurations reproduce bit-identical runs. All loops are serial; every
// evaluation is pure given (config, state), so results never depend on
// scheduling.

struct PicConfig {
    PlasmaParams params;
    DensityProfile profile = DensityProfile::gaussian(1.0);
    double x_max = 8.0;     // domain is [-x_max, x_max]
    int n_cells = 400;      // must be even so a node sits at x = 0
    int n_particles = 100000; // per species
    double dt = 0.05;       // fast-clock step
    double t_end = 0.0;
    std::uint64_t seed = 12345;
    int diag_every = 100;   // steps between snapshots
    // Position-sampling truncation; 0 picks min(x_max, profile cap).
    double sample_cap = 0.0;
    bool cold_electrons = false; // load u = 0
    // Ions are loaded cold when gamma < this threshold (or when forced):
    // an under-resolved thermal spread is worse than none.
    double cold_ion_gamma_threshold = 0.01;
    bool cold_ion_override = false;
    // Replaces the electron loading density (ions keep the profile); used
    // for manufactured equilibria and linear-regime studies.
    std::function<double(double)> electron_density_override;
    // Where the state dump lands when the run aborts mid-flight.
    std::string dump_path = "pic_abort.chk";
};

struct ParticleSpecies {
    std::vector<double> x;
    std::vector<double> v; // u for electrons, w for ions
    double weight = 0.0;   // equal per-particle weight
    double lost_weight = 0.0;
};

struct PicState {
    ParticleSpecies electrons, ions;
    std::vector<double> field; // p at the n_cells + 1 nodes
    double t = 0.0;
    std::int64_t step = 0;
    bool velocities_staggered = false; // leapfrog half-kick applied
};

struct SpeciesMoments {
    std::vector<double> density;
    std::vector<double> velocity;
    std::vector<double> temperature; // velocity variance per cell
};

struct PicSnapshot {
    double t = 0.0;
    double tau = 0.0; // mu t
    std::vector<double> field;
    SpeciesMoments electrons, ions;
    double gauss_residual = 0.0;      // field-solve stencil defect, relative
    double continuity_residual = 0.0; // d rho/dt + div j defect, relative
    double energy = 0.0;              // kinetic + field, common scale
    double momentum = 0.0;            // u-sum + w-sum / mu, weighted
    double lost_weight = 0.0;         // both species, cumulative
};

struct PicResult {
    std::vector<double> grid; // node coordinates
    std::vector<PicSnapshot> snapshots;
    PicState state; // final
};

// Time step too large for the particles actually in flight: a particle
// crossed more than one cell. The state was dumped for inspection first.
class PicCflError : public std::runtime_error {
public:
    PicCflError(const std::string& what, std::string dump)
        : std::runtime_error(what), dump_(std::move(dump)) {}
    const std::string& dump_path() const noexcept { return dump_; }

private:
    std::string dump_;
};

// Fresh seeded run to t_end. Snapshots at step 0, every diag_every steps,
// and the final step.
PicResult run_pic(const PicConfig& config);

// Resume a checkpointed state under the same configuration until
// config.t_end; the particle arrays evolve bit-identically to an
// uninterrupted run.
PicResult continue_pic(const PicConfig& config, PicState state);

// Versioned binary particle + field checkpoint.
void save_checkpoint(const std::string& path, const PicState& state);
PicState load_checkpoint(const std::string& path);

// Scalar comparison of a PIC run against the averaged ion solution at the
// requested slow times (each must have a snapshot within half a cadence).
// Metrics are grid-free scalars, so no field resampling is involved:
// densities and temperatures are compared as ratios to their own tau = 0
// values, widths and slopes in absolute units.
struct SlowComparison {
    double tau = 0.0;
    double half_width_pic = 0.0, half_width_ref = 0.0, half_width_err = 0.0;
    double peak_pic = 0.0, peak_ref = 0.0, peak_err = 0.0;
    double slope_pic = 0.0, slope_ref = 0.0, slope_err = 0.0;
    double temperature_pic = 0.0, temperature_ref = 0.0, temperature_err = 0.0;
};

std::vector<SlowComparison> compare_slow(const PicResult& pic, const FieldFunctions& fields,
                                         const std::vector<double>& taus);

} // namespace plexp
