#include "plexp/pic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "plexp/math/interp.hpp"
#include "plexp/math/special.hpp"
#include "plexp/slow.hpp"

namespace plexp {

namespace {

// SplitMix64: tiny deterministic generator, identical across platforms
// (standard library distributions are not).
struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

void fisher_yates(std::vector<double>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next() % i);
        std::swap(v[i - 1], v[j]);
    }
}

struct Grid {
    double x_max = 0.0;
    int n = 0; // cells
    double h = 0.0;
    double node(int j) const { return -x_max + h * j; }
};

// Tent (CIC) deposition helper: returns the left node and its weight.
inline void tent(const Grid& g, double x, int& j, double& wl) {
    double r = (x + g.x_max) / g.h;
    j = static_cast<int>(r);
    if (j > g.n - 1) j = g.n - 1;
    if (j < 0) j = 0;
    wl = 1.0 - (r - j);
}

void deposit_density(const Grid& g, const ParticleSpecies& s, std::vector<double>& n) {
    std::fill(n.begin(), n.end(), 0.0);
    for (std::size_t p = 0; p < s.x.size(); ++p) {
        int j;
        double wl;
        tent(g, s.x[p], j, wl);
        n[j] += wl;
        n[j + 1] += 1.0 - wl;
    }
    const double scale = s.weight / g.h;
    for (double& v : n) v *= scale;
    n.front() *= 2.0; // half-width end cells
    n.back() *= 2.0;
}

// rho = n_i - n_e at nodes.
void charge_density(const Grid& g, const PicState& st, std::vector<double>& ni,
                    std::vector<double>& ne, std::vector<double>& rho) {
    deposit_density(g, st.ions, ni);
    deposit_density(g, st.electrons, ne);
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = ni[j] - ne[j];
}

// Gauss law eps dp/dx = rho, trapezoid cumulative with a consistent
// stencil, in the isolated-bunch gauge p(-x_max) = -p(x_max): the far
// field carries half the net charge on each side. Grounding an interior
// node instead superimposes a uniform field whenever the charge is
// left-right asymmetric; that field pushes the species apart and feeds
// the sloshing mode, so even loading noise grows into a runaway dipole.
void solve_field(const Grid& g, double eps, const std::vector<double>& rho,
                 std::vector<double>& p) {
    const int c = g.n / 2;
    p[c] = 0.0;
    for (int j = c; j < g.n; ++j)
        p[j + 1] = p[j] + (g.h / (2.0 * eps)) * (rho[j] + rho[j + 1]);
    for (int j = c; j > 0; --j)
        p[j - 1] = p[j] - (g.h / (2.0 * eps)) * (rho[j] + rho[j - 1]);
    const double off = 0.5 * (p.front() + p.back());
    for (double& v : p) v -= off;
}

double gauss_residual(const Grid& g, double eps, const std::vector<double>& rho,
                      const std::vector<double>& p) {
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < g.n; ++j) {
        worst = std::max(worst, std::abs(eps * (p[j + 1] - p[j]) / g.h -
                                         0.5 * (rho[j] + rho[j + 1])));
        scale = std::max(scale, std::abs(rho[j]));
    }
    return worst / std::max(scale, 1e-300);
}

double interp_field(const Grid& g, const std::vector<double>& p, double x) {
    int j;
    double wl;
    tent(g, x, j, wl);
    return wl * p[j] + (1.0 - wl) * p[j + 1];
}

// Quiet-start loading -------------------------------------------------

std::vector<double> stratified_positions(const std::function<double(double)>& density,
                                         double cap, int n) {
    // Tabulate the CDF on [-cap, cap] and interpolate its inverse.
    const int m = 4000;
    std::vector<double> xs(m + 1), cdf(m + 1);
    cdf[0] = 0.0;
    xs[0] = -cap;
    double prev = density(-cap);
    for (int k = 1; k <= m; ++k) {
        xs[k] = -cap + 2.0 * cap * k / m;
        const double cur = density(xs[k]);
        if (!(cur >= 0.0))
            throw std::invalid_argument("pic loading: density must be non-negative");
        cdf[k] = cdf[k - 1] + 0.5 * (prev + cur) * (2.0 * cap / m);
        prev = cur;
    }
    const double mass = cdf[m];
    if (!(mass > 0.0)) throw std::invalid_argument("pic loading: density integrates to zero");
    // Strictly increasing knots for the inverse table.
    std::vector<double> q, xq;
    q.reserve(m + 1);
    xq.reserve(m + 1);
    for (int k = 0; k <= m; ++k) {
        const double f = cdf[k] / mass;
        if (q.empty() || f > q.back() + 1e-14) {
            q.push_back(f);
            xq.push_back(xs[k]);
        }
    }
    math::MonotoneCubic inverse(std::move(q), std::move(xq));
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = inverse((i + 0.5) / n);
    return out;
}

std::vector<double> stratified_maxwellian(double sigma, int n, SplitMix64& rng) {
    std::vector<double> v(n);
    if (sigma <= 0.0) return v;
    for (int i = 0; i < n; ++i) v[i] = sigma * math::normal_quantile((i + 0.5) / n);
    fisher_yates(v, rng);
    return v;
}

double total_mass(const std::function<double(double)>& density, double cap) {
    const int m = 4000;
    double mass = 0.0, prev = density(-cap);
    for (int k = 1; k <= m; ++k) {
        const double cur = density(-cap + 2.0 * cap * k / m);
        mass += 0.5 * (prev + cur) * (2.0 * cap / m);
        prev = cur;
    }
    return mass;
}

// Config checks and derived quantities ---------------------------------

Grid make_grid(const PicConfig& c) {
    if (c.n_cells < 16 || c.n_cells % 2 != 0)
        throw std::invalid_argument("pic: n_cells must be even and at least 16");
    if (!(c.x_max > 0.0)) throw std::invalid_argument("pic: x_max must be positive");
    Grid g;
    g.x_max = c.x_max;
    g.n = c.n_cells;
    g.h = 2.0 * c.x_max / c.n_cells;
    return g;
}

void validate_config(const PicConfig& c, const Grid& g) {
    c.params.validate();
    if (c.n_particles < 10000)
        throw std::invalid_argument("pic: need at least 1e4 particles per species");
    if (!(c.dt > 0.0)) throw std::invalid_argument("pic: dt must be positive");
    if (c.t_end < 0.0) throw std::invalid_argument("pic: t_end must be non-negative");
    if (c.diag_every < 1) throw std::invalid_argument("pic: diag_every must be >= 1");
    if (!(g.h < c.params.eps))
        throw std::invalid_argument("pic: cell size must resolve the Debye-scale eps");
    const double scan = std::min(c.x_max, 0.999 * c.profile.x_cap());
    double ni_max = 0.0;
    for (int j = 0; j <= g.n; ++j) {
        const double x = g.node(j);
        if (std::abs(x) <= scan) ni_max = std::max(ni_max, c.profile.ni0(x));
    }
    if (c.dt * std::sqrt(ni_max) >= 0.2)
        throw std::invalid_argument("pic: dt too large for the plasma frequency");
}

double sampling_cap(const PicConfig& c) {
    double cap = (c.sample_cap > 0.0) ? c.sample_cap : c.x_max;
    cap = std::min(cap, 0.999 * c.profile.x_cap());
    if (!(cap > 0.0)) throw std::invalid_argument("pic: empty sampling domain");
    return std::min(cap, c.x_max);
}

PicState load_particles(const PicConfig& c, const Grid& g) {
    const double cap = sampling_cap(c);
    PicState st;
    SplitMix64 rng_e(c.seed);
    SplitMix64 rng_i(c.seed ^ 0xA5A5A5A55A5A5A5AULL);

    const auto& prof = c.profile;
    std::function<double(double)> ne = [&prof](double x) { return prof.ne0(x); };
    if (c.electron_density_override) ne = c.electron_density_override;
    std::function<double(double)> ni = [&prof](double x) { return prof.ni0(x); };

    st.electrons.x = stratified_positions(ne, cap, c.n_particles);
    st.ions.x = stratified_positions(ni, cap, c.n_particles);

    const double sigma_e = c.cold_electrons ? 0.0 : 1.0;
    const bool cold_ions =
        c.cold_ion_override || c.params.gamma < c.cold_ion_gamma_threshold;
    const double sigma_i = cold_ions ? 0.0 : c.params.gamma;
    st.electrons.v = stratified_maxwellian(sigma_e, c.n_particles, rng_e);
    st.ions.v = stratified_maxwellian(sigma_i, c.n_particles, rng_i);

    // Equal per-particle weights carrying the truncated profile mass; ion
    // weight is rescaled to the electron total so the loaded bunch is
    // globally neutral and the far field vanishes.
    const double mass_e = total_mass(ne, cap);
    st.electrons.weight = mass_e / c.n_particles;
    st.ions.weight = mass_e / c.n_particles;

    st.field.assign(g.n + 1, 0.0);
    return st;
}

// Diagnostics -----------------------------------------------------------

SpeciesMoments moments(const Grid& g, const ParticleSpecies& s,
                       const std::vector<double>& v_sync) {
    SpeciesMoments m;
    m.density.assign(g.n + 1, 0.0);
    m.velocity.assign(g.n + 1, 0.0);
    m.temperature.assign(g.n + 1, 0.0);
    std::vector<double> wsum(g.n + 1, 0.0), vsum(g.n + 1, 0.0), v2sum(g.n + 1, 0.0);
    for (std::size_t p = 0; p < s.x.size(); ++p) {
        int j;
        double wl;
        tent(g, s.x[p], j, wl);
        const double v = v_sync[p];
        wsum[j] += wl;
        vsum[j] += wl * v;
        v2sum[j] += wl * v * v;
        wsum[j + 1] += 1.0 - wl;
        vsum[j + 1] += (1.0 - wl) * v;
        v2sum[j + 1] += (1.0 - wl) * v * v;
    }
    for (int j = 0; j <= g.n; ++j) {
        m.density[j] = wsum[j] * s.weight / g.h;
        if (wsum[j] > 0.0) {
            const double mean = vsum[j] / wsum[j];
            m.velocity[j] = mean;
            m.temperature[j] = std::max(0.0, v2sum[j] / wsum[j] - mean * mean);
        }
    }
    m.density.front() *= 2.0;
    m.density.back() *= 2.0;
    return m;
}

struct Accumulators {
    std::vector<double> ni, ne, rho, j_edge, rho_old;
    double continuity = 0.0;
};

PicSnapshot make_snapshot(const PicConfig& c, const Grid& g, const PicState& st,
                          const std::vector<double>& rho, const Accumulators& acc) {
    PicSnapshot snap;
    snap.t = st.t;
    snap.tau = c.params.mu * st.t;
    snap.field = st.field;
    snap.gauss_residual = gauss_residual(g, c.params.eps, rho, st.field);
    snap.continuity_residual = acc.continuity;
    snap.lost_weight = st.electrons.lost_weight + st.ions.lost_weight;

    // Unstagger velocities for moments and conserved sums.
    const double half = st.velocities_staggered ? 0.5 * c.dt : 0.0;
    std::vector<double> ve(st.electrons.x.size()), vi(st.ions.x.size());
    for (std::size_t p = 0; p < ve.size(); ++p)
        ve[p] = st.electrons.v[p] - half * interp_field(g, st.field, st.electrons.x[p]);
    for (std::size_t p = 0; p < vi.size(); ++p)
        vi[p] = st.ions.v[p] + half * c.params.mu * interp_field(g, st.field, st.ions.x[p]);

    snap.electrons = moments(g, st.electrons, ve);
    snap.ions = moments(g, st.ions, vi);

    double ke = 0.0, pe_mom = 0.0;
    for (double v : ve) {
        ke += v * v;
        pe_mom += v;
    }
    double ki = 0.0, pi_mom = 0.0;
    for (double v : vi) {
        ki += v * v;
        pi_mom += v;
    }
    double field2 = 0.0;
    for (int j = 0; j <= g.n; ++j) {
        const double wj = (j == 0 || j == g.n) ? 0.5 : 1.0;
        field2 += wj * st.field[j] * st.field[j] * g.h;
    }
    snap.energy = 0.5 * (st.electrons.weight * ke + st.ions.weight * ki) + 0.5 * field2;
    snap.momentum = st.electrons.weight * pe_mom;
    if (c.params.mu > 0.0) snap.momentum += st.ions.weight * pi_mom / c.params.mu;
    return snap;
}

// One leapfrog step: kick with the current field, drift, deposit the
// charge-conserving current, drop leavers, re-deposit charge, new field.
void advance(const PicConfig& c, const Grid& g, PicState& st, Accumulators& acc) {
    const double eps = c.params.eps;
    const double mu = c.params.mu;
    acc.rho_old = acc.rho;
    std::fill(acc.j_edge.begin(), acc.j_edge.end(), 0.0);

    auto push_species = [&](ParticleSpecies& s, double kick_sign, double kick_scale,
                            double drift_scale) {
        std::size_t alive = 0;
        double lost = 0.0;
        for (std::size_t p = 0; p < s.x.size(); ++p) {
            const double x0 = s.x[p];
            double v = s.v[p] + kick_sign * kick_scale * c.dt * interp_field(g, st.field, x0);
            const double x1 = x0 + drift_scale * c.dt * v;
            if (std::abs(x1 - x0) > g.h) {
                save_checkpoint(c.dump_path, st);
                throw PicCflError("pic: particle crossed more than one cell in a step",
                                  c.dump_path);
            }
            // Charge-conserving current: the running prefix of the tent
            // change, extended to the wall for leavers.
            int j0, j1;
            double wl0, wl1;
            tent(g, x0, j0, wl0);
            const bool gone = x1 < -g.x_max || x1 > g.x_max;
            double run = 0.0;
            if (!gone) {
                tent(g, x1, j1, wl1);
                const int lo = std::min(j0, j1), hi = std::max(j0, j1) + 1;
                for (int j = lo; j <= hi; ++j) {
                    double dq = 0.0;
                    if (j == j0) dq -= wl0;
                    if (j == j0 + 1) dq -= 1.0 - wl0;
                    if (j == j1) dq += wl1;
                    if (j == j1 + 1) dq += 1.0 - wl1;
                    run += dq;
                    if (j < g.n) acc.j_edge[j] -= kick_sign * s.weight * run / c.dt;
                }
            } else {
                // Removal: the whole tent flows out through the nearer wall.
                if (x1 > g.x_max) {
                    run = 0.0;
                    for (int j = j0; j <= g.n - 1; ++j) {
                        double dq = 0.0;
                        if (j == j0) dq -= wl0;
                        if (j == j0 + 1) dq -= 1.0 - wl0;
                        run += dq;
                        acc.j_edge[j] -= kick_sign * s.weight * run / c.dt;
                    }
                } else {
                    run = 0.0;
                    for (int j = j0 + 1; j >= 0; --j) {
                        double dq = 0.0;
                        if (j == j0) dq -= wl0;
                        if (j == j0 + 1) dq -= 1.0 - wl0;
                        run += dq;
                        if (j >= 1) acc.j_edge[j - 1] += kick_sign * s.weight * run / c.dt;
                    }
                }
                lost += s.weight;
                continue;
            }
            s.x[alive] = x1;
            s.v[alive] = v;
            ++alive;
        }
        s.x.resize(alive);
        s.v.resize(alive);
        s.lost_weight += lost;
    };

    // kick_sign doubles as the charge sign entering rho = n_i - n_e.
    push_species(st.electrons, -1.0, 1.0, eps);
    push_species(st.ions, +1.0, mu, eps * mu);

    charge_density(g, st, acc.ni, acc.ne, acc.rho);
    // End nodes carry the half-cell density correction; undo it for the
    // conservation ledger, which works with plain tent charge.
    double worst = 0.0, scale = 0.0;
    for (int j = 1; j < g.n; ++j) {
        const double drho = (acc.rho[j] - acc.rho_old[j]) / c.dt;
        const double divj = (acc.j_edge[j] - acc.j_edge[j - 1]) / g.h;
        worst = std::max(worst, std::abs(drho + divj));
        scale = std::max({scale, std::abs(drho), std::abs(divj)});
    }
    acc.continuity = worst / std::max(scale, 1e-300);

    solve_field(g, eps, acc.rho, st.field);
    st.t += c.dt;
    st.step += 1;
}

PicResult run_loop(const PicConfig& c, PicState st) {
    const Grid g = make_grid(c);
    validate_config(c, g);

    Accumulators acc;
    acc.ni.assign(g.n + 1, 0.0);
    acc.ne.assign(g.n + 1, 0.0);
    acc.rho.assign(g.n + 1, 0.0);
    acc.rho_old.assign(g.n + 1, 0.0);
    acc.j_edge.assign(g.n, 0.0);

    charge_density(g, st, acc.ni, acc.ne, acc.rho);
    solve_field(g, c.params.eps, acc.rho, st.field);

    if (!st.velocities_staggered) {
        for (std::size_t p = 0; p < st.electrons.x.size(); ++p)
            st.electrons.v[p] +=
                0.5 * c.dt * interp_field(g, st.field, st.electrons.x[p]);
        for (std::size_t p = 0; p < st.ions.x.size(); ++p)
            st.ions.v[p] -=
                0.5 * c.dt * c.params.mu * interp_field(g, st.field, st.ions.x[p]);
        st.velocities_staggered = true;
    }

    PicResult out;
    out.grid.resize(g.n + 1);
    for (int j = 0; j <= g.n; ++j) out.grid[j] = g.node(j);

    const auto due = [&](std::int64_t step) { return step % c.diag_every == 0; };
    if (due(st.step)) out.snapshots.push_back(make_snapshot(c, g, st, acc.rho, acc));

    const std::int64_t steps =
        static_cast<std::int64_t>(std::ceil((c.t_end - st.t) / c.dt - 1e-12));
    for (std::int64_t k = 0; k < steps; ++k) {
        advance(c, g, st, acc);
        if (due(st.step) || k == steps - 1)
            out.snapshots.push_back(make_snapshot(c, g, st, acc.rho, acc));
    }
    out.state = std::move(st);
    return out;
}

} // namespace

PicResult run_pic(const PicConfig& config) {
    const Grid g = make_grid(config);
    validate_config(config, g);
    return run_loop(config, load_particles(config, g));
}

PicResult continue_pic(const PicConfig& config, PicState state) {
    return run_loop(config, std::move(state));
}

// Checkpoint ------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'P', 'L', 'X', 'P', 'I', 'C', '0', '1'};

void put_vec(std::ofstream& f, const std::vector<double>& v) {
    const std::uint64_t n = v.size();
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    f.write(reinterpret_cast<const char*>(v.data()), sizeof(double) * n);
}

std::vector<double> get_vec(std::ifstream& f) {
    std::uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!f || n > (1ULL << 32)) throw std::runtime_error("pic checkpoint: corrupt array header");
    std::vector<double> v(n);
    f.read(reinterpret_cast<char*>(v.data()), sizeof(double) * n);
    if (!f) throw std::runtime_error("pic checkpoint: truncated array");
    return v;
}

void put_species(std::ofstream& f, const ParticleSpecies& s) {
    put_vec(f, s.x);
    put_vec(f, s.v);
    f.write(reinterpret_cast<const char*>(&s.weight), sizeof s.weight);
    f.write(reinterpret_cast<const char*>(&s.lost_weight), sizeof s.lost_weight);
}

ParticleSpecies get_species(std::ifstream& f) {
    ParticleSpecies s;
    s.x = get_vec(f);
    s.v = get_vec(f);
    f.read(reinterpret_cast<char*>(&s.weight), sizeof s.weight);
    f.read(reinterpret_cast<char*>(&s.lost_weight), sizeof s.lost_weight);
    return s;
}

} // namespace

void save_checkpoint(const std::string& path, const PicState& state) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("pic checkpoint: cannot open " + path + " for writing");
    f.write(kMagic, sizeof kMagic);
    put_species(f, state.electrons);
    put_species(f, state.ions);
    put_vec(f, state.field);
    f.write(reinterpret_cast<const char*>(&state.t), sizeof state.t);
    f.write(reinterpret_cast<const char*>(&state.step), sizeof state.step);
    const std::uint8_t flag = state.velocities_staggered ? 1 : 0;
    f.write(reinterpret_cast<const char*>(&flag), sizeof flag);
    if (!f) throw std::runtime_error("pic checkpoint: write failed on " + path);
}

PicState load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("pic checkpoint: cannot open " + path);
    char magic[8];
    f.read(magic, sizeof magic);
    if (!f || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw std::runtime_error("pic checkpoint: bad magic in " + path);
    PicState st;
    st.electrons = get_species(f);
    st.ions = get_species(f);
    st.field = get_vec(f);
    f.read(reinterpret_cast<char*>(&st.t), sizeof st.t);
    f.read(reinterpret_cast<char*>(&st.step), sizeof st.step);
    std::uint8_t flag = 0;
    f.read(reinterpret_cast<char*>(&flag), sizeof flag);
    if (!f) throw std::runtime_error("pic checkpoint: truncated file " + path);
    st.velocities_staggered = flag != 0;
    return st;
}

// Comparison against the averaged solution -------------------------------

namespace {

struct IonMetrics {
    double peak = 0.0;       // raw peak density
    double half_width = 0.0; // |x| where density falls to peak / 2
    double slope = 0.0;      // central mean-velocity slope
    double temperature = 0.0;
};

IonMetrics pic_ion_metrics(const std::vector<double>& x, const PicSnapshot& snap) {
    const auto& n = snap.ions.density;
    const auto& v = snap.ions.velocity;
    const auto& T = snap.ions.temperature;
    const std::size_t c = x.size() / 2; // node at x = 0
    IonMetrics m;

    // Even-symmetrized density on the positive half-line.
    std::vector<double> ns(x.size() - c);
    for (std::size_t k = 0; k < ns.size(); ++k)
        ns[k] = 0.5 * (n[c + k] + n[c - k]);
    m.peak = *std::max_element(ns.begin(), ns.begin() + ns.size() / 2);

    for (std::size_t k = 1; k < ns.size(); ++k) {
        if (ns[k] <= 0.5 * m.peak) {
            const double f = (0.5 * m.peak - ns[k - 1]) / (ns[k] - ns[k - 1]);
            m.half_width = x[c + k - 1] + f * (x[c + k] - x[c + k - 1]);
            break;
        }
    }

    // Density-weighted LSQ slope through the origin and central
    // temperature, both over the core half of the bunch.
    double sxv = 0.0, sxx = 0.0, stw = 0.0, st_acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (std::abs(x[j]) > 0.7 * m.half_width) continue;
        sxv += n[j] * x[j] * v[j];
        sxx += n[j] * x[j] * x[j];
        if (std::abs(x[j]) <= 0.5 * m.half_width) {
            st_acc += n[j] * T[j];
            stw += n[j];
        }
    }
    m.slope = (sxx > 0.0) ? sxv / sxx : 0.0;
    m.temperature = (stw > 0.0) ? st_acc / stw : 0.0;
    return m;
}

IonMetrics reference_ion_metrics(const FieldFunctions& fields, double tau) {
    IonMetrics m;
    const double x0 = 0.02; // innermost label for central quantities
    const auto center = ion_diagnostics(x0, tau, fields);
    m.peak = center.n_av;
    m.slope = center.v_av / center.x_bar;
    m.temperature = center.T;

    // Walk labels outward until the averaged density halves.
    double prev_n = center.n_av, prev_x = center.x_bar;
    for (double xp = x0;; xp += 0.02) {
        const auto d = ion_diagnostics(xp, tau, fields);
        if (d.n_av <= 0.5 * m.peak) {
            const double f = (0.5 * m.peak - prev_n) / (d.n_av - prev_n);
            m.half_width = prev_x + f * (d.x_bar - prev_x);
            break;
        }
        prev_n = d.n_av;
        prev_x = d.x_bar;
    }
    return m;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace

std::vector<SlowComparison> compare_slow(const PicResult& pic, const FieldFunctions& fields,
                                         const std::vector<double>& taus) {
    if (pic.snapshots.empty()) throw std::invalid_argument("compare_slow: no snapshots");
    const double mu = fields.params.mu;
    if (mu <= 0.0) throw std::invalid_argument("compare_slow: needs mu > 0");

    const IonMetrics pic0 = pic_ion_metrics(pic.grid, pic.snapshots.front());
    const IonMetrics ref0 = reference_ion_metrics(fields, 0.0);

    double cadence = 0.0;
    for (std::size_t i = 1; i < pic.snapshots.size(); ++i)
        cadence = std::max(cadence, pic.snapshots[i].tau - pic.snapshots[i - 1].tau);

    std::vector<SlowComparison> out;
    for (double tau : taus) {
        const PicSnapshot* best = nullptr;
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& s : pic.snapshots) {
            if (std::abs(s.tau - tau) < dist) {
                dist = std::abs(s.tau - tau);
                best = &s;
            }
        }
        if (dist > 0.5 * cadence + 1e-12)
            throw std::invalid_argument("compare_slow: no snapshot near requested tau");

        SlowComparison cmp;
        cmp.tau = best->tau;
        const IonMetrics got = pic_ion_metrics(pic.grid, *best);
        const IonMetrics want = reference_ion_metrics(fields, best->tau);
        cmp.half_width_pic = got.half_width;
        cmp.half_width_ref = want.half_width;
        cmp.half_width_err = rel_err(got.half_width, want.half_width);
        cmp.peak_pic = got.peak / pic0.peak;
        cmp.peak_ref = want.peak / ref0.peak;
        cmp.peak_err = rel_err(cmp.peak_pic, cmp.peak_ref);
        cmp.slope_pic = got.slope;
        cmp.slope_ref = want.slope;
        cmp.slope_err = rel_err(got.slope, want.slope);
        cmp.temperature_pic = (pic0.temperature > 0.0) ? got.temperature / pic0.temperature : 0.0;
        cmp.temperature_ref = want.temperature / std::max(ref0.temperature, 1e-300);
        cmp.temperature_err = rel_err(cmp.temperature_pic, cmp.temperature_ref);
        out.push_back(cmp);
    }
    return out;
}

} // namespace plexp
