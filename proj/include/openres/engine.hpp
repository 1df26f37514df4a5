#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "openres/disk.hpp"
#include "openres/mirror.hpp"
#include "openres/numerics.hpp"
#include "openres/slab.hpp"
#include "openres/types.hpp"

namespace openres::engine {

// Common view of the three resonators. Positions are x in [-l, 0] (interior) / x > 0
// (exterior) for the 1D models and the radius r for the disk; disk functions are the radial
// parts of angular channel m.
class Resonator {
public:
    virtual ~Resonator() = default;

    virtual std::string name() const = 0;
    virtual std::string describe() const = 0;
    virtual double extent() const = 0;
    // position of the separating surface
    virtual double surface() const = 0;
    virtual bool radial() const = 0;
    virtual std::vector<int> channels(double k) const;
    virtual double threshold(int channel) const;
    virtual int first_mode_index() const = 0;
    // u = mu / interior_index inside the cavity
    virtual double interior_index() const = 0;

    virtual cplx s_matrix(int channel, double k) const = 0;
    virtual cplx mode_strength(int channel, double k) const = 0;
    virtual cplx exact_field(int channel, double k, double x) const = 0;
    virtual double cavity_k(int channel, int lambda) const = 0;
    virtual double cavity_mode(int channel, int lambda, double x) const = 0;
    virtual cplx channel_mode(int channel, double k, double x) const = 0;
    virtual cplx coupling_w(int channel, int lambda, double k) const = 0;
    virtual cplx coupling_v(int channel, int lambda, double k) const = 0;
    virtual cplx alpha(int channel, int lambda, double k) const = 0;
    // sum over lambda of |alpha|^2 including the tail beyond lambda_max
    virtual double alpha_sq_sum(int channel, double k, int lambda_max) const = 0;
    virtual std::optional<BetaKernel> beta(double k) const = 0;

    // model resonance condition and the S-matrix denominator (entire in k)
    virtual cplx secular(int channel, cplx k) const = 0;
    virtual cplx s_pole(int channel, cplx k) const = 0;
    // interior profile of the resonance state at complex k (unnormalized)
    virtual cplx resonance_shape(int channel, cplx k, double x) const = 0;

    virtual double gain_closed(double k) const = 0;
    virtual double ldos_cavity(double k) const = 0;
    virtual double ldos_free(double k) const = 0;

    // effective-operator secular function F(sigma; k, t), t = 0 the closed cavity
    virtual bool has_sigma() const { return false; }
    virtual cplx sigma_secular(cplx sigma, cplx k, double t) const;
    virtual double sigma_seed(int j) const;
    virtual double sigma_spacing() const;
};

std::unique_ptr<Resonator> make_slab(const slab::SlabParams& p, slab::Bc bc);
std::unique_ptr<Resonator> make_mirror(const mirror::MirrorParams& p);
std::unique_ptr<Resonator> make_disk(const disk::DiskParams& p);

// ---- reconstruction -----------------------------------------------------

struct ModeWindow {
    double center_k = 0.0;
    int count = 11;
};

// indices of the `count` cavity modes closest to center_k, ascending
std::vector<int> select_modes(const Resonator& model, int channel, const ModeWindow& w);

struct FieldSamples {
    std::vector<double> grid;
    std::vector<cplx> values;
    Side region = Side::Interior;
    double surface = 0.0;
    double extent = 1.0;
    bool radial = false;
};

std::vector<double> interior_grid(const Resonator& model, int points);
std::vector<double> exterior_grid(const Resonator& model, int points, double span);

FieldSamples exact_samples(const Resonator& model, int channel, double k, const std::vector<double>& grid);
FieldSamples reconstruct_interior(const Resonator& model, int channel, double k, const ModeWindow& w,
                                  const std::vector<double>& grid);
FieldSamples reconstruct_exterior(const Resonator& model, double k, double quad_tol,
                                  const std::vector<double>& grid);

// ||a - b|| / ||a|| over the grid minus a layer of exclusion * extent at the surface
double l2_error(const FieldSamples& a, const FieldSamples& b, double exclusion = 0.02);

// ---- resonances ---------------------------------------------------------

struct Resonance {
    cplx kc;
    double secular_residual;
    double s_pole_residual;
    int channel;
};

struct ResonanceSearch {
    std::vector<Resonance> roots;
    int winding = 0;
    bool audit_ok = false;
};

ResonanceSearch find_resonances(const Resonator& model, int channel, const numerics::SearchRegion& region,
                                int max_roots = 64);

class BranchJumpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sigma_j(k) on the branch continued from the closed-cavity ladder
cplx sigma_eigenvalue(const Resonator& model, int j, cplx k);
// fixed point sigma_j(k) = k
cplx sigma_fixed_point(const Resonator& model, int j, double k_real, double tol = 1e-12);

// resonance eigenfunction on the interior grid, scaled to max |value| = 1
FieldSamples resonance_eigenfunction(const Resonator& model, int channel, cplx kc,
                                     const std::vector<double>& grid);

// ---- gain ---------------------------------------------------------------

double gain_via_alpha(const Resonator& model, double k, int lambda_max = 400);

// ---- tables -------------------------------------------------------------

struct CouplingRow {
    int lambda;
    int channel;
    int coupled_channel;
    std::vector<cplx> values;
};

struct HamiltonianTables {
    std::vector<double> k_grid;
    std::vector<double> omega_lambda;  // per (channel, lambda) in row order
    std::vector<double> thresholds;
    std::vector<CouplingRow> w, v;
};

HamiltonianTables hamiltonian_tables(const Resonator& model, const std::vector<double>& k_grid,
                                     const std::vector<int>& channels, int modes_per_channel);

// ---- oracles ------------------------------------------------------------

// overlap quadrature of n mu_lambda with the exact field
cplx oracle_alpha(const Resonator& model, int channel, int lambda, double k);
// unit-norm check: <mu_a, mu_b> by quadrature
double oracle_mode_overlap(const Resonator& model, int channel, int a, int b);

enum class GreenChannel { Dirichlet, Neumann, Mirror, Disk };

struct GreenSpec {
    GreenChannel type = GreenChannel::Neumann;
    double eta = 0.0;
    disk::DiskParams disk{};
    int m = 0;
};

const char* green_name(GreenChannel g);
cplx greens_closed(const GreenSpec& g, double k, double x, double xp);
cplx greens_numeric(const GreenSpec& g, double k, double x, double xp, double quad_tol);

}  // namespace openres::engine
