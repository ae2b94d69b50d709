#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/hamiltonian.hpp"
#include "roughhj/path.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace roughhj {

// Everything one scheme run needs: mesh, viscosity weight, CFL ratio,
// partition and the approximating path whose knots are compatible with the
// partition blocks.
struct SchemeConfig {
    double h = 0.0;
    double theta = 1.0;
    double lambda = 0.0;   // realized CFL ratio
    double eps_h = 0.0;    // artificial viscosity for the second-order operator
    double rho = 0.0;      // partition cell length (after whole-block tiling)
    double rho_star = 0.0; // root of the defining CFL equation, before tiling
    int block_cells = 1;   // M_h: cells per path-interpolation block
    std::vector<double> partition;
    Path path_h = Path::zero(1.0);
    int dim = 1;
    Boundary boundary = Boundary::LinearExtension;
    double lipschitz_H = 1.0; // ||H'|| used in the CFL
};

struct SchemeDiagnostics {
    double max_increment = 0.0;    // largest per-cell |dB|
    double min_margin = 1e300;     // smallest CFL slack seen
    int steps = 0;
};

struct SchemeRun {
    SchemeConfig config;
    std::vector<std::pair<double, GridFn>> snapshots; // requested times + block edges
    SchemeDiagnostics diagnostics;
};

// One first-order monotone step: u + sum_i H^i(central slope) dB_i + theta/2
// second difference. CFL: sum_i L_i |dB_i| <= theta h (checked, refusal on
// violation).
GridFn lf_step_first_order(const GridFn& u, const std::vector<Hamiltonian>& H,
                           const std::vector<double>& dB, double theta);

// Second-order operator: adds [F(second difference) + eps_h * second
// difference] * dt; F is 1D (heat-type) with a known Lipschitz bound.
struct FluxF {
    std::function<double(double)> value; // F(r), degenerate elliptic: F' >= 0
    double lip = 0.0;                    // ||F'||
};

GridFn lf_step_second_order(const GridFn& u, const std::vector<Hamiltonian>& H,
                            const std::vector<double>& dB, double dt, const FluxF& F,
                            double eps_h);

// dimension-by-dimension variant for a single two-argument Hamiltonian
struct Hamiltonian2 {
    std::function<double(double, double)> value;
    double lip_x = 1.0, lip_y = 1.0;
};

Grid2 lf_step_2d(const Grid2& u, const Hamiltonian2& H, double dB, double theta);

// Partition + approximating-path builders. Blocks of M_h = floor(rho^-1/2)
// cells carry a linear interpolation of the input path; rho is then shrunk a
// hair so whole blocks tile [0, T].
SchemeConfig build_partition_cts(const Path& path, double h, double theta, double L);
SchemeConfig build_partition_brownian(const Path& path, double h, double theta, double L);
SchemeConfig build_random_walk(std::uint64_t seed, double h, double theta, double L, double T);

// empirical modulus of continuity of a piecewise-linear path at dyadic lags,
// upper-enveloped to be nondecreasing
std::vector<std::pair<double, double>> empirical_modulus(const Path& path, int levels = 20);

SchemeRun evolve(const SchemeConfig& cfg, const std::vector<Hamiltonian>& H, const GridFn& u0,
                 double T, const std::vector<double>& snapshot_times = {});

// sup over one partition block of |(S_h(t,s) Phi(s) - Phi(t)) / (t - s)|
// against the F-term (F = 0 for the first-order operator): the consistency
// defect on a smooth trajectory.
double consistency_probe(const SchemeConfig& cfg, const std::vector<Hamiltonian>& H,
                         const std::vector<std::pair<double, GridFn>>& phi, const FluxF* F);

struct RatePoint {
    double h, rho, sup_error, normalized;
};

struct RateResult {
    std::vector<RatePoint> table;
    double fitted_slope; // log sup_error against log h
};

enum class PartitionRule { Continuous, Brownian };

// sup-error harness on the problem du = |Du| dxi, u0 = |x| with the exact
// formula as oracle; normalization h^{1/3} |log h|^{1/3} for Brownian runs.
RateResult rate_harness_abs(const Path& path, const std::vector<double>& hs, double theta,
                            PartitionRule rule, double box = 0.0);

struct RandomWalkHarness {
    std::vector<double> errors;      // per-seed sup error vs the exact solve
                                     // driven by the same realized walk
    double quantiles[3];             // 25/50/75 percentiles
    std::vector<double> brownian_ref; // same measurement for Brownian-driven runs
    double ref_quantiles[3];
};

// error distribution of random-walk-driven runs, each measured against the
// exact operator fed the identical realized path (separating scheme error
// from path error), with a Brownian-driven reference family for comparison
RandomWalkHarness random_walk_harness(int seeds, double h, double theta, double T);

struct GassiatResult {
    double value;          // u(0,0,T) under the oscillating path
    double control_raw;    // u(0,0,T) under the monotone control path
    double control_base;   // zero-path baseline with the same step count
    double control_excess; // control_raw - control_base
    double h;
};

// 2D experiment for H(p,q) = |p| - |q|: an oscillating path with total
// variation R + n (n teeth of unit excess) drives u(0,0,T) up to ~1, while a
// monotone path with TV <= R produces no path-driven growth at the origin.
GassiatResult gassiat_experiment(double R, int teeth, double h, double theta, double box = 0.0);

} // namespace roughhj
