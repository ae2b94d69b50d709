#pragma once

#include "roughhj/convex.hpp"
#include "roughhj/grid.hpp"
#include "roughhj/hamiltonian.hpp"
#include "roughhj/path.hpp"

#include <utility>
#include <vector>

namespace roughhj {

// Directed exact operators for u_t = +/- H(Du) over duration a > 0, H convex
// (concave H mirrors through the opposite direction).
GridFn op_forward(const Hamiltonian& H, double a, const GridFn& u);
GridFn op_backward(const Hamiltonian& H, double a, const GridFn& u);

enum class SolveMethod { ExactComposition, SchemeFallback };

struct PathwiseSolveSpec {
    std::vector<Hamiltonian> hamiltonians; // one per path component
    Path path;
    GridFn u0;
    double horizon; // <= path.horizon()
    SolveMethod method = SolveMethod::ExactComposition;
};

// Exact solution of du = sum_i H^i(Du) dB_i for piecewise-linear paths by
// composition along knot intervals. Each H^i must be convex or concave, and
// on every knot interval the active components must drive their operators in
// one direction (single-component paths always do).
GridFn solve_exact(const PathwiseSolveSpec& spec);

// value snapshots at the path knot times up to the horizon
std::vector<std::pair<double, GridFn>> solve_exact_trajectory(const PathwiseSolveSpec& spec);

// Closed-form solution of du = |Du| d xi with u0 = |x|:
// max[ (|x| + xi(t))_+ , (max_{0<=s<=t} xi(s))_+ ].
double oracle_abs(const Path& path, double x, double t);

struct GapPair {
    double lhs_gap; // max of S_H(a) S_-H(a) u0 - u0   (should be <= tol)
    double rhs_gap; // min of S_-H(a) S_H(a) u0 - u0   (should be >= -tol)
};

GapPair cancellation_check(const Hamiltonian& H, const GridFn& u0, double a);

// sup | S_H(c) S_-H(b) S_H(a) u0 - S_H(a+c-b) u0 |, requires b <= min(a,c)
double composition_identity_check(const Hamiltonian& H, const GridFn& u0, double a, double b,
                                  double c);

struct FiniteSpeedResult {
    double measured_radius;
    double bound_radius; // R - L (M - m); negative means the contract is vacuous
    bool vacuous;
};

FiniteSpeedResult finite_speed_check(const Hamiltonian& H, const GridFn& u0, double plateau_value,
                                     double plateau_radius, const Path& path, double t,
                                     double tol = 1e-7);

struct StabilityResult {
    double measured;
    double bound;
};

StabilityResult path_stability_check(const std::vector<Hamiltonian>& H, const GridFn& u01,
                                     const GridFn& u02, const Path& p1, const Path& p2, double t);

double reduced_equivalence_check(const Hamiltonian& H, const GridFn& u0, const Path& path,
                                 double T);

struct DecaySample {
    double time;
    double measured_lip;
    double bound;
    bool skipped; // M(t) == m(t)
};

std::vector<DecaySample> lipschitz_decay_check(const Hamiltonian& H, const GridFn& u0,
                                               const Path& path, const std::vector<double>& times);

struct LongtimePoint {
    double time, max_u, min_u, osc;
};

// H = |p| on the 2-periodic tent 1 - |x-1|; records (max, min, osc) along the
// path knots.
std::vector<LongtimePoint> longtime_experiment(const Path& path, double T, int n = 1024);

// monotone-segment sandwich for min-normalized convex components:
// prod_i S_{-H^i}(max B_i^-) u0  and  prod_i S_{H^i}(max B_i^+) u0
std::pair<GridFn, GridFn> monotone_segment_sandwich(const std::vector<Hamiltonian>& H,
                                                    const GridFn& u0, const Path& path, double t);

} // namespace roughhj
