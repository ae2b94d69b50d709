#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/path.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace roughhj {

// Flux descriptor with the Engquist-Osher splitting A = A+ + A-,
// (A+)' = max(A', 0), (A-)' = min(A', 0), A+-(0) = 0.
struct FluxA {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> plus;
    std::function<double(double)> minus;
    std::string name;

    static FluxA burgers();           // u^2/2
    static FluxA cubic();             // u^3/3 - u (nonconvex)
    static FluxA linear(double c);    // c u
    static FluxA table(GridFn a_of_u); // tabulated A' with numeric splitting
};

// Cell-average field on a uniform grid; periodic or compactly supported
// (zero ghost states).
struct ConservedField {
    double x0 = 0.0, h = 0.0;
    std::vector<double> u;
    bool periodic = true;
    double time = 0.0;

    static ConservedField sample(double a, double b, int n,
                                 const std::function<double(double)>& f, bool periodic = true);
    double mass() const;
    double tv() const;
    double lp_norm(double p) const;   // (sum |u|^p h)^{1/p}
    double max() const;
    double min() const;
    double x(int i) const { return x0 + h * (i + 0.5); }
};

double l1_dist(const ConservedField& a, const ConservedField& b);

// One conservative Engquist-Osher step for u_t + orientation * A(u)_x = 0.
ConservedField entropy_step(const FluxA& A, const ConservedField& u, double dt, int orientation);

// Pathwise solve of du + A(u)_x . dB = 0 by monotone-segment time change;
// substeps satisfy the hyperbolic CFL with safety 0.9.
ConservedField pathwise_scl_solve(const FluxA& A, const Path& path, const ConservedField& u0,
                                  double T);

// snapshots at the path knots
std::vector<std::pair<double, ConservedField>> pathwise_scl_trajectory(const FluxA& A,
                                                                       const Path& path,
                                                                       const ConservedField& u0,
                                                                       double T);

struct KineticDensity {
    double xi0 = 0.0, dxi = 0.0;
    int nxi = 0;
    std::vector<signed char> chi; // [cell * nxi + k]
    double xi(int k) const { return xi0 + dxi * (k + 0.5); }
};

// chi(x, xi) = +1 on 0 <= xi <= u(x), -1 on u(x) <= xi <= 0, else 0,
// cell-sampled on a xi grid covering [-max|u|, max|u|]
KineticDensity kinetic_density(const ConservedField& u, double xi_lo, double xi_hi, int nxi);

// integral of chi over xi (recovers u within the xi resolution)
double kinetic_reconstruct(const KineticDensity& k, int cell);

struct DefectEstimate {
    double total;                  // entropy dissipation of S(u) = u^2/2
    std::vector<double> xi;        // Kruzkov levels
    std::vector<double> profile;   // per-level accumulated dissipation (>= 0)
};

// entropy-dissipation bookkeeping along a trajectory
DefectEstimate defect_estimate(const std::vector<std::pair<double, ConservedField>>& traj,
                               int levels = 33);

struct KineticTransportReport {
    double max_drop;        // worst decrease of the entropy-averaged kernel integral
    double correction;      // a'-term bound that licenses the drop
    double defect_lb;       // implied lower bound on the defect mass
};

KineticTransportReport kinetic_transport_check(const FluxA& A,
                                               const std::vector<std::pair<double, ConservedField>>& traj,
                                               const Path& path, double kernel_width,
                                               int y_samples = 17, int nxi = 65);

struct ContractionReport {
    double l1_gap;          // ||u2 - u1||_1(T) - ||u20 - u10||_1  (same path)
    double lp_gaps[3];      // growth of the L1, L2, Linf norms of u1
    double tv_gap;          // TV(u1(T)) - TV(u10)
};

ContractionReport contraction_suite(const FluxA& A, const Path& path, const ConservedField& u10,
                                    const ConservedField& u20, double T);

struct PathStabilityReport {
    double measured_l1;     // ||u2(T) - u1(T)||_1 for different paths
    double term_bv;         // ||a|| (|u10|_BV + |u20|_BV) |(B1-B2)(T)|
    double term_sqrt;       // (sup|B1-B2| ||a'|| (||u10||_2^2 + ||u20||_2^2))^{1/2}
};

PathStabilityReport scl_path_stability(const FluxA& A, const Path& p1, const Path& p2,
                                       const ConservedField& u10, const ConservedField& u20,
                                       double T, double a_sup, double da_sup);

} // namespace roughhj
