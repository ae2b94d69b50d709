#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/path.hpp"

#include <functional>
#include <string>
#include <vector>

namespace roughhj {

// scalar noise coefficient H(u) with the derivatives the flow ODEs need
struct SemiH {
    std::function<double(double)> f, df, ddf;
    static SemiH zero();
    static SemiH linear();  // H(u) = u
    static SemiH sine();    // H(u) = sin u
};

// degenerate elliptic F acting on the second derivative (1D heat-type forms)
struct SemiF {
    std::function<double(double)> value; // F(X), nondecreasing
    double lip = 0.0;                    // ||F'||
    static SemiF heat(double nu);
    static SemiF min_linear(double a, double b); // min(a X, b X), a,b >= 0
};

// Tabulated noise-ODE flow: Phi(v, s) solves dPhi/ds = H(Phi), Phi(v,0) = v,
// with Phi' and Phi'' (v-derivatives) carried by the variational ODEs rather
// than differencing.
class FlowTable {
  public:
    FlowTable(double v0, double dv, int nv, double s0, double ds, int ns);

    double v_min() const { return v0_; }
    double v_max() const { return v0_ + dv_ * (nv_ - 1); }
    double s_min() const { return s0_; }
    double s_max() const { return s0_ + ds_ * (ns_ - 1); }

    double phi(double v, double s) const;
    double dphi(double v, double s) const;
    double d2phi(double v, double s) const;

    // inverse in v at fixed s (Phi is strictly increasing in v)
    double phi_inverse(double u, double s) const;

    std::string to_csv() const;

    friend FlowTable flow_solve(const SemiH& H, double vmin, double vmax, int nv, double smin,
                                double smax, int ns, double ode_step);

  private:
    double at(const std::vector<double>& tab, double v, double s) const;
    double v0_, dv_;
    int nv_;
    double s0_, ds_;
    int ns_;
    std::vector<double> phi_, dphi_, d2phi_; // [iv * ns + is]
};

FlowTable flow_solve(const SemiH& H, double vmin, double vmax, int nv, double smin, double smax,
                     int ns, double ode_step = 1e-3);

struct StructureAudit {
    double lower_bound; // inf over the sample box of D_X F . X - F
    double upper_bound; // sup of the same
    bool one_sided;     // some one-sided constant exists on the box
};

struct TransformedProblem {
    SemiF F;
    const FlowTable* flow;
    StructureAudit audit;
    // tilde F(X, p, v, s) = (1/Phi') F(Phi' X + Phi'' p^2)
    double evaluate(double X, double p, double v, double s) const;
};

TransformedProblem transform(const SemiF& F, const FlowTable& flow, double box = 10.0);

struct SemilinearRun {
    GridFn u;                        // u(., T)
    std::vector<double> times;       // sampled times
    std::vector<double> lipschitz;   // measured ||Du(., t)|| along the run
    double flow_s_min, flow_s_max;   // realized flow-argument range
};

// u = Phi(v, B(t)) with v solved by the explicit monotone scheme for
// v_t = tilde F(v_xx, v_x, v, B(t)) on a periodic grid.
SemilinearRun solve_semilinear(const SemiF& F, const SemiH& H, const Path& path, const GridFn& u0,
                               double T, double ode_step = 1e-3);

struct LipschitzAudit {
    std::vector<double> times;
    std::vector<double> measured;
    double max_measured;
};

LipschitzAudit lipschitz_bound_audit(const SemilinearRun& run);

} // namespace roughhj
