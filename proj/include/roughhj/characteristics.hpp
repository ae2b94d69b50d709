#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/hamiltonian.hpp"
#include "roughhj/path.hpp"

#include <functional>
#include <vector>

namespace roughhj {

// Characteristic trajectories over an initial grid. Arrays are indexed
// [time step][grid point]; J holds the spatial Jacobian dX/dx computed from
// neighboring trajectories.
struct CharField {
    std::vector<double> x0;
    std::vector<double> times;
    std::vector<std::vector<double>> X, P, U, J;
};

// H(p, x) with the partials needed by the characteristic system.
struct XtHamiltonian {
    std::function<double(double, double)> value; // H(p, x)
    std::function<double(double, double)> dp;    // D_p H
    std::function<double(double, double)> dx;    // D_x H
};

// Spatially homogeneous case: X(x,t) = x - sum_i DH^i(Du0(x)) B_i(t) with P
// frozen; no ODE solve involved.
CharField integrate_homogeneous(const std::vector<Hamiltonian>& H, const GridFn& u0,
                                const Path& path);

// Full (X, P, U) system under fixed-step RK4.
CharField integrate_general(const XtHamiltonian& H, const GridFn& u0, double t_end, double step);

// First time min_x J <= threshold (linear interpolation between stored
// times); returns the horizon when the field never degenerates.
double invertibility_window(const CharField& field, double threshold = 0.5);

// u(x, t) = U(X^{-1}(x, t), t) by monotone inversion; valid strictly before
// the invertibility window.
GridFn smooth_reference_solution(const CharField& field, double t, const GridFn& like);

struct WindowScalingResult {
    std::vector<double> lambdas;
    std::vector<double> t_star;
    double fitted_slope; // of log t* against log lambda
};

// Doubled characteristics for the separated Hamiltonian H(p) + F(x), initial
// momenta P(0) = Q(0) = lambda (x - y); records the first time the doubled
// Jacobian reaches 1/2 for each lambda and fits the decay exponent.
WindowScalingResult window_scaling_experiment(const Hamiltonian& H,
                                              const std::function<double(double)>& F,
                                              const std::function<double(double)>& dF,
                                              const std::vector<double>& lambdas,
                                              double horizon = 2.0, double step = 2e-3,
                                              int grid_n = 33, double box = 1.0);

// first J <= 1/2 time for the doubled system at a single lambda
double doubled_window(const Hamiltonian& H, const std::function<double(double)>& dF,
                      double lambda, double horizon, double step, int grid_n, double box);

} // namespace roughhj
