#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/hamiltonian.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace roughhj {

// Large sentinel standing in for +infinity on grids. Propagated through
// max/min, excluded from envelope and conjugate vertex sets.
inline constexpr double kSentinel = 1e12;

inline bool is_sentinel(double v) { return v >= 0.5 * kSentinel; }

// Lower convex hull of the finite nodes of f, as a piecewise-linear function
// given by its vertex list (p, value), slopes nondecreasing.
struct ConvexHull1D {
    std::vector<double> p, v;
    double eval(double x) const;
    double min_slope() const;
    double max_slope() const;
};

ConvexHull1D lower_convex_hull(const GridFn& f);

// Discrete Legendre transform f*(q) = max_p (qp - f(p)) over the grid of f.
// The default q-grid spans the hull slope range with f.size() nodes.
GridFn legendre(const GridFn& f);
GridFn legendre(const GridFn& f, double qmin, double qmax, int nq);

// O(n^2) conjugate used as the oracle in tests; same semantics as legendre.
GridFn legendre_brute(const GridFn& f, double qmin, double qmax, int nq);

// Largest convex minorant restricted to the grid (= f** on the grid).
GridFn convex_envelope(const GridFn& f);

// Hopf formula for u_t = H(Du), valid for convex u0 and arbitrary H; t may
// have either sign.
GridFn hopf_solve(const Hamiltonian& H, const GridFn& u0, double t);

// Lax-Oleinik formula for u_t + H(Du) = 0 with t > 0: inf-form for convex H,
// sup-form for concave H.
GridFn lax_oleinik_solve(const Hamiltonian& H, const GridFn& u0, double t);

struct HopfIterate {
    std::vector<double> neg_inf; // m_k = -inf over the finite region, k = 0..steps
    std::vector<GridFn> trajectory;
    bool blew_up = false;
    int blowup_step = -1;
};

// Alternating Hopf iteration w_{2k+1} = (w_{2k} + delta H)**,
// w_{2k} = (w_{2k-1} - delta H)**, started from the indicator of the unit
// ball (0 inside, sentinel outside), on a p-grid of np nodes over [-pmax, pmax].
HopfIterate hopf_iterate(const Hamiltonian& H, double delta, int steps, int np = 4097,
                         double pmax = 1.25, double blowup_threshold = 1e9,
                         bool keep_trajectory = false);

// ---- directed transform kernels (shared by the solution operators) ----

// k(z) = a H*(z/a) for the duration-a conjugate kernel of a convex H.
struct TransformKernel {
    enum class Type { Window, Quadratic, PL };
    Type type = Type::Window;
    double radius = 0.0; // search radius; Window: exact half-width
    double gamma = 0.0;  // Quadratic: k(z) = z^2 / (2 gamma)
    std::vector<double> z, kz; // PL knots (convex in z)

    double eval(double zv) const;
    TransformKernel mirrored() const;
};

// kernel for S_H(a) with H convex and a > 0; data_lip bounds the slopes of
// the operand (confines the optimizer, per finite speed of propagation)
TransformKernel conjugate_kernel(const Hamiltonian& H, double a, double data_lip);

// v(x) = sup_{|y-x| <= radius} [ u(y) - k(y-x) ], u read as its
// piecewise-linear interpolant; exact per-cell optimization.
GridFn sup_transform(const GridFn& u, const TransformKernel& k);

// v(x) = inf_{|y-x| <= radius} [ u(y) + k(x-y) ]
GridFn inf_transform(const GridFn& u, const TransformKernel& k);

} // namespace roughhj
