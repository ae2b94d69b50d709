#include "roughhj/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughhj {

namespace {

// convex mirror of a concave catalog Hamiltonian
Hamiltonian convex_mirror(const Hamiltonian& H) {
    switch (H.form()) {
    case Hamiltonian::Form::NegAbs:
        return Hamiltonian::abs();
    case Hamiltonian::Form::Quadratic:
        return Hamiltonian::quadratic(-H.param());
    default:
        throw std::invalid_argument("convex_mirror: unsupported concave form");
    }
}

GridFn pad_grid(const GridFn& u, int pad) {
    if (u.boundary() == Boundary::Periodic || pad <= 0)
        return u;
    std::vector<double> v(u.size() + 2 * pad);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        v[i] = u.at(i - pad);
    return GridFn(u.origin() - pad * u.step(), u.step(), std::move(v), u.boundary());
}

GridFn restrict_grid(const GridFn& u, const GridFn& like) {
    if (u.size() == like.size() && u.origin() == like.origin())
        return u;
    const int off = static_cast<int>(std::llround((like.origin() - u.origin()) / u.step()));
    std::vector<double> v(like.size());
    for (int i = 0; i < like.size(); ++i)
        v[i] = u[off + i];
    return GridFn(like.origin(), like.step(), std::move(v), like.boundary());
}

} // namespace

GridFn op_forward(const Hamiltonian& H, double a, const GridFn& u) {
    if (a == 0.0)
        return u;
    if (!(a > 0.0))
        throw std::invalid_argument("op_forward: duration must be >= 0");
    if (H.is_convex())
        return sup_transform(u, conjugate_kernel(H, a, u.lipschitz()));
    if (H.is_concave())
        return op_backward(convex_mirror(H), a, u);
    throw std::invalid_argument("op_forward: H must be convex or concave; use the schemes module");
}

GridFn op_backward(const Hamiltonian& H, double a, const GridFn& u) {
    if (a == 0.0)
        return u;
    if (!(a > 0.0))
        throw std::invalid_argument("op_backward: duration must be >= 0");
    if (H.is_convex())
        return inf_transform(u, conjugate_kernel(H, a, u.lipschitz()));
    if (H.is_concave())
        return op_forward(convex_mirror(H), a, u);
    throw std::invalid_argument("op_backward: H must be convex or concave; use the schemes module");
}

namespace {

GridFn apply_increments(const std::vector<Hamiltonian>& hams, const std::vector<double>& deltas,
                        GridFn u) {
    // direction each component pushes its operator in
    int dir = 0;
    for (std::size_t c = 0; c < hams.size(); ++c) {
        if (deltas[c] == 0.0)
            continue;
        const double signed_dir = hams[c].is_convex() ? deltas[c] : -deltas[c];
        const int d = signed_dir > 0.0 ? +1 : -1;
        if (dir == 0)
            dir = d;
        else if (dir != d)
            throw std::invalid_argument(
                "solve_exact: mixed-direction increments on one segment have no exact "
                "composition; use the schemes module");
    }
    for (std::size_t c = 0; c < hams.size(); ++c) {
        const double d = deltas[c];
        if (d == 0.0)
            continue;
        u = d > 0.0 ? op_forward(hams[c], d, u) : op_backward(hams[c], -d, u);
    }
    return u;
}

void validate_spec(const PathwiseSolveSpec& spec) {
    if (spec.method != SolveMethod::ExactComposition)
        throw std::invalid_argument("solve_exact: spec requests the scheme fallback");
    if (static_cast<int>(spec.hamiltonians.size()) != spec.path.components())
        throw std::invalid_argument("solve_exact: one Hamiltonian per path component required");
    if (spec.horizon > spec.path.horizon() * (1.0 + 1e-12))
        throw std::invalid_argument("solve_exact: horizon exceeds the path");
    for (const auto& H : spec.hamiltonians)
        if (!H.is_convex() && !H.is_concave())
            throw std::invalid_argument(
                "solve_exact: nonconvex Hamiltonian without usable split; use the schemes module");
}

int padding_cells(const PathwiseSolveSpec& spec) {
    if (spec.u0.boundary() == Boundary::Periodic)
        return 0;
    const double lip = spec.u0.lipschitz() + 1.0;
    double reach = 0.0;
    for (int c = 0; c < spec.path.components(); ++c)
        reach += spec.hamiltonians[c].lipschitz(lip) *
                 spec.path.total_variation(c, 0.0, spec.horizon);
    return static_cast<int>(std::ceil(reach / spec.u0.step())) + 2;
}

} // namespace

GridFn solve_exact(const PathwiseSolveSpec& spec) {
    validate_spec(spec);
    const Path p = spec.path.horizon() > spec.horizon ? spec.path.restrict(spec.horizon)
                                                      : spec.path;
    GridFn u = pad_grid(spec.u0, padding_cells(spec));
    const auto& t = p.times();
    std::vector<double> deltas(p.components());
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        for (int c = 0; c < p.components(); ++c)
            deltas[c] = p.component(c)[k + 1] - p.component(c)[k];
        u = apply_increments(spec.hamiltonians, deltas, std::move(u));
    }
    return restrict_grid(u, spec.u0);
}

std::vector<std::pair<double, GridFn>> solve_exact_trajectory(const PathwiseSolveSpec& spec) {
    validate_spec(spec);
    const Path p = spec.path.horizon() > spec.horizon ? spec.path.restrict(spec.horizon)
                                                      : spec.path;
    GridFn u = pad_grid(spec.u0, padding_cells(spec));
    std::vector<std::pair<double, GridFn>> out;
    out.emplace_back(0.0, restrict_grid(u, spec.u0));
    const auto& t = p.times();
    std::vector<double> deltas(p.components());
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        for (int c = 0; c < p.components(); ++c)
            deltas[c] = p.component(c)[k + 1] - p.component(c)[k];
        u = apply_increments(spec.hamiltonians, deltas, std::move(u));
        out.emplace_back(t[k + 1], restrict_grid(u, spec.u0));
    }
    return out;
}

double oracle_abs(const Path& path, double x, double t) {
    const auto [M, m] = path.running_extrema(0, t);
    (void)m;
    const double xi_t = path.eval(0, t);
    return std::max(std::max(std::abs(x) + xi_t, 0.0), std::max(M, 0.0));
}

GapPair cancellation_check(const Hamiltonian& H, const GridFn& u0, double a) {
    if (!H.is_convex())
        throw std::invalid_argument("cancellation_check: convex H required");
    if (a == 0.0)
        return {0.0, 0.0};
    const int pad = static_cast<int>(std::ceil(2.0 * a * H.lipschitz(u0.lipschitz() + 1.0) /
                                               u0.step())) + 2;
    GridFn w = pad_grid(u0, pad);
    GridFn open = op_forward(H, a, op_backward(H, a, w));
    GridFn close = op_backward(H, a, op_forward(H, a, w));
    GapPair g{-kSentinel, kSentinel};
    const GridFn o = restrict_grid(open, u0), c = restrict_grid(close, u0);
    for (int i = 0; i < u0.size(); ++i) {
        g.lhs_gap = std::max(g.lhs_gap, o[i] - u0[i]);
        g.rhs_gap = std::min(g.rhs_gap, c[i] - u0[i]);
    }
    return g;
}

double composition_identity_check(const Hamiltonian& H, const GridFn& u0, double a, double b,
                                  double c) {
    if (!(b <= std::min(a, c)))
        throw std::invalid_argument("composition_identity_check: need b <= min(a,c)");
    if (!H.is_convex())
        throw std::invalid_argument("composition_identity_check: convex H required");
    const int pad = static_cast<int>(std::ceil((a + b + c + std::abs(a + c - b)) *
                                               H.lipschitz(u0.lipschitz() + 1.0) / u0.step())) + 2;
    GridFn w = pad_grid(u0, pad);
    GridFn lhs = w;
    if (a > 0.0)
        lhs = op_forward(H, a, lhs);
    if (b > 0.0)
        lhs = op_backward(H, b, lhs);
    if (c > 0.0)
        lhs = op_forward(H, c, lhs);
    GridFn rhs = a + c - b > 0.0 ? op_forward(H, a + c - b, w) : w;
    return sup_dist(restrict_grid(lhs, u0), restrict_grid(rhs, u0));
}

FiniteSpeedResult finite_speed_check(const Hamiltonian& H, const GridFn& u0, double plateau_value,
                                     double plateau_radius, const Path& path, double t,
                                     double tol) {
    PathwiseSolveSpec spec{{H}, path, u0, t};
    GridFn u = solve_exact(spec);
    const auto [M, m] = path.running_extrema(0, t);
    const double lipref = u0.lipschitz() + 1.0;
    double L;
    if (H.has_decomposition())
        L = std::max(H.part1().lipschitz(lipref), H.part2().lipschitz(lipref));
    else
        L = H.lipschitz(lipref);
    FiniteSpeedResult res;
    res.bound_radius = plateau_radius - L * (M - m);
    res.vacuous = res.bound_radius <= 0.0;
    const double scale = tol * (1.0 + std::abs(plateau_value));
    // measured radius = largest r with the whole of [-r, r] on the plateau
    int i0 = static_cast<int>(std::llround((0.0 - u.origin()) / u.step()));
    i0 = std::clamp(i0, 0, u.size() - 1);
    double r = 0.0;
    for (int d = 0;; ++d) {
        const int lo = i0 - d, hi = i0 + d;
        if (lo < 0 || hi >= u.size())
            break;
        if (std::abs(u[lo] - plateau_value) > scale || std::abs(u[hi] - plateau_value) > scale)
            break;
        r = u.step() * d;
    }
    res.measured_radius = r;
    return res;
}

StabilityResult path_stability_check(const std::vector<Hamiltonian>& H, const GridFn& u01,
                                     const GridFn& u02, const Path& p1, const Path& p2, double t) {
    PathwiseSolveSpec s1{H, p1, u01, t};
    PathwiseSolveSpec s2{H, p2, u02, t};
    GridFn u1 = solve_exact(s1), u2 = solve_exact(s2);
    StabilityResult r;
    r.measured = sup_dist(u1, u2);
    const double L = std::max(u01.lipschitz(), u02.lipschitz());
    double hmax = 0.0;
    for (const auto& ham : H) {
        double m = 0.0;
        const int probes = 64;
        for (int k = 0; k <= probes; ++k) {
            const double p = -L + 2.0 * L * k / probes;
            m = std::max(m, std::abs(ham.eval(p)));
        }
        hmax = std::max(hmax, m);
    }
    double dpath = 0.0;
    // compare on the union of knot times
    for (int c = 0; c < p1.components(); ++c) {
        for (double s : p1.times())
            if (s <= t)
                dpath = std::max(dpath, std::abs(p1.eval(c, s) - p2.eval(c, std::min(s, p2.horizon()))));
        for (double s : p2.times())
            if (s <= t)
                dpath = std::max(dpath, std::abs(p1.eval(c, std::min(s, p1.horizon())) - p2.eval(c, s)));
    }
    r.bound = static_cast<double>(H.size()) * hmax * dpath + sup_dist(u01, u02);
    return r;
}

double reduced_equivalence_check(const Hamiltonian& H, const GridFn& u0, const Path& path,
                                 double T) {
    PathwiseSolveSpec full{{H}, path, u0, T};
    PathwiseSolveSpec red{{H}, reduce_path(path.restrict(T)), u0, T};
    return sup_dist(solve_exact(full), solve_exact(red));
}

std::vector<DecaySample> lipschitz_decay_check(const Hamiltonian& H, const GridFn& u0,
                                               const Path& path,
                                               const std::vector<double>& times) {
    if (!(H.uniform_convexity() > 0.0))
        throw std::invalid_argument("lipschitz_decay_check: uniformly convex H required");
    if (u0.boundary() != Boundary::Periodic)
        throw std::invalid_argument("lipschitz_decay_check: periodic data required");
    const double theta = H.uniform_convexity();
    std::vector<DecaySample> out;
    for (double t : times) {
        DecaySample s;
        s.time = t;
        const auto [M, m] = path.running_extrema(0, t);
        if (M <= m) {
            s.skipped = true;
            s.measured_lip = u0.lipschitz();
            s.bound = kSentinel;
            out.push_back(s);
            continue;
        }
        s.skipped = false;
        PathwiseSolveSpec spec{{H}, path, u0, t};
        GridFn u = t > 0.0 ? solve_exact(spec) : u0;
        s.measured_lip = u.lipschitz();
        s.bound = std::sqrt(2.0 * u.sup_norm() / (theta * (M - m)));
        out.push_back(s);
    }
    return out;
}

std::vector<LongtimePoint> longtime_experiment(const Path& path, double T, int n) {
    GridFn u0 = GridFn::sample(0.0, 2.0, n, [](double x) { return 1.0 - std::abs(x - 1.0); },
                               Boundary::Periodic);
    PathwiseSolveSpec spec{{Hamiltonian::abs()}, path, u0, T};
    auto traj = solve_exact_trajectory(spec);
    std::vector<LongtimePoint> out;
    for (const auto& [t, u] : traj)
        out.push_back({t, u.max(), u.min(), u.max() - u.min()});
    return out;
}

std::pair<GridFn, GridFn> monotone_segment_sandwich(const std::vector<Hamiltonian>& H,
                                                    const GridFn& u0, const Path& path, double t) {
    GridFn lower = u0, upper = u0;
    for (int c = 0; c < path.components(); ++c) {
        if (!H[c].is_convex())
            throw std::invalid_argument("monotone_segment_sandwich: convex components required");
        // min-normalization offset (catalog components already have min 0)
        const auto [M, m] = path.running_extrema(c, t);
        const double up = std::max(M, 0.0), down = std::max(-m, 0.0);
        if (down > 0.0)
            lower = op_backward(H[c], down, lower);
        if (up > 0.0)
            upper = op_forward(H[c], up, upper);
    }
    return {lower, upper};
}

} // namespace roughhj
