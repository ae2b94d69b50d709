#include "roughhj/convex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughhj {

double ConvexHull1D::eval(double x) const {
    if (p.empty())
        throw std::logic_error("ConvexHull1D::eval: empty hull");
    if (p.size() == 1)
        return v[0];
    if (x <= p.front())
        return v[0] + (v[1] - v[0]) / (p[1] - p[0]) * (x - p[0]);
    if (x >= p.back()) {
        const std::size_t n = p.size();
        return v[n - 1] + (v[n - 1] - v[n - 2]) / (p[n - 1] - p[n - 2]) * (x - p[n - 1]);
    }
    auto it = std::upper_bound(p.begin(), p.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - p.begin());
    std::size_t lo = hi - 1;
    const double w = (x - p[lo]) / (p[hi] - p[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
}

double ConvexHull1D::min_slope() const {
    if (p.size() < 2)
        return 0.0;
    return (v[1] - v[0]) / (p[1] - p[0]);
}

double ConvexHull1D::max_slope() const {
    if (p.size() < 2)
        return 0.0;
    const std::size_t n = p.size();
    return (v[n - 1] - v[n - 2]) / (p[n - 1] - p[n - 2]);
}

ConvexHull1D lower_convex_hull(const GridFn& f) {
    ConvexHull1D hull;
    for (int i = 0; i < f.size(); ++i) {
        if (is_sentinel(f[i]))
            continue;
        const double x = f.x(i);
        const double y = f[i];
        while (hull.p.size() >= 2) {
            const std::size_t n = hull.p.size();
            // pop while the last vertex lies on or above the chord
            const double cross = (hull.v[n - 1] - hull.v[n - 2]) * (x - hull.p[n - 2]) -
                                 (y - hull.v[n - 2]) * (hull.p[n - 1] - hull.p[n - 2]);
            if (cross >= 0.0) {
                hull.p.pop_back();
                hull.v.pop_back();
            } else {
                break;
            }
        }
        hull.p.push_back(x);
        hull.v.push_back(y);
    }
    if (hull.p.empty())
        throw std::invalid_argument("lower_convex_hull: no finite nodes");
    return hull;
}

namespace {

GridFn conjugate_on(const ConvexHull1D& hull, double qmin, double qmax, int nq) {
    if (nq < 2)
        throw std::invalid_argument("legendre: need at least two output nodes");
    if (!(qmax > qmin))
        throw std::invalid_argument("legendre: empty slope range");
    const double dq = (qmax - qmin) / (nq - 1);
    std::vector<double> out(nq);
    std::size_t j = 0; // optimizer index is nondecreasing in q
    for (int k = 0; k < nq; ++k) {
        const double q = qmin + dq * k;
        while (j + 1 < hull.p.size() &&
               q * hull.p[j + 1] - hull.v[j + 1] >= q * hull.p[j] - hull.v[j])
            ++j;
        out[k] = q * hull.p[j] - hull.v[j];
    }
    return GridFn(qmin, dq, std::move(out));
}

} // namespace

GridFn legendre(const GridFn& f, double qmin, double qmax, int nq) {
    return conjugate_on(lower_convex_hull(f), qmin, qmax, nq);
}

GridFn legendre(const GridFn& f) {
    ConvexHull1D hull = lower_convex_hull(f);
    double qmin = hull.min_slope();
    double qmax = hull.max_slope();
    if (qmax - qmin < 1e-12) { // nearly affine data
        qmin -= 0.5;
        qmax += 0.5;
    }
    return conjugate_on(hull, qmin, qmax, f.size());
}

GridFn legendre_brute(const GridFn& f, double qmin, double qmax, int nq) {
    const double dq = (qmax - qmin) / (nq - 1);
    std::vector<double> out(nq, -kSentinel);
    for (int k = 0; k < nq; ++k) {
        const double q = qmin + dq * k;
        double best = -kSentinel;
        for (int i = 0; i < f.size(); ++i) {
            if (is_sentinel(f[i]))
                continue;
            best = std::max(best, q * f.x(i) - f[i]);
        }
        out[k] = best;
    }
    return GridFn(qmin, dq, std::move(out));
}

GridFn convex_envelope(const GridFn& f) {
    ConvexHull1D hull = lower_convex_hull(f);
    std::vector<double> out(f.size());
    for (int i = 0; i < f.size(); ++i)
        out[i] = is_sentinel(f[i]) ? f[i] : hull.eval(f.x(i));
    return GridFn(f.origin(), f.step(), std::move(out), f.boundary());
}

GridFn hopf_solve(const Hamiltonian& H, const GridFn& u0, double t) {
    if (!numerically_convex(u0))
        throw std::invalid_argument("hopf_solve: u0 must be convex");
    ConvexHull1D hull = lower_convex_hull(u0);
    double qmin = hull.min_slope(), qmax = hull.max_slope();
    if (qmax - qmin < 1e-12) {
        qmin -= 0.5;
        qmax += 0.5;
    }
    const int np = std::max(u0.size() * 2, 512) | 1; // odd: keeps a collapsed slope on-grid
    GridFn ustar = conjugate_on(hull, qmin, qmax, np);
    std::vector<double> out(u0.size());
    for (int i = 0; i < u0.size(); ++i) {
        const double x = u0.x(i);
        double best = -kSentinel;
        for (int k = 0; k < ustar.size(); ++k) {
            const double p = ustar.x(k);
            best = std::max(best, p * x + t * H.eval(p) - ustar[k]);
        }
        out[i] = best;
    }
    return GridFn(u0.origin(), u0.step(), std::move(out), u0.boundary());
}

GridFn lax_oleinik_solve(const Hamiltonian& H, const GridFn& u0, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("lax_oleinik_solve: t must be positive");
    const double lip = u0.lipschitz();
    if (H.is_convex()) {
        TransformKernel k = conjugate_kernel(H, t, lip);
        return inf_transform(u0, k);
    }
    if (H.is_concave()) {
        // u_t + H(Du) = 0 with H concave equals u_t = G(Du), G = -H convex
        Hamiltonian G = H.form() == Hamiltonian::Form::NegAbs
                            ? Hamiltonian::abs()
                            : Hamiltonian::quadratic(-H.param());
        TransformKernel k = conjugate_kernel(G, t, lip);
        return sup_transform(u0, k);
    }
    throw std::invalid_argument("lax_oleinik_solve: H must be convex or concave");
}

HopfIterate hopf_iterate(const Hamiltonian& H, double delta, int steps, int np, double pmax,
                         double blowup_threshold, bool keep_trajectory) {
    if (!(delta >= 0.0))
        throw std::invalid_argument("hopf_iterate: delta must be >= 0");
    const double dp = 2.0 * pmax / (np - 1);
    std::vector<double> w0(np);
    for (int i = 0; i < np; ++i) {
        const double p = -pmax + dp * i;
        w0[i] = std::abs(p) <= 1.0 ? 0.0 : kSentinel;
    }
    GridFn w(-pmax, dp, std::move(w0));

    HopfIterate res;
    auto record = [&](const GridFn& g) {
        double lo = kSentinel;
        for (int i = 0; i < g.size(); ++i)
            if (!is_sentinel(g[i]))
                lo = std::min(lo, g[i]);
        res.neg_inf.push_back(-lo);
        if (keep_trajectory)
            res.trajectory.push_back(g);
    };
    record(w);
    for (int k = 1; k <= steps; ++k) {
        const double sgn = (k % 2 == 1) ? +1.0 : -1.0;
        std::vector<double> next(w.size());
        bool finite_seen = false;
        for (int i = 0; i < w.size(); ++i) {
            if (is_sentinel(w[i])) {
                next[i] = kSentinel;
            } else {
                next[i] = w[i] + sgn * delta * H.eval(w.x(i));
                if (!std::isfinite(next[i])) {
                    res.blew_up = true;
                    res.blowup_step = k;
                    return res;
                }
                finite_seen = true;
            }
        }
        if (!finite_seen) {
            res.blew_up = true;
            res.blowup_step = k;
            return res;
        }
        w = convex_envelope(GridFn(w.origin(), w.step(), std::move(next)));
        record(w);
        if (res.neg_inf.back() > blowup_threshold) {
            res.blew_up = true;
            res.blowup_step = k;
            return res;
        }
    }
    return res;
}

// ---- transform kernels ----

double TransformKernel::eval(double zv) const {
    switch (type) {
    case Type::Window:
        return std::abs(zv) <= radius ? 0.0 : kSentinel;
    case Type::Quadratic:
        return zv * zv / (2.0 * gamma);
    case Type::PL: {
        if (zv <= z.front() || zv >= z.back())
            return kSentinel;
        auto it = std::upper_bound(z.begin(), z.end(), zv);
        std::size_t hi = static_cast<std::size_t>(it - z.begin());
        std::size_t lo = hi - 1;
        const double w = (zv - z[lo]) / (z[hi] - z[lo]);
        return kz[lo] + w * (kz[hi] - kz[lo]);
    }
    }
    return kSentinel;
}

TransformKernel TransformKernel::mirrored() const {
    TransformKernel m = *this;
    if (type == Type::PL) {
        m.z.assign(z.rbegin(), z.rend());
        for (auto& t : m.z)
            t = -t;
        m.kz.assign(kz.rbegin(), kz.rend());
    }
    return m;
}

TransformKernel conjugate_kernel(const Hamiltonian& H, double a, double data_lip) {
    if (!(a > 0.0))
        throw std::invalid_argument("conjugate_kernel: duration must be positive");
    TransformKernel k;
    switch (H.form()) {
    case Hamiltonian::Form::Abs:
        k.type = TransformKernel::Type::Window;
        k.radius = a;
        return k;
    case Hamiltonian::Form::Quadratic: {
        const double c = H.param();
        if (c == 0.0) { // the zero Hamiltonian: conjugate is the indicator of {0}
            k.type = TransformKernel::Type::Window;
            k.radius = 0.0;
            return k;
        }
        if (!(c > 0.0))
            throw std::invalid_argument("conjugate_kernel: quadratic coefficient must be positive");
        k.type = TransformKernel::Type::Quadratic;
        k.gamma = c * a;
        k.radius = c * a * (data_lip + 1e-9) + 1e-12;
        return k;
    }
    case Hamiltonian::Form::Table: {
        if (!H.is_convex())
            throw std::invalid_argument("conjugate_kernel: table Hamiltonian must be convex");
        const GridFn& tab = *H.table_values();
        GridFn star = legendre(tab, -data_lip - 1.0, data_lip + 1.0, std::max(tab.size(), 256));
        k.type = TransformKernel::Type::PL;
        for (int i = 0; i < star.size(); ++i) {
            k.z.push_back(a * star.x(i));
            k.kz.push_back(a * star[i]);
        }
        k.radius = std::abs(k.z.back());
        k.radius = std::max(k.radius, std::abs(k.z.front()));
        return k;
    }
    default:
        throw std::invalid_argument("conjugate_kernel: unsupported Hamiltonian form");
    }
}

namespace {

// exact sup over one linear segment of the operand minus the kernel
inline void cell_max(const GridFn& u, const TransformKernel& k, double x, double y0, double y1,
                     double& best) {
    if (y1 <= y0)
        return;
    const double u0 = u.eval(y0), u1 = u.eval(y1);
    best = std::max(best, u0 - k.eval(y0 - x));
    best = std::max(best, u1 - k.eval(y1 - x));
    if (k.type == TransformKernel::Type::Quadratic) {
        const double beta = (u1 - u0) / (y1 - y0);
        const double ys = x + beta * k.gamma; // stationary point of linear - quadratic
        if (ys > y0 && ys < y1)
            best = std::max(best, u.eval(ys) - k.eval(ys - x));
    } else if (k.type == TransformKernel::Type::PL) {
        for (double zk : k.z) {
            const double yk = x + zk;
            if (yk > y0 && yk < y1)
                best = std::max(best, u.eval(yk) - k.eval(zk));
        }
    }
}

} // namespace

GridFn sup_transform(const GridFn& u, const TransformKernel& k) {
    const double h = u.step();
    double radius = k.radius;
    if (u.boundary() == Boundary::Periodic) {
        const double period = h * u.size();
        radius = std::min(radius, 0.5 * period);
    }
    const int cells = static_cast<int>(std::ceil(radius / h)) + 1;
    std::vector<double> out(u.size());
    for (int i = 0; i < u.size(); ++i) {
        const double x = u.x(i);
        double best = u[i] - k.eval(0.0);
        const double wlo = x - radius, whi = x + radius;
        for (int j = i - cells; j < i + cells; ++j) {
            const double y0 = std::max(u.x(j), wlo);
            const double y1 = std::min(u.x(j + 1), whi);
            cell_max(u, k, x, y0, y1, best);
        }
        out[i] = best;
    }
    return GridFn(u.origin(), h, std::move(out), u.boundary());
}

GridFn inf_transform(const GridFn& u, const TransformKernel& k) {
    GridFn neg = u.map([](double v) { return -v; });
    GridFn r = sup_transform(neg, k.mirrored());
    return r.map([](double v) { return -v; });
}

} // namespace roughhj
