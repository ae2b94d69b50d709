#include "roughhj/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace roughhj {

SemiH SemiH::zero() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

SemiH SemiH::linear() {
    return {[](double u) { return u; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
}

SemiH SemiH::sine() {
    return {[](double u) { return std::sin(u); }, [](double u) { return std::cos(u); },
            [](double u) { return -std::sin(u); }};
}

SemiF SemiF::heat(double nu) {
    if (!(nu > 0.0))
        throw std::invalid_argument("SemiF::heat: nu must be positive");
    return {[nu](double X) { return nu * X; }, nu};
}

SemiF SemiF::min_linear(double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw std::invalid_argument("SemiF::min_linear: coefficients must be >= 0");
    return {[a, b](double X) { return std::min(a * X, b * X); }, std::max(a, b)};
}

FlowTable::FlowTable(double v0, double dv, int nv, double s0, double ds, int ns)
    : v0_(v0), dv_(dv), nv_(nv), s0_(s0), ds_(ds), ns_(ns),
      phi_(static_cast<std::size_t>(nv) * ns), dphi_(phi_.size()), d2phi_(phi_.size()) {}

double FlowTable::at(const std::vector<double>& tab, double v, double s) const {
    if (s < s0_ - 1e-12 || s > s_max() + 1e-12)
        throw std::out_of_range("FlowTable: flow argument outside the tabulated range");
    double fv = (v - v0_) / dv_;
    double fs = (s - s0_) / ds_;
    fv = std::clamp(fv, 0.0, static_cast<double>(nv_ - 1));
    fs = std::clamp(fs, 0.0, static_cast<double>(ns_ - 1));
    const int iv = std::min(static_cast<int>(fv), nv_ - 2);
    const int is = std::min(static_cast<int>(fs), ns_ - 2);
    const double wv = fv - iv, ws = fs - is;
    auto q = [&](int a, int b) { return tab[static_cast<std::size_t>(a) * ns_ + b]; };
    return (1.0 - wv) * ((1.0 - ws) * q(iv, is) + ws * q(iv, is + 1)) +
           wv * ((1.0 - ws) * q(iv + 1, is) + ws * q(iv + 1, is + 1));
}

double FlowTable::phi(double v, double s) const { return at(phi_, v, s); }
double FlowTable::dphi(double v, double s) const { return at(dphi_, v, s); }
double FlowTable::d2phi(double v, double s) const { return at(d2phi_, v, s); }

double FlowTable::phi_inverse(double u, double s) const {
    // bisection in v over the table range
    double lo = v_min(), hi = v_max();
    double flo = phi(lo, s), fhi = phi(hi, s);
    if (u <= flo)
        return lo;
    if (u >= fhi)
        return hi;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid, s) <= u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string FlowTable::to_csv() const {
    std::ostringstream out;
    out << "v,s,phi,dphi,d2phi\n";
    char buf[160];
    for (int iv = 0; iv < nv_; ++iv)
        for (int is = 0; is < ns_; ++is) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", v0_ + dv_ * iv,
                          s0_ + ds_ * is, phi_[static_cast<std::size_t>(iv) * ns_ + is],
                          dphi_[static_cast<std::size_t>(iv) * ns_ + is],
                          d2phi_[static_cast<std::size_t>(iv) * ns_ + is]);
            out << buf;
        }
    return out.str();
}

FlowTable flow_solve(const SemiH& H, double vmin, double vmax, int nv, double smin, double smax,
                     int ns, double ode_step) {
    if (nv < 2 || ns < 2)
        throw std::invalid_argument("flow_solve: need at least a 2x2 table");
    if (!(smin <= 0.0 && smax >= 0.0))
        throw std::invalid_argument("flow_solve: s range must contain 0");
    FlowTable tab(vmin, (vmax - vmin) / (nv - 1), nv, smin, (smax - smin) / (ns - 1), ns);

    // joint RK4 for (Phi, Phi', Phi''):
    //   dPhi   = H(Phi)
    //   dPhi'  = H'(Phi) Phi'
    //   dPhi'' = H''(Phi) Phi'^2 + H'(Phi) Phi''
    auto rhs = [&](double y[3], double out[3]) {
        out[0] = H.f(y[0]);
        out[1] = H.df(y[0]) * y[1];
        out[2] = H.ddf(y[0]) * y[1] * y[1] + H.df(y[0]) * y[2];
    };
    auto rk4 = [&](double y[3], double dt) {
        double k1[3], k2[3], k3[3], k4[3], tmp[3];
        rhs(y, k1);
        for (int i = 0; i < 3; ++i)
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < 3; ++i)
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < 3; ++i)
            tmp[i] = y[i] + dt * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < 3; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };

    const int is0 = static_cast<int>(std::round((0.0 - smin) / tab.ds_));
    for (int iv = 0; iv < nv; ++iv) {
        const double v = vmin + tab.dv_ * iv;
        // integrate upward and downward from s = 0
        for (int dir = -1; dir <= 1; dir += 2) {
            double y[3] = {v, 1.0, 0.0};
            int is = is0;
            tab.phi_[static_cast<std::size_t>(iv) * ns + is0] = v;
            tab.dphi_[static_cast<std::size_t>(iv) * ns + is0] = 1.0;
            tab.d2phi_[static_cast<std::size_t>(iv) * ns + is0] = 0.0;
            while ((dir > 0 && is + 1 < ns) || (dir < 0 && is > 0)) {
                const double target = tab.s0_ + tab.ds_ * (is + dir);
                double s = tab.s0_ + tab.ds_ * is;
                const int sub =
                    std::max(1, static_cast<int>(std::ceil(std::abs(target - s) / ode_step)));
                const double dt = (target - s) / sub;
                for (int k = 0; k < sub; ++k)
                    rk4(y, dt);
                is += dir;
                if (!(y[1] > 0.0))
                    throw std::runtime_error("flow_solve: flow degeneracy (Phi' <= 0) at s = " +
                                             std::to_string(target));
                tab.phi_[static_cast<std::size_t>(iv) * ns + is] = y[0];
                tab.dphi_[static_cast<std::size_t>(iv) * ns + is] = y[1];
                tab.d2phi_[static_cast<std::size_t>(iv) * ns + is] = y[2];
            }
        }
    }
    // monotone in v across the table
    for (int is = 0; is < ns; ++is)
        for (int iv = 0; iv + 1 < nv; ++iv)
            if (tab.phi_[static_cast<std::size_t>(iv) * ns + is] >=
                tab.phi_[static_cast<std::size_t>(iv + 1) * ns + is])
                throw std::runtime_error("flow_solve: table lost monotonicity in v");
    return tab;
}

double TransformedProblem::evaluate(double X, double p, double v, double s) const {
    const double d1 = flow->dphi(v, s);
    const double d2 = flow->d2phi(v, s);
    return F.value(d1 * X + d2 * p * p) / d1;
}

TransformedProblem transform(const SemiF& F, const FlowTable& flow, double box) {
    TransformedProblem tp{F, &flow, {}, };
    // eq-type structure audit: sample D_X F . X - F over [-box, box]
    double lo = 1e300, hi = -1e300;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        const double X = -box + 2.0 * box * i / n;
        const double eps = 1e-6 * (1.0 + std::abs(X));
        const double dF = (F.value(X + eps) - F.value(X - eps)) / (2.0 * eps);
        const double val = dF * X - F.value(X);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    tp.audit = {lo, hi, std::isfinite(lo) && std::isfinite(hi)};
    return tp;
}

SemilinearRun solve_semilinear(const SemiF& F, const SemiH& H, const Path& path, const GridFn& u0,
                               double T, double ode_step) {
    if (u0.boundary() != Boundary::Periodic)
        throw std::invalid_argument("solve_semilinear: periodic grids only");
    if (T > path.horizon() * (1.0 + 1e-12))
        throw std::invalid_argument("solve_semilinear: horizon exceeds the path");

    // flow table over the data range and the realized path range, padded 10%
    auto [Bmax, Bmin] = std::pair<double, double>{};
    {
        auto [M, m] = path.running_extrema(0, T);
        const double pad = 0.1 * std::max(M - m, 0.1);
        Bmax = M + pad;
        Bmin = m - pad;
    }
    const double vpad = 0.2 * std::max(u0.max() - u0.min(), 0.5) + 0.1;
    const double vmin = u0.min() - vpad, vmax = u0.max() + vpad;
    FlowTable flow = flow_solve(H, vmin, vmax, 257, Bmin, Bmax, 129, ode_step);
    TransformedProblem tp = transform(F, flow);

    // v(., 0) = u0 since Phi(v, 0) = v
    GridFn v = u0;
    const double h = u0.step();
    const double dt_cap = 0.4 * h * h / std::max(F.lip, 1e-12);

    SemilinearRun run{u0, {}, {}, Bmin, Bmax};
    auto record = [&](double t) {
        run.times.push_back(t);
        // measured Lipschitz constant of u = Phi(v, B(t))
        const double s = path.eval(0, std::min(t, path.horizon()));
        double lip = 0.0;
        for (int i = 0; i < v.size(); ++i) {
            const double a = flow.phi(v[i], s);
            const double b = flow.phi(v.at(i + 1), s);
            lip = std::max(lip, std::abs(b - a) / h);
        }
        run.lipschitz.push_back(lip);
    };
    record(0.0);

    double t = 0.0;
    const int checkpoints = 32;
    int next_checkpoint = 1;
    while (t < T - 1e-14) {
        const double dt = std::min(dt_cap, T - t);
        const double s = path.eval(0, std::min(t, path.horizon()));
        std::vector<double> vn(v.size());
        for (int i = 0; i < v.size(); ++i) {
            const double vp = v.at(i + 1), vm = v.at(i - 1);
            const double X = (vp + vm - 2.0 * v[i]) / (h * h);
            const double p = (vp - vm) / (2.0 * h);
            vn[i] = v[i] + dt * tp.evaluate(X, p, v[i], s);
        }
        for (int i = 0; i < v.size(); ++i)
            v[i] = vn[i];
        t += dt;
        if (t >= T * next_checkpoint / checkpoints - 1e-14) {
            record(t);
            ++next_checkpoint;
        }
    }

    const double sT = path.eval(0, std::min(T, path.horizon()));
    GridFn u = u0;
    for (int i = 0; i < u.size(); ++i)
        u[i] = flow.phi(v[i], sT);
    run.u = u;
    if (run.times.back() != T)
        record(T);
    return run;
}

LipschitzAudit lipschitz_bound_audit(const SemilinearRun& run) {
    LipschitzAudit a;
    a.times = run.times;
    a.measured = run.lipschitz;
    a.max_measured = *std::max_element(run.lipschitz.begin(), run.lipschitz.end());
    return a;
}

} // namespace roughhj
