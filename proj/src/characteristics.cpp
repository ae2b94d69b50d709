#include "roughhj/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughhj {

namespace {

std::vector<double> central_gradient(const GridFn& u) {
    std::vector<double> g(u.size());
    const double h2 = 2.0 * u.step();
    for (int i = 0; i < u.size(); ++i)
        g[i] = (u.at(i + 1) - u.at(i - 1)) / h2;
    return g;
}

std::vector<double> jacobian_of(const std::vector<double>& X, const std::vector<double>& x0) {
    const std::size_t n = X.size();
    std::vector<double> J(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        J[i] = (X[hi] - X[lo]) / (x0[hi] - x0[lo]);
    }
    return J;
}

} // namespace

CharField integrate_homogeneous(const std::vector<Hamiltonian>& H, const GridFn& u0,
                                const Path& path) {
    if (static_cast<int>(H.size()) != path.components())
        throw std::invalid_argument("integrate_homogeneous: one Hamiltonian per component");
    CharField f;
    f.x0.resize(u0.size());
    for (int i = 0; i < u0.size(); ++i)
        f.x0[i] = u0.x(i);
    const auto grad = central_gradient(u0);
    f.times = path.times();
    const std::size_t nt = f.times.size();
    f.X.resize(nt);
    f.P.resize(nt);
    f.U.resize(nt);
    f.J.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        std::vector<double> X(f.x0.size()), U(f.x0.size());
        for (std::size_t i = 0; i < f.x0.size(); ++i) {
            double shift = 0.0, gain = 0.0;
            for (int c = 0; c < path.components(); ++c) {
                const double B = path.component(c)[k];
                const double dh = H[c].deriv(grad[i]);
                shift += dh * B;
                gain += (H[c].eval(grad[i]) - dh * grad[i]) * B;
            }
            X[i] = f.x0[i] - shift;
            U[i] = u0[static_cast<int>(i)] + gain;
        }
        f.P[k] = grad;
        f.J[k] = jacobian_of(X, f.x0);
        f.X[k] = std::move(X);
        f.U[k] = std::move(U);
    }
    return f;
}

CharField integrate_general(const XtHamiltonian& H, const GridFn& u0, double t_end, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("integrate_general: step must be positive");
    CharField f;
    f.x0.resize(u0.size());
    for (int i = 0; i < u0.size(); ++i)
        f.x0[i] = u0.x(i);
    const auto grad = central_gradient(u0);
    const std::size_t n = f.x0.size();

    std::vector<double> X = f.x0, P = grad, U(u0.values().begin(), u0.values().end());
    auto record = [&](double t) {
        f.times.push_back(t);
        f.X.push_back(X);
        f.P.push_back(P);
        f.U.push_back(U);
        f.J.push_back(jacobian_of(X, f.x0));
    };
    record(0.0);

    const int steps = static_cast<int>(std::ceil(t_end / step - 1e-12));
    std::vector<double> kx(n), kp(n), ax(n), ap(n), au(n);
    for (int s = 0; s < steps; ++s) {
        const double dt = std::min(step, t_end - s * step);
        // classical RK4 on (X, P, U)
        auto rhs = [&](const std::vector<double>& x, const std::vector<double>& p,
                       std::vector<double>& ox, std::vector<double>& op, std::vector<double>& ou) {
            for (std::size_t i = 0; i < n; ++i) {
                const double hp = H.dp(p[i], x[i]);
                ox[i] = -hp;
                op[i] = H.dx(p[i], x[i]);
                ou[i] = H.value(p[i], x[i]) - hp * p[i];
            }
        };
        std::vector<double> sx(n, 0.0), sp(n, 0.0), su(n, 0.0);
        const double wts[4] = {1.0, 2.0, 2.0, 1.0};
        const double pos[4] = {0.0, 0.5, 0.5, 1.0};
        std::vector<double> cx = X, cp = P;
        for (int stage = 0; stage < 4; ++stage) {
            if (stage > 0)
                for (std::size_t i = 0; i < n; ++i) {
                    cx[i] = X[i] + pos[stage] * dt * kx[i];
                    cp[i] = P[i] + pos[stage] * dt * kp[i];
                }
            rhs(cx, cp, ax, ap, au);
            kx = ax;
            kp = ap;
            for (std::size_t i = 0; i < n; ++i) {
                sx[i] += wts[stage] * ax[i];
                sp[i] += wts[stage] * ap[i];
                su[i] += wts[stage] * au[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            X[i] += dt / 6.0 * sx[i];
            P[i] += dt / 6.0 * sp[i];
            U[i] += dt / 6.0 * su[i];
            if (!std::isfinite(X[i]) || !std::isfinite(P[i]) || !std::isfinite(U[i]))
                throw std::runtime_error("integrate_general: non-finite state at t=" +
                                         std::to_string((s + 1) * step));
        }
        record(std::min((s + 1) * step, t_end));
    }
    return f;
}

double invertibility_window(const CharField& field, double threshold) {
    double prev_min = 1e300, prev_t = 0.0;
    for (std::size_t k = 0; k < field.times.size(); ++k) {
        const double mn = *std::min_element(field.J[k].begin(), field.J[k].end());
        if (mn <= threshold) {
            if (k == 0)
                return field.times[0];
            // linear interpolation between the bracketing stored times
            const double w = (prev_min - threshold) / (prev_min - mn);
            return prev_t + w * (field.times[k] - prev_t);
        }
        prev_min = mn;
        prev_t = field.times[k];
    }
    return field.times.back();
}

GridFn smooth_reference_solution(const CharField& field, double t, const GridFn& like) {
    const double tstar = invertibility_window(field);
    if (t >= tstar && tstar < field.times.back())
        throw std::invalid_argument("smooth_reference_solution: t at or past the window");
    if (t < field.times.front() || t > field.times.back())
        throw std::out_of_range("smooth_reference_solution: t outside the field");

    // bracket t among stored times and interpolate the state
    auto it = std::lower_bound(field.times.begin(), field.times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - field.times.begin());
    std::size_t lo = hi == 0 ? 0 : hi - 1;
    double w = 0.0;
    if (hi == field.times.size()) {
        hi = lo;
    } else if (hi != lo) {
        w = (t - field.times[lo]) / (field.times[hi] - field.times[lo]);
    }
    const std::size_t n = field.x0.size();
    std::vector<double> X(n), U(n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = (1.0 - w) * field.X[lo][i] + w * field.X[hi][i];
        U[i] = (1.0 - w) * field.U[lo][i] + w * field.U[hi][i];
    }

    std::vector<double> out(like.size());
    for (int q = 0; q < like.size(); ++q) {
        const double x = like.x(q);
        // monotone bracketing; ties resolved to the leftmost preimage
        if (x <= X.front()) {
            out[q] = U.front();
            continue;
        }
        if (x >= X.back()) {
            out[q] = U.back();
            continue;
        }
        auto xi = std::lower_bound(X.begin(), X.end(), x);
        std::size_t b = static_cast<std::size_t>(xi - X.begin());
        std::size_t a = b - 1;
        const double gap = X[b] - X[a];
        const double ww = gap > 0.0 ? (x - X[a]) / gap : 0.0;
        out[q] = (1.0 - ww) * U[a] + ww * U[b];
    }
    return GridFn(like.origin(), like.step(), std::move(out), like.boundary());
}

double doubled_window(const Hamiltonian& H, const std::function<double(double)>& dF,
                      double lambda, double horizon, double step, int grid_n, double box) {
    // sample in center/difference coordinates s = (x+y)/2, d = x - y so the
    // initial momenta lambda*d stay O(1) and the Jacobian differencing
    // resolves the near-diagonal pinch at large lambda
    const int n = grid_n;
    const double gs = 2.0 * box / (n - 1);
    const double dbox = std::min(box, 4.0 / std::max(lambda, 1e-12));
    const double gd = 2.0 * dbox / (n - 1);
    std::vector<double> X(n * n), Y(n * n), P(n * n), Q(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double s = -box + gs * i, d = -dbox + gd * j;
            X[i * n + j] = s + 0.5 * d;
            Y[i * n + j] = s - 0.5 * d;
            P[i * n + j] = lambda * d;
            Q[i * n + j] = lambda * d;
        }

    // det d(X,Y)/d(x,y) = -det d(X,Y)/d(s,d) since det d(s,d)/d(x,y) = -1
    auto min_jacobian = [&]() {
        double mn = 1e300;
        for (int i = 1; i + 1 < n; ++i)
            for (int j = 1; j + 1 < n; ++j) {
                const double xs = (X[(i + 1) * n + j] - X[(i - 1) * n + j]) / (2.0 * gs);
                const double xd = (X[i * n + j + 1] - X[i * n + j - 1]) / (2.0 * gd);
                const double ys = (Y[(i + 1) * n + j] - Y[(i - 1) * n + j]) / (2.0 * gs);
                const double yd = (Y[i * n + j + 1] - Y[i * n + j - 1]) / (2.0 * gd);
                mn = std::min(mn, -(xs * yd - xd * ys));
            }
        return mn;
    };

    const int steps = static_cast<int>(std::ceil(horizon / step));
    double prev_min = min_jacobian(), prev_t = 0.0;
    std::vector<double> kX(n * n), kY(n * n), kP(n * n), kQ(n * n);
    std::vector<double> cX(n * n), cY(n * n), cP(n * n), cQ(n * n);
    std::vector<double> sX(n * n), sY(n * n), sP(n * n), sQ(n * n);
    for (int s = 0; s < steps; ++s) {
        const double dt = std::min(step, horizon - s * step);
        std::fill(sX.begin(), sX.end(), 0.0);
        std::fill(sY.begin(), sY.end(), 0.0);
        std::fill(sP.begin(), sP.end(), 0.0);
        std::fill(sQ.begin(), sQ.end(), 0.0);
        const double wts[4] = {1.0, 2.0, 2.0, 1.0};
        const double pos[4] = {0.0, 0.5, 0.5, 1.0};
        for (int stage = 0; stage < 4; ++stage) {
            for (std::size_t q = 0; q < X.size(); ++q) {
                const double px = stage == 0 ? P[q] : P[q] + pos[stage] * dt * kP[q];
                const double qx = stage == 0 ? Q[q] : Q[q] + pos[stage] * dt * kQ[q];
                const double xx = stage == 0 ? X[q] : X[q] + pos[stage] * dt * kX[q];
                const double yx = stage == 0 ? Y[q] : Y[q] + pos[stage] * dt * kY[q];
                cX[q] = -H.deriv(px);
                cY[q] = -H.deriv(qx);
                cP[q] = dF(xx);
                cQ[q] = dF(yx);
            }
            kX = cX;
            kY = cY;
            kP = cP;
            kQ = cQ;
            for (std::size_t q = 0; q < X.size(); ++q) {
                sX[q] += wts[stage] * cX[q];
                sY[q] += wts[stage] * cY[q];
                sP[q] += wts[stage] * cP[q];
                sQ[q] += wts[stage] * cQ[q];
            }
        }
        for (std::size_t q = 0; q < X.size(); ++q) {
            X[q] += dt / 6.0 * sX[q];
            Y[q] += dt / 6.0 * sY[q];
            P[q] += dt / 6.0 * sP[q];
            Q[q] += dt / 6.0 * sQ[q];
        }
        const double t = std::min((s + 1) * step, horizon);
        const double mn = min_jacobian();
        if (mn <= 0.5) {
            const double w = (prev_min - 0.5) / (prev_min - mn);
            return prev_t + w * (t - prev_t);
        }
        prev_min = mn;
        prev_t = t;
    }
    return horizon;
}

WindowScalingResult window_scaling_experiment(const Hamiltonian& H,
                                              const std::function<double(double)>& F,
                                              const std::function<double(double)>& dF,
                                              const std::vector<double>& lambdas, double horizon,
                                              double step, int grid_n, double box) {
    (void)F;
    WindowScalingResult res;
    res.lambdas = lambdas;
    for (double lam : lambdas)
        res.t_star.push_back(doubled_window(H, dF, lam, horizon, step, grid_n, box));
    // least squares on (log lambda, log t*)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(lambdas.size());
    for (int i = 0; i < m; ++i) {
        const double x = std::log(lambdas[i]);
        const double y = std::log(res.t_star[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    res.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return res;
}

} // namespace roughhj
