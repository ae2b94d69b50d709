#include "roughhj/semilinear.hpp"

#include <doctest.h>

#include <cmath>

using namespace roughhj;

namespace {

// periodized Gaussian on [0, L): sum of a few images
double periodized_gaussian(double x, double center, double s2, double L) {
    double acc = 0.0;
    for (int k = -4; k <= 4; ++k) {
        const double d = x - center + k * L;
        acc += std::exp(-d * d / (2.0 * s2));
    }
    return acc;
}

} // namespace

TEST_CASE("flow table closed forms") {
    // H = 0: identity flow
    auto t0 = flow_solve(SemiH::zero(), -2.0, 2.0, 65, -1.0, 1.0, 33);
    for (double v : {-1.5, 0.0, 0.7})
        for (double s : {-0.9, 0.1, 0.8}) {
            CHECK(t0.phi(v, s) == doctest::Approx(v).epsilon(1e-12));
            CHECK(t0.dphi(v, s) == doctest::Approx(1.0).epsilon(1e-12));
        }

    // H(u) = u: exponential flow, RK4 at step 1e-3 is ~1e-10 accurate
    auto t1 = flow_solve(SemiH::linear(), -2.0, 2.0, 65, -1.0, 1.0, 33);
    for (double v : {-1.0, 0.3, 1.7})
        for (double s : {-1.0, -0.25, 0.5, 1.0}) {
            CHECK(std::abs(t1.phi(v, s) - v * std::exp(s)) <= 1e-9 * (1.0 + std::abs(v)));
            CHECK(std::abs(t1.dphi(v, s) - std::exp(s)) <= 1e-9);
        }

    // H(u) = sin u: step halving agreement and monotonicity in v
    auto a = flow_solve(SemiH::sine(), -2.0, 2.0, 33, -1.0, 1.0, 17, 2e-3);
    auto b = flow_solve(SemiH::sine(), -2.0, 2.0, 33, -1.0, 1.0, 17, 1e-3);
    for (double v : {-1.9, -0.4, 0.9})
        for (double s : {-1.0, 0.5, 1.0})
            CHECK(std::abs(a.phi(v, s) - b.phi(v, s)) <= 1e-10);
    for (double s : {-1.0, 0.0, 1.0})
        CHECK(a.phi(-0.5, s) < a.phi(-0.5 + 0.125, s));
}

TEST_CASE("flow property and inverse") {
    auto t = flow_solve(SemiH::sine(), -3.0, 3.0, 129, -1.2, 1.2, 65);
    // Phi(Phi(v, s1), s2) = Phi(v, s1 + s2) within table tolerance
    for (double v : {-1.0, 0.2, 1.4})
        for (double s1 : {-0.5, 0.3})
            for (double s2 : {-0.4, 0.6}) {
                const double two = t.phi(t.phi(v, s1), s2);
                const double one = t.phi(v, s1 + s2);
                CHECK(std::abs(two - one) <= 2e-4);
            }
    // inverse round trip
    for (double v : {-2.0, 0.1, 2.3})
        for (double s : {-1.0, 0.7})
            CHECK(t.phi_inverse(t.phi(v, s), s) == doctest::Approx(v).epsilon(1e-6));
}

TEST_CASE("transform cancellation and structure audit") {
    // F = nu X with H(u) = u: the exponentials cancel, tilde F = nu X
    auto flow = flow_solve(SemiH::linear(), -2.0, 2.0, 65, -1.0, 1.0, 33);
    auto tp = transform(SemiF::heat(0.7), flow);
    for (double X : {-3.0, 0.5, 2.0})
        for (double v : {-1.0, 0.4})
            for (double s : {-0.8, 0.9})
                CHECK(tp.evaluate(X, 0.3, v, s) == doctest::Approx(0.7 * X).epsilon(1e-9));

    // linear F: audit bound independent of the box
    auto a1 = transform(SemiF::heat(0.7), flow, 10.0).audit;
    auto a2 = transform(SemiF::heat(0.7), flow, 100.0).audit;
    CHECK(std::abs(a1.lower_bound) <= 1e-6);
    CHECK(std::abs(a1.upper_bound) <= 1e-6);
    CHECK(std::abs(a2.lower_bound) <= 1e-5);
    CHECK(a1.one_sided);

    // F = 0 gives tilde F = 0
    SemiF zero{[](double) { return 0.0; }, 0.0};
    auto tz = transform(zero, flow);
    CHECK(tz.evaluate(5.0, 1.0, 0.5, 0.5) == 0.0);
}

TEST_CASE("doss-sussman closed form: F = nu X, H(u) = u") {
    const double nu = 0.5, T = 0.5, L = 2.0;
    const int n = 256;
    const double s0sq = 0.02;
    auto u0 = GridFn::sample(0.0, L, n, [&](double x) {
        return periodized_gaussian(x, 1.0, s0sq, L);
    }, Boundary::Periodic);

    auto path = sample_path({.seed = 5, .horizon = T, .resolution = 512,
                             .kind = PathKind::Brownian});
    auto run = solve_semilinear(SemiF::heat(nu), SemiH::linear(), path, u0, T);

    // oracle: e^{B(T)} (heat evolution of u0), the widened periodized Gaussian
    const double BT = path.eval(0, T);
    const double s2 = s0sq + 2.0 * nu * T;
    const double amp = std::exp(BT) * std::sqrt(s0sq / s2);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst,
                         std::abs(run.u[i] - amp * periodized_gaussian(run.u.x(i), 1.0, s2, L)));
    CHECK(worst <= 10.0 * u0.step());

    // H = 0 reduces to the deterministic heat solver
    auto run0 = solve_semilinear(SemiF::heat(nu), SemiH::zero(), path, u0, T);
    const double amp0 = std::sqrt(s0sq / s2);
    worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst,
                         std::abs(run0.u[i] - amp0 * periodized_gaussian(run0.u.x(i), 1.0, s2, L)));
    CHECK(worst <= 10.0 * u0.step());
}

TEST_CASE("comparison: ordered data stay ordered") {
    const double T = 0.3;
    auto u0 = GridFn::sample(0.0, 2.0, 128, [](double x) {
        return 0.5 * std::sin(3.1415926535897932 * x);
    }, Boundary::Periodic);
    auto w0 = u0.map([](double v) { return v + 0.2; });
    auto path = sample_path({.seed = 9, .horizon = T, .resolution = 128,
                             .kind = PathKind::Brownian});
    auto ru = solve_semilinear(SemiF::heat(0.4), SemiH::sine(), path, u0, T);
    auto rw = solve_semilinear(SemiF::heat(0.4), SemiH::sine(), path, w0, T);
    for (int i = 0; i < ru.u.size(); ++i)
        CHECK(rw.u[i] >= ru.u[i] - 1e-12);
}

TEST_CASE("cauchy property under mollification of the driving path") {
    const double T = 0.4;
    auto u0 = GridFn::sample(0.0, 2.0, 128, [](double x) {
        return 0.3 * std::cos(3.1415926535897932 * x);
    }, Boundary::Periodic);
    auto B = sample_path({.seed = 12, .horizon = T, .resolution = 1024,
                          .kind = PathKind::Brownian});
    const double eps = T / 16.0;
    auto b1 = mollify(B, eps);
    auto b2 = mollify(B, eps / 2.0);
    auto b4 = mollify(B, eps / 4.0);
    auto r1 = solve_semilinear(SemiF::heat(0.4), SemiH::sine(), b1, u0, T);
    auto r2 = solve_semilinear(SemiF::heat(0.4), SemiH::sine(), b2, u0, T);
    auto r4 = solve_semilinear(SemiF::heat(0.4), SemiH::sine(), b4, u0, T);
    const double d12 = sup_dist(r1.u, r2.u);
    const double d24 = sup_dist(r2.u, r4.u);
    CHECK(d24 < d12);
}

TEST_CASE("lipschitz audit") {
    const double T = 0.4;
    auto u0 = GridFn::sample(0.0, 2.0, 256, [](double x) {
        return 0.4 * std::sin(3.1415926535897932 * x);
    }, Boundary::Periodic);
    auto path = sample_path({.seed = 3, .horizon = T, .resolution = 256,
                             .kind = PathKind::Brownian});

    // H = 0, F = nu X: heat flow shrinks the Lipschitz constant
    auto rz = solve_semilinear(SemiF::heat(0.5), SemiH::zero(), path, u0, T);
    auto az = lipschitz_bound_audit(rz);
    for (std::size_t k = 1; k < az.measured.size(); ++k)
        CHECK(az.measured[k] <= az.measured[k - 1] * (1.0 + 1e-9));

    // linear H: ||Du|| <= e^{max |B|} ||Du0|| (measured)
    auto rl = solve_semilinear(SemiF::heat(0.5), SemiH::linear(), path, u0, T);
    auto al = lipschitz_bound_audit(rl);
    auto [M, m] = path.running_extrema(0, T);
    const double cap = std::exp(std::max(std::abs(M), std::abs(m))) * u0.lipschitz();
    CHECK(al.max_measured <= cap * (1.0 + 1e-6));

    // sine H: bound stable under mesh refinement within 5%
    auto u0f = GridFn::sample(0.0, 2.0, 512, [](double x) {
        return 0.4 * std::sin(3.1415926535897932 * x);
    }, Boundary::Periodic);
    auto rs = solve_semilinear(SemiF::heat(0.5), SemiH::sine(), path, u0, T);
    auto rsf = solve_semilinear(SemiF::heat(0.5), SemiH::sine(), path, u0f, T);
    const double ms = lipschitz_bound_audit(rs).max_measured;
    const double msf = lipschitz_bound_audit(rsf).max_measured;
    CHECK(std::abs(ms - msf) <= 0.05 * std::max(ms, msf));
}
