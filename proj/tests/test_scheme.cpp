#include "roughhj/scheme.hpp"

#include "roughhj/prng.hpp"
#include "roughhj/semigroup.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace roughhj;

namespace {

// values on a lattice of spacing 2^-20 inside [4, 5): exact-representable
// sums with small integers keep the constants-commute check bit-exact
GridFn lattice_fn(std::uint64_t seed, int n, double h, Boundary b = Boundary::Periodic) {
    SplitMix64 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v)
        x = 4.0 + std::ldexp(static_cast<double>(rng.next_u64() >> 44), -20);
    return GridFn(0.0, h, std::move(v), b);
}

std::vector<Hamiltonian> habs() { return {Hamiltonian::abs()}; }

} // namespace

TEST_CASE("first-order step basics") {
    const double h = 1.0 / 64;
    auto lin = GridFn::sample(-1.0, 1.0, 129, [](double x) { return 0.5 * x; });
    auto stepped = lf_step_first_order(lin, habs(), {0.0}, 0.9);
    for (int i = 0; i < lin.size(); ++i)
        CHECK(stepped[i] == doctest::Approx(lin[i]).epsilon(1e-14));

    // constants commute with the path term: u = c gains H(0) dB = 0 and |dB| c stays
    auto c0 = GridFn::sample(-1.0, 1.0, 129, [](double) { return 0.75; });
    auto c1 = lf_step_first_order(c0, habs(), {0.5 * 0.9 * h}, 0.9);
    for (int i = 0; i < c1.size(); ++i)
        CHECK(c1[i] == doctest::Approx(0.75).epsilon(1e-14));

    // CFL refusal
    CHECK_THROWS(lf_step_first_order(lin, habs(), {2.0 * h}, 0.9));

    // dilation step against the sliding-window oracle: u0 = |x|, dB = tau > 0:
    // u0 <= step(u0) <= (max of u0 over the stencil window) + tau
    auto cone = GridFn::sample(-2.0, 2.0, 513, [](double x) { return std::abs(x); });
    const double tau = 0.4 * cone.step();
    auto d = lf_step_first_order(cone, habs(), {tau}, 0.9);
    for (int i = 1; i < cone.size() - 1; ++i) {
        const double window =
            std::max({cone[i - 1], cone[i], cone[i + 1]});
        CHECK(d[i] >= cone[i] - 1e-14);
        CHECK(d[i] <= window + tau + 1e-14);
    }
}

TEST_CASE("structural properties are exact under CFL") {
    const double h = 1.0 / 128;
    const int n = 256;
    const double theta = 0.9;
    const double dB = 0.5 * theta * h;
    SplitMix64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto u = lattice_fn(1000 + trial, n, h);
        // v >= u with gaps either exactly zero or >= 1e-6
        GridFn v = u;
        for (int i = 0; i < n; ++i) {
            const double g = rng.next_uniform();
            if (g > 0.33)
                v[i] += 1e-6 + 0.5 * g;
        }
        auto su = lf_step_first_order(u, habs(), {dB}, theta);
        auto sv = lf_step_first_order(v, habs(), {dB}, theta);
        // monotonicity, exact
        for (int i = 0; i < n; ++i)
            CHECK(sv[i] >= su[i]);
        // sup-norm nonexpansive, exact
        CHECK(sup_dist(su, sv) <= sup_dist(u, v));

        // constants commute bit for bit (k integer keeps u+k in the binade)
        const double k = 2.0;
        GridFn uk = u;
        for (int i = 0; i < n; ++i)
            uk[i] = u[i] + k;
        auto suk = lf_step_first_order(uk, habs(), {dB}, theta);
        for (int i = 0; i < n; ++i)
            CHECK(suk[i] == su[i] + k);

        // translation equivariance on the periodic grid, bit for bit
        GridFn ushift = u;
        for (int i = 0; i < n; ++i)
            ushift[i] = u[(i + 7) % n];
        auto sshift = lf_step_first_order(ushift, habs(), {dB}, theta);
        for (int i = 0; i < n; ++i)
            CHECK(sshift[i] == su[(i + 7) % n]);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("second-order step") {
    // pure heat: matches the widening-Gaussian closed form
    const double nu = 1.0, s0 = 0.5, T = 0.1;
    auto u0 = GridFn::sample(-4.0, 4.0, 513, [&](double x) {
        return std::exp(-x * x / (2.0 * s0 * s0));
    });
    FluxF F{[&](double r) { return nu * r; }, nu};
    const double h = u0.step();
    const double dt = 0.4 * h * h / nu;
    GridFn u = u0;
    double t = 0.0;
    while (t < T - 1e-12) {
        const double d = std::min(dt, T - t);
        u = lf_step_second_order(u, {}, {}, d, F, 0.0);
        t += d;
    }
    double worst = 0.0;
    for (int i = 20; i < u.size() - 20; ++i) {
        const double s2 = s0 * s0 + 2.0 * nu * T;
        const double expect = s0 / std::sqrt(s2) * std::exp(-u.x(i) * u.x(i) / (2.0 * s2));
        worst = std::max(worst, std::abs(u[i] - expect));
    }
    CHECK(worst <= 5.0 * (h * h + dt));

    // constants are fixed points of the pure F-step
    auto c0 = GridFn::sample(-1.0, 1.0, 65, [](double) { return 1.5; });
    auto c1 = lf_step_second_order(c0, {}, {}, 1e-4, F, 0.0);
    for (int i = 0; i < c1.size(); ++i)
        CHECK(c1[i] == doctest::Approx(1.5).epsilon(1e-14));

    // F = 0 with eps_h viscosity degenerates to a first-order-type step
    FluxF zeroF{[](double) { return 0.0; }, 0.0};
    auto cone = GridFn::sample(-1.0, 1.0, 129, [](double x) { return std::abs(x); });
    const double eps_h = 0.5, dt2 = 0.25 * cone.step() * cone.step() / eps_h;
    const double dB = 2.0 * eps_h * dt2 / cone.step() * 0.9;
    auto a = lf_step_second_order(cone, habs(), {dB}, dt2, zeroF, eps_h);
    const double theta_eff = 2.0 * eps_h * dt2 / (cone.step() * cone.step());
    auto b = lf_step_first_order(cone, habs(), {dB}, theta_eff);
    for (int i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));

    CHECK_THROWS(lf_step_second_order(c0, {}, {}, 1.0, F, 0.0)); // parabolic CFL
}

TEST_CASE("partition for Lipschitz paths solves the algebra") {
    // omega(r) = K r: rho (pre-tiling) should solve rho * K = lambda_target h
    const double K = 2.0, h = 1.0 / 256, theta = 0.9;
    auto saw = sample_path({.seed = 0, .horizon = 1.0, .resolution = 8, .kind = PathKind::Sawtooth,
                            .mu = K});
    auto cfg = build_partition_cts(saw, h, theta, 1.0);
    const double target = 0.9 * theta * h / 1.0;
    CHECK(cfg.rho_star * K == doctest::Approx(target).epsilon(0.02));
    CHECK(cfg.rho <= cfg.rho_star * (1.0 + 1e-12));
    // partition tiles [0, T] in whole blocks
    CHECK(cfg.partition.front() == 0.0);
    CHECK(cfg.partition.back() == doctest::Approx(1.0));

    // constant path: single block capped at T
    auto flat = Path::zero(1.0);
    auto cflat = build_partition_cts(flat, h, theta, 1.0);
    CHECK(cflat.rho_star == doctest::Approx(1.0));
}

TEST_CASE("partition for Hoelder paths scales like h^(2/(1+alpha))") {
    const double theta = 0.9;
    auto p = sample_path({.seed = 0, .horizon = 1.0, .resolution = 14, .kind = PathKind::Hoelder,
                          .alpha = 0.5, .amplitude = 1.0});
    std::vector<double> hs{1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024};
    std::vector<double> rhos;
    for (double h : hs)
        rhos.push_back(build_partition_cts(p, h, theta, 1.0).rho_star);
    // fitted exponent of rho vs h near 2/(1+alpha) = 4/3
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double x = std::log(hs[i]), y = std::log(rhos[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(slope == doctest::Approx(4.0 / 3.0).epsilon(0.2));
}

TEST_CASE("brownian partition: bisection root and monotonicity in h") {
    auto b = sample_path({.seed = 21, .horizon = 1.0, .resolution = 4096,
                          .kind = PathKind::Brownian});
    const double theta = 0.9, L = 1.0, h = 1.0 / 256;
    auto cfg = build_partition_brownian(b, h, theta, L);
    // independent high-precision bisection of rho^{3/4} |log rho|^{1/2} = 0.9 theta h / L
    const double target = 0.9 * theta * h / L;
    double lo = 1e-16, hi = 0.1;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = std::pow(mid, 0.75) * std::sqrt(std::abs(std::log(mid)));
        (f <= target ? lo : hi) = mid;
    }
    CHECK(std::abs(cfg.rho_star - lo) <= 1e-12);

    auto cfg2 = build_partition_brownian(b, h / 2, theta, L);
    CHECK(cfg2.rho_star < cfg.rho_star);

    // theta -> 0 drives rho -> 0
    auto cfg3 = build_partition_brownian(b, h, 0.05, L);
    CHECK(cfg3.rho_star < cfg.rho_star);
}

TEST_CASE("random walk construction") {
    const double h = 1.0 / 128, theta = 0.9, L = 1.0, T = 1.0;
    auto cfg = build_random_walk(7, h, theta, L, T);
    // per-block increments are exactly +/- sqrt(block)
    const auto& ts = cfg.path_h.times();
    const auto& vs = cfg.path_h.component(0);
    const double block = ts[1] - ts[0];
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        CHECK(std::abs(std::abs(vs[k + 1] - vs[k]) - std::sqrt(block)) <= 1e-12);

    // ensemble mean of B_h(T) is near 0 (CLT sanity at desk scale)
    double mean = 0.0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        auto c = build_random_walk(static_cast<std::uint64_t>(s), h, theta, L, T);
        mean += c.path_h.eval(0, T);
    }
    mean /= seeds;
    CHECK(std::abs(mean) <= 3.0 * std::sqrt(T) / 100.0);
}

TEST_CASE("evolve: monotone pairs stay ordered and zigzag runs match the formula") {
    auto zig = Path::scalar({0.0, 0.5, 0.75, 1.0}, {0.0, 0.25, 0.125, 0.25});
    const double h = 1.0 / 128;
    auto cfg = build_partition_cts(zig, h, 0.9, 1.0);
    const double box = 2.0;
    const int n = 2 * static_cast<int>(std::round(box / h)) + 1;
    GridFn u0(-box, h, std::vector<double>(n), Boundary::LinearExtension);
    for (int i = 0; i < n; ++i)
        u0[i] = std::abs(u0.x(i));
    auto run = evolve(cfg, habs(), u0, 1.0);
    const auto& uT = run.snapshots.back().second;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        if (std::abs(uT.x(i)) <= box - 1.0)
            worst = std::max(worst, std::abs(uT[i] - oracle_abs(zig, uT.x(i), 1.0)));
    // error-bound shape C (1 + T) omega(sqrt(rho)) for the modulus-coupled
    // partition
    const double omega = 0.5 * std::sqrt(cfg.rho); // path slope 1/2
    CHECK(worst <= 10.0 * (1.0 + 1.0) * omega);
    CHECK(run.diagnostics.min_margin >= 0.0);

    GridFn v0 = u0.map([](double x) { return x + 0.3; });
    auto runv = evolve(cfg, habs(), v0, 1.0);
    const auto& vT = runv.snapshots.back().second;
    for (int i = 0; i < n; ++i)
        CHECK(vT[i] >= uT[i] - 1e-12);
}

TEST_CASE("consistency probe: quadratic trajectory defect decays with h") {
    // exact smooth solution of u_t = u_x^2/2 xi' for quadratic data:
    // u = k x^2/2 + b x + c with k = kappa/(1-kappa xi), b = beta/(1-kappa xi),
    // c = beta^2 xi / (2 (1-kappa xi))
    auto H = Hamiltonian::quadratic(1.0);
    const double kappa = 0.5, beta = 0.2;
    std::vector<double> defects, bounds;
    for (double h : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
        auto ramp = Path::scalar({0.0, 1.0}, {0.0, 0.25});
        auto cfg = build_partition_cts(ramp, h, 0.9, 2.0);
        std::vector<std::pair<double, GridFn>> phi;
        const std::size_t cells =
            std::min<std::size_t>(cfg.partition.size(), cfg.block_cells + 1);
        double kmax = 0.0;
        for (std::size_t k = 0; k < cells; ++k) {
            const double t = cfg.partition[k];
            const double xi = cfg.path_h.eval(0, t);
            const double kt = kappa / (1.0 - kappa * xi);
            const double bt = beta / (1.0 - kappa * xi);
            const double ct = 0.5 * beta * beta * xi / (1.0 - kappa * xi);
            kmax = std::max(kmax, kt);
            phi.emplace_back(t, GridFn::sample(-1.0, 1.0,
                                               2 * static_cast<int>(1.0 / h) + 1,
                                               [&](double x) {
                                                   return 0.5 * kt * x * x + bt * x + ct;
                                               }));
        }
        const double defect = consistency_probe(cfg, {H}, phi, nullptr);
        defects.push_back(defect);
        // E:introsmoothexpansion shape: theta-viscosity h^2/rho plus the
        // (dB)^2/dt curvature term, with |Phi_x| <= kmax + |b| on the box
        const double dB = cfg.lambda * h;
        const double pmax = kmax * 1.0 + beta / (1.0 - kappa * 0.25);
        const double bound = 0.5 * cfg.theta * h * h * kmax / cfg.rho +
                             0.75 * pmax * pmax * kmax * dB * dB / cfg.rho;
        bounds.push_back(bound * 1.5 + 1e-12);
        CHECK(defect <= bounds.back());
    }
    CHECK(defects[2] < defects[0]);

    // linear trajectories are reproduced up to slope centering only
    auto ramp = Path::scalar({0.0, 1.0}, {0.0, 0.25});
    auto cfg = build_partition_cts(ramp, 1.0 / 128, 0.9, 2.0);
    std::vector<std::pair<double, GridFn>> lin;
    for (std::size_t k = 0; k < 4; ++k) {
        const double t = cfg.partition[k];
        const double xi = cfg.path_h.eval(0, t);
        lin.emplace_back(t, GridFn::sample(-1.0, 1.0, 257, [&](double x) {
                             return 0.3 * x + 0.5 * 0.3 * 0.3 * xi;
                         }));
    }
    CHECK(consistency_probe(cfg, {H}, lin, nullptr) <= 1e-9);
}

TEST_CASE("rate harness: Lipschitz and Hoelder exponents") {
    // alpha = 1: fitted slope >= 1/2 - 0.1
    auto zig = Path::scalar({0.0, 0.5, 0.75, 1.0}, {0.0, 0.25, 0.125, 0.25});
    auto r1 = rate_harness_abs(zig, {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512}, 1.0,
                               PartitionRule::Continuous);
    CHECK(r1.fitted_slope >= 0.5 - 0.1);
    for (std::size_t i = 1; i < r1.table.size(); ++i)
        CHECK(r1.table[i].sup_error <= r1.table[i - 1].sup_error + 1e-12);

    // alpha = 1/2 cascade: fitted slope >= 1/3 - 0.1
    auto hoe = sample_path({.seed = 0, .horizon = 1.0, .resolution = 12,
                            .kind = PathKind::Hoelder, .alpha = 0.5, .amplitude = 0.5});
    auto r2 = rate_harness_abs(hoe, {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512}, 1.0,
                               PartitionRule::Continuous);
    CHECK(r2.fitted_slope >= 1.0 / 3.0 - 0.1);

    CHECK_THROWS(rate_harness_abs(zig, {0.1, 0.05}, 1.0, PartitionRule::Continuous));
}

TEST_CASE("gassiat experiment at desk scale") {
    // small grid sanity run; the acceptance suite runs the fine version
    auto res = gassiat_experiment(1.0, 3, 1.0 / 32, 1.0);
    CHECK(res.value >= 0.5);                  // lower bound saturates at 1
    CHECK(res.control_excess <= 5.0 / 32);    // no path-driven growth below TV = R
    CHECK(res.control_base >= 0.0);
}

TEST_CASE("zero path: pure viscosity relaxes periodic data to its average") {
    const int n = 64;
    const double h = 1.0 / n;
    GridFn u(0.0, h, std::vector<double>(n), Boundary::Periodic);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        u[i] = std::sin(2.0 * 3.14159265358979323846 * i / n) + 0.25;
        mean += u[i];
    }
    mean /= n;
    for (int s = 0; s < 4000; ++s)
        u = lf_step_first_order(u, habs(), {0.0}, 0.9);
    for (int i = 0; i < n; ++i)
        CHECK(u[i] == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("random walk harness: ordered quantiles that shrink with h") {
    auto coarse = random_walk_harness(12, 1.0 / 32, 1.0, 1.0);
    auto fine = random_walk_harness(12, 1.0 / 64, 1.0, 1.0);
    for (const auto* q : {&coarse, &fine}) {
        CHECK(q->quantiles[0] <= q->quantiles[1]);
        CHECK(q->quantiles[1] <= q->quantiles[2]);
        CHECK(q->ref_quantiles[0] <= q->ref_quantiles[1]);
        CHECK(q->ref_quantiles[1] <= q->ref_quantiles[2]);
    }
    CHECK(fine.quantiles[1] < coarse.quantiles[1]);
    // stochastic ordering consistency against the Brownian-driven reference:
    // the two families live on the same error scale
    CHECK(coarse.quantiles[1] <= 10.0 * coarse.ref_quantiles[2] + 1e-9);
    CHECK(coarse.ref_quantiles[1] <= 10.0 * coarse.quantiles[2] + 1e-9);
}
