#include "roughhj/acceptance.hpp"
#include "roughhj/catalog.hpp"
#include "roughhj/characteristics.hpp"
#include "roughhj/convex.hpp"
#include "roughhj/scheme.hpp"
#include "roughhj/scl.hpp"
#include "roughhj/semigroup.hpp"
#include "roughhj/semilinear.hpp"
#include "roughhj/verdict.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace roughhj;

namespace {

std::string out_path(const std::string& name) {
    const char* root = std::getenv("ROUGHHJ_OUT");
    if (!root || !*root)
        return name;
    return std::string(root) + "/" + name;
}

void write_file(const std::string& name, const std::string& content) {
    const std::string path = out_path(name);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file " + path);
    f << content;
    std::cout << "wrote " << path << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open input file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

PathKind parse_kind(const std::string& k) {
    if (k == "brownian")
        return PathKind::Brownian;
    if (k == "sawtooth")
        return PathKind::Sawtooth;
    if (k == "linear")
        return PathKind::Linear;
    if (k == "hoelder")
        return PathKind::Hoelder;
    throw CLI::ValidationError("--kind", "unknown path kind '" + k + "'");
}

Path load_path(const std::string& spec_or_file, std::uint64_t seed, int n, double T) {
    if (spec_or_file.size() > 4 &&
        spec_or_file.substr(spec_or_file.size() - 4) == ".csv")
        return path_from_csv(slurp(spec_or_file));
    PathEnsembleSpec s;
    s.seed = seed;
    s.horizon = T;
    s.resolution = n;
    s.kind = parse_kind(spec_or_file);
    return sample_path(s);
}

GridFn load_u0(const std::string& spec_or_file, int n, double box) {
    if (spec_or_file.size() > 4 &&
        spec_or_file.substr(spec_or_file.size() - 4) == ".csv")
        return gridfn_from_csv(slurp(spec_or_file));
    return catalog_u0(spec_or_file, n, box);
}

// flat key = value config with # comments
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_h_list(const std::string& text) {
    // "2^-6..2^-9" or comma-separated values
    std::vector<double> hs;
    const auto dots = text.find("..");
    if (dots != std::string::npos && text.rfind("2^-", 0) == 0) {
        const int a = std::stoi(text.substr(3, dots - 3));
        const int b = std::stoi(text.substr(dots + 5));
        for (int k = a; k <= b; ++k)
            hs.push_back(std::pow(2.0, -k));
        return hs;
    }
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ','))
        hs.push_back(std::stod(cell));
    return hs;
}

std::string rates_to_csv(const RateResult& r) {
    std::ostringstream out;
    out << "h,rho_h,sup_error,normalized_error\n";
    char buf[160];
    for (const auto& pt : r.table) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", pt.h, pt.rho, pt.sup_error,
                      pt.normalized);
        out << buf;
    }
    return out.str();
}

std::string field_to_csv(const ConservedField& f) {
    std::ostringstream out;
    out << "x,u\n";
    char buf[80];
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.x(static_cast<int>(i)), f.u[i]);
        out << buf;
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathwise Hamilton-Jacobi and conservation-law toolbox"};
    app.set_help_flag("--help", "print help"); // frees -h/--h for mesh options
    app.require_subcommand(1);

    // ---- path ----
    auto* path_cmd = app.add_subcommand("path", "driving-signal construction and statistics");
    path_cmd->require_subcommand(1);
    std::uint64_t seed = 0;
    std::string kind = "brownian", out = "path.csv", in_file;
    int n = 1024;
    double T = 1.0, mu = 1.0, slope = 1.0, alpha = 0.5;

    auto* psample = path_cmd->add_subcommand("sample", "sample a path from the catalog");
    psample->add_option("--seed", seed);
    psample->add_option("--kind", kind, "brownian|sawtooth|linear|hoelder");
    psample->add_option("--n", n, "resolution");
    psample->add_option("--T", T);
    psample->add_option("--mu", mu, "sawtooth slope");
    psample->add_option("--slope", slope, "linear slope");
    psample->add_option("--alpha", alpha, "hoelder exponent");
    psample->add_option("--out", out);
    psample->callback([&] {
        PathEnsembleSpec s;
        s.seed = seed;
        s.horizon = T;
        s.resolution = n;
        s.kind = parse_kind(kind);
        s.mu = mu;
        s.slope = slope;
        s.alpha = alpha;
        write_file(out, path_to_csv(sample_path(s)));
    });

    auto* preduce = path_cmd->add_subcommand("reduce", "skeleton of a path");
    bool fully = false;
    preduce->add_option("--in", in_file)->required();
    preduce->add_option("--out", out);
    preduce->add_flag("--fully", fully, "affine after the last global extremum");
    preduce->callback([&] {
        auto p = path_from_csv(slurp(in_file));
        write_file(out, path_to_csv(fully ? fully_reduce_path(p) : reduce_path(p)));
    });

    auto* pstats = path_cmd->add_subcommand("stats", "running extrema and total variation");
    pstats->add_option("--in", in_file)->required();
    pstats->callback([&] {
        auto p = path_from_csv(slurp(in_file));
        const auto [M, m] = p.running_extrema(0, p.horizon());
        std::printf("T=%.17g max=%.17g min=%.17g tv=%.17g knots=%zu\n", p.horizon(), M, m,
                    p.total_variation(0, 0.0, p.horizon()), p.knot_count());
    });

    // ---- convex ----
    auto* convex_cmd = app.add_subcommand("convex", "conjugates, envelopes, formulas");
    convex_cmd->require_subcommand(1);
    std::string Hname = "abs";
    double tval = 1.0, delta = 1.0;
    int steps = 100;

    auto* legendre_cmd = convex_cmd->add_subcommand("legendre", "discrete conjugate");
    legendre_cmd->add_option("--in", in_file)->required();
    legendre_cmd->add_option("--out", out);
    legendre_cmd->callback([&] {
        write_file(out, gridfn_to_csv(legendre(gridfn_from_csv(slurp(in_file)))));
    });

    auto* env_cmd = convex_cmd->add_subcommand("envelope", "largest convex minorant");
    env_cmd->add_option("--in", in_file)->required();
    env_cmd->add_option("--out", out);
    env_cmd->callback([&] {
        write_file(out, gridfn_to_csv(convex_envelope(gridfn_from_csv(slurp(in_file)))));
    });

    auto* hopf_cmd = convex_cmd->add_subcommand("hopf", "Hopf formula for convex data");
    hopf_cmd->add_option("--in", in_file)->required();
    hopf_cmd->add_option("--H", Hname);
    hopf_cmd->add_option("--t", tval);
    hopf_cmd->add_option("--out", out);
    hopf_cmd->callback([&] {
        write_file(out, gridfn_to_csv(hopf_solve(catalog_hamiltonian(Hname),
                                                 gridfn_from_csv(slurp(in_file)), tval)));
    });

    auto* lo_cmd = convex_cmd->add_subcommand("lo", "Lax-Oleinik formula");
    lo_cmd->add_option("--in", in_file)->required();
    lo_cmd->add_option("--H", Hname);
    lo_cmd->add_option("--t", tval);
    lo_cmd->add_option("--out", out);
    lo_cmd->callback([&] {
        write_file(out, gridfn_to_csv(lax_oleinik_solve(catalog_hamiltonian(Hname),
                                                        gridfn_from_csv(slurp(in_file)), tval)));
    });

    auto* iter_cmd = convex_cmd->add_subcommand("iterate", "alternating envelope iteration");
    iter_cmd->add_option("--H", Hname);
    iter_cmd->add_option("--delta", delta);
    iter_cmd->add_option("--steps", steps);
    iter_cmd->add_option("--out", out);
    iter_cmd->callback([&] {
        auto res = hopf_iterate(catalog_hamiltonian(Hname), delta, steps);
        std::ostringstream csv;
        csv << "k,neg_inf\n";
        for (std::size_t k = 0; k < res.neg_inf.size(); ++k)
            csv << k << "," << res.neg_inf[k] << "\n";
        write_file(out, csv.str());
        std::printf("blew_up=%d at=%d\n", res.blew_up ? 1 : 0, res.blowup_step);
    });

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "exact pathwise solution operators");
    std::string path_spec = "brownian", u0_spec = "abs", method = "exact";
    double box = 3.0;
    int grid_n = 1025;
    solve_cmd->add_option("--H", Hname, "catalog entry or table csv");
    solve_cmd->add_option("--path", path_spec, "csv file or sample kind");
    solve_cmd->add_option("--seed", seed);
    solve_cmd->add_option("--path-n", n);
    solve_cmd->add_option("--u0", u0_spec, "csv file or catalog entry");
    solve_cmd->add_option("--n", grid_n);
    solve_cmd->add_option("--box", box);
    solve_cmd->add_option("--T", T);
    solve_cmd->add_option("--method", method, "exact|scheme");
    solve_cmd->add_option("--out", out);

    auto* check_cmd = solve_cmd->add_subcommand("check", "inequality checks (JSON verdicts)");
    std::string check_name = "cancellation";
    double a_dur = 1.0, b_dur = 0.5, c_dur = 0.7, plateau_R = 2.0;
    check_cmd->add_option("name", check_name, "cancellation|composition|reduced|finite-speed");
    check_cmd->add_option("--H", Hname);
    check_cmd->add_option("--path", path_spec);
    check_cmd->add_option("--seed", seed);
    check_cmd->add_option("--u0", u0_spec);
    check_cmd->add_option("--n", grid_n);
    check_cmd->add_option("--box", box);
    check_cmd->add_option("--T", T);
    check_cmd->add_option("--a", a_dur);
    check_cmd->add_option("--b", b_dur);
    check_cmd->add_option("--c", c_dur);
    check_cmd->add_option("--R", plateau_R);
    check_cmd->callback([&] {
        auto H = catalog_hamiltonian(Hname);
        auto u0 = load_u0(u0_spec, grid_n, box);
        const double h = u0.step();
        Verdict v;
        if (check_name == "cancellation") {
            auto g = cancellation_check(H, u0, a_dur);
            v = {"cancellation", std::max(g.lhs_gap, -g.rhs_gap), 3.0 * h, false, 0.0};
        } else if (check_name == "composition") {
            const double gap = composition_identity_check(H, u0, a_dur, b_dur, c_dur);
            v = {"composition_identity", gap, 3.0 * h, false, 0.0};
        } else if (check_name == "reduced") {
            auto p = load_path(path_spec, seed, n, T);
            const double gap = reduced_equivalence_check(H, u0, p, T);
            v = {"reduced_path_equivalence", gap, 3.0 * h, false, 0.0};
        } else if (check_name == "finite-speed") {
            auto p = load_path(path_spec, seed, n, T);
            auto plateau = GridFn::sample(-box, box, grid_n, [&](double x) {
                return std::max(std::abs(x) - plateau_R, 0.0);
            });
            auto r = finite_speed_check(H, plateau, 0.0, plateau_R, p, T);
            v = {"finite_speed", r.measured_radius, r.bound_radius - 2.0 * h, false, 0.0};
            v.pass = r.vacuous || v.measured >= v.bound;
            std::printf("%s\n", verdict_to_json(v).c_str());
            return;
        } else {
            throw CLI::ValidationError("check", "unknown check '" + check_name + "'");
        }
        v.pass = v.measured <= v.bound;
        std::printf("%s\n", verdict_to_json(v).c_str());
    });

    solve_cmd->callback([&] {
        if (*check_cmd)
            return;
        auto p = load_path(path_spec, seed, n, T);
        auto u0 = load_u0(u0_spec, grid_n, box);
        if (method == "exact") {
            PathwiseSolveSpec spec{{catalog_hamiltonian(Hname)}, p, u0, T};
            write_file(out, gridfn_to_csv(solve_exact(spec)));
        } else if (method == "scheme") {
            auto cfg = build_partition_cts(p, u0.step(), 0.9,
                                           catalog_hamiltonian(Hname).lipschitz(
                                               u0.lipschitz() + 1.0));
            auto run = evolve(cfg, {catalog_hamiltonian(Hname)}, u0, T);
            write_file(out, gridfn_to_csv(run.snapshots.back().second));
        } else {
            throw CLI::ValidationError("--method", "unknown method '" + method + "'");
        }
    });

    // ---- chars ----
    auto* chars_cmd = app.add_subcommand("chars", "characteristics and windows");
    chars_cmd->require_subcommand(1);
    double step = 1e-3, horizon = 1.0;
    std::string lambda_list = "10,100,1000,10000";

    auto* crun = chars_cmd->add_subcommand("run", "integrate the (X,P,U) system");
    crun->add_option("--H", Hname);
    crun->add_option("--u0", u0_spec);
    crun->add_option("--n", grid_n);
    crun->add_option("--box", box);
    crun->add_option("--T", horizon);
    crun->add_option("--step", step);
    crun->add_option("--out", out);
    crun->callback([&] {
        auto H = catalog_hamiltonian(Hname);
        XtHamiltonian xt;
        xt.value = [H](double p, double) { return H.eval(p); };
        xt.dp = [H](double p, double) { return H.deriv(p); };
        xt.dx = [](double, double) { return 0.0; };
        auto u0 = load_u0(u0_spec, grid_n, box);
        auto f = integrate_general(xt, u0, horizon, step);
        std::ostringstream csv;
        csv << "x0,X,P,U,J\n";
        char buf[200];
        for (std::size_t i = 0; i < f.x0.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", f.x0[i],
                          f.X.back()[i], f.P.back()[i], f.U.back()[i], f.J.back()[i]);
            csv << buf;
        }
        write_file(out, csv.str());
        std::printf("t_star=%.17g\n", invertibility_window(f));
    });

    auto* cwin = chars_cmd->add_subcommand("window", "invertibility window for one lambda");
    double lambda_one = 100.0;
    cwin->add_option("--lambda", lambda_one);
    cwin->add_option("--T", horizon);
    cwin->add_option("--step", step);
    cwin->callback([&] {
        auto H = catalog_hamiltonian("bounded");
        const double t = doubled_window(H, [](double x) { return -std::sin(x); }, lambda_one,
                                        horizon, step, 25, 1.0);
        std::printf("lambda=%.17g t_star=%.17g\n", lambda_one, t);
    });

    auto* cscale = chars_cmd->add_subcommand("scaling", "window exponent over a lambda grid");
    cscale->add_option("--lambda-grid", lambda_list, "comma separated");
    cscale->add_option("--T", horizon);
    cscale->add_option("--step", step);
    cscale->add_option("--out", out);
    cscale->callback([&] {
        std::vector<double> lambdas;
        std::istringstream in(lambda_list);
        std::string cell;
        while (std::getline(in, cell, ','))
            lambdas.push_back(std::stod(cell));
        auto H = catalog_hamiltonian("bounded");
        auto res = window_scaling_experiment(H, [](double x) { return std::cos(x); },
                                             [](double x) { return -std::sin(x); }, lambdas,
                                             horizon, step, 25, 1.0);
        std::ostringstream csv;
        csv << "lambda,t_star\n";
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            csv << lambdas[i] << "," << res.t_star[i] << "\n";
        write_file(out, csv.str());
        std::printf("fitted_slope=%.17g\n", res.fitted_slope);
    });

    // ---- scheme ----
    auto* scheme_cmd = app.add_subcommand("scheme", "monotone finite-difference runs");
    scheme_cmd->require_subcommand(1);
    std::string config_file, problem = "prop61", h_list = "2^-6..2^-9";
    double theta = 1.0, gR = 1.0;
    int teeth = 3;
    double gh = 1.0 / 128;

    auto* srun = scheme_cmd->add_subcommand("run", "one scheme run from a config file");
    srun->add_option("--config", config_file)->required();
    srun->add_option("--out", out);
    srun->callback([&] {
        auto kv = parse_config(config_file);
        auto get = [&](const std::string& key, const std::string& fallback) {
            auto it = kv.find(key);
            return it == kv.end() ? fallback : it->second;
        };
        const double h = std::stod(get("h", "0.0078125"));
        const double th = std::stod(get("theta", "0.9"));
        const double horizon_t = std::stod(get("T", "1"));
        auto p = load_path(get("path", "brownian"), std::stoull(get("seed", "0")),
                           std::stoi(get("path_n", "4096")), horizon_t);
        auto H = catalog_hamiltonian(get("H", "abs"));
        auto u0 = load_u0(get("u0", "abs"), std::stoi(get("n", "1025")),
                          std::stod(get("box", "3")));
        auto cfg = (get("partition", "cts") == "brownian")
                       ? build_partition_brownian(p, h, th, H.lipschitz(u0.lipschitz() + 1.0))
                       : build_partition_cts(p, h, th, H.lipschitz(u0.lipschitz() + 1.0));
        auto run = evolve(cfg, {H}, u0, horizon_t);
        write_file(out, gridfn_to_csv(run.snapshots.back().second));
        std::printf("steps=%d max_increment=%.6g min_margin=%.6g\n", run.diagnostics.steps,
                    run.diagnostics.max_increment, run.diagnostics.min_margin);
    });

    auto* srates = scheme_cmd->add_subcommand("rates", "sup-error rate harness");
    srates->add_option("--problem", problem, "prop61");
    srates->add_option("--path", path_spec, "csv or kind for the driving signal");
    srates->add_option("--seed", seed);
    srates->add_option("--path-n", n);
    srates->add_option("--T", T);
    srates->add_option("--h", h_list, "2^-a..2^-b or comma separated");
    srates->add_option("--theta", theta);
    srates->add_option("--brownian-rule", kind, "set to 'yes' for the Brownian partition");
    srates->add_option("--out", out);
    srates->callback([&] {
        if (problem != "prop61")
            throw CLI::ValidationError("--problem", "unknown problem '" + problem + "'");
        auto p = load_path(path_spec, seed, n, T);
        auto res = rate_harness_abs(p, parse_h_list(h_list), theta,
                                    kind == "yes" ? PartitionRule::Brownian
                                                  : PartitionRule::Continuous);
        write_file(out, rates_to_csv(res));
        std::printf("fitted_slope=%.17g\n", res.fitted_slope);
    });

    auto* sgas = scheme_cmd->add_subcommand("gassiat", "2D finite-speed violation");
    sgas->add_option("--R", gR);
    sgas->add_option("--teeth", teeth);
    sgas->add_option("--h", gh);
    sgas->add_option("--theta", theta);
    sgas->callback([&] {
        auto res = gassiat_experiment(gR, teeth, gh, theta);
        Verdict v{"gassiat_violation", res.value, 0.5,
                  res.value >= 0.5 && res.control_excess <= 5.0 * gh, 0.0};
        std::printf("%s\n", verdict_to_json(v).c_str());
        std::printf("control_raw=%.6g control_base=%.6g excess=%.6g\n", res.control_raw,
                    res.control_base, res.control_excess);
    });

    // ---- semilinear ----
    auto* semi_cmd = app.add_subcommand("semilinear", "Doss-Sussman solver");
    semi_cmd->require_subcommand(1);
    std::string Fspec = "heat:0.5", noise = "linear";

    auto* semirun = semi_cmd->add_subcommand("run", "solve du = F dt + H(u) dB");
    semirun->add_option("--F", Fspec, "heat:nu");
    semirun->add_option("--H", noise, "zero|linear|sine");
    semirun->add_option("--path", path_spec);
    semirun->add_option("--seed", seed);
    semirun->add_option("--path-n", n);
    semirun->add_option("--u0", u0_spec);
    semirun->add_option("--n", grid_n);
    semirun->add_option("--T", T);
    semirun->add_option("--out", out);
    semirun->add_option("--flow-out", in_file, "also export the flow table");
    semirun->callback([&] {
        const double nu = Fspec.rfind("heat:", 0) == 0 ? std::stod(Fspec.substr(5)) : 0.5;
        auto p = load_path(path_spec, seed, n, T);
        auto u0 = load_u0(u0_spec, grid_n, 1.0);
        auto run = solve_semilinear(SemiF::heat(nu), catalog_noise(noise), p, u0, T);
        write_file(out, gridfn_to_csv(run.u));
        if (!in_file.empty()) {
            auto flow = flow_solve(catalog_noise(noise), -2.0, 2.0, 65, run.flow_s_min,
                                   run.flow_s_max, 33);
            write_file(in_file, flow.to_csv());
        }
        auto audit = lipschitz_bound_audit(run);
        std::printf("max_lipschitz=%.6g\n", audit.max_measured);
    });

    // ---- scl ----
    auto* scl_cmd = app.add_subcommand("scl", "pathwise scalar conservation laws");
    scl_cmd->require_subcommand(1);
    std::string Aspec = "burgers";
    bool semilinear_noise = false;

    auto* sclrun = scl_cmd->add_subcommand("run", "pathwise entropy solve");
    sclrun->add_option("--A", Aspec, "burgers|cubic|linear:c");
    sclrun->add_option("--path", path_spec);
    sclrun->add_option("--seed", seed);
    sclrun->add_option("--path-n", n);
    sclrun->add_option("--T", T);
    sclrun->add_option("--n", grid_n);
    sclrun->add_flag("--semilinear-noise", semilinear_noise,
                     "request multiplicative noise on u (rejected)");
    sclrun->add_option("--out", out);
    sclrun->callback([&] {
        if (semilinear_noise)
            scl_semilinear_noise("Phi(u) dB");
        auto p = load_path(path_spec, seed, n, T);
        auto u0 = ConservedField::sample(0.0, 2.0, grid_n, [](double x) {
            return 0.3 + 0.15 * std::sin(3.14159265358979323846 * x);
        }, true);
        auto u = pathwise_scl_solve(catalog_flux(Aspec), p, u0, T);
        write_file(out, field_to_csv(u));
        std::printf("mass=%.17g tv=%.17g\n", u.mass(), u.tv());
    });

    auto* sclcontr = scl_cmd->add_subcommand("contraction", "contraction diagnostics");
    sclcontr->add_option("--A", Aspec);
    sclcontr->add_option("--path", path_spec);
    sclcontr->add_option("--seed", seed);
    sclcontr->add_option("--T", T);
    sclcontr->add_option("--n", grid_n);
    sclcontr->callback([&] {
        auto p = load_path(path_spec, seed, 1024, T);
        auto a0 = ConservedField::sample(0.0, 2.0, grid_n, [](double x) {
            return x < 1.0 ? 0.5 : -0.25;
        }, true);
        auto b0 = ConservedField::sample(0.0, 2.0, grid_n, [](double x) {
            return x < 0.7 ? -0.4 : 0.6;
        }, true);
        auto rep = contraction_suite(catalog_flux(Aspec), p, a0, b0, T);
        Verdict v{"l1_contraction", rep.l1_gap, 3.0 * a0.h, rep.l1_gap <= 3.0 * a0.h, 0.0};
        std::printf("%s\n", verdict_to_json(v).c_str());
    });

    auto* sclkin = scl_cmd->add_subcommand("kinetic", "kinetic transport diagnostics");
    sclkin->add_option("--A", Aspec);
    sclkin->add_option("--path", path_spec);
    sclkin->add_option("--seed", seed);
    sclkin->add_option("--T", T);
    sclkin->add_option("--n", grid_n);
    sclkin->callback([&] {
        auto p = load_path(path_spec, seed, 1024, T);
        auto u0 = ConservedField::sample(-2.0, 2.0, grid_n, [](double x) {
            return (x > -1.0 && x < 0.0) ? 1.0 : 0.0;
        }, false);
        auto traj = pathwise_scl_trajectory(catalog_flux(Aspec), p, u0, T);
        auto rep = kinetic_transport_check(catalog_flux(Aspec), traj, p, 0.25);
        auto defect = defect_estimate(traj);
        const double cap = 0.5 * u0.lp_norm(2.0) * u0.lp_norm(2.0) + 5.0 * u0.h;
        Verdict v{"kinetic_defect_total", defect.total, cap, defect.total <= cap, 0.0};
        std::printf("%s\n", verdict_to_json(v).c_str());
        std::printf("max_drop=%.6g correction=%.6g defect_lb=%.6g\n", rep.max_drop,
                    rep.correction, rep.defect_lb);
    });

    // ---- acceptance ----
    auto* acc_cmd = app.add_subcommand("acceptance", "run the acceptance battery");
    std::string suite = "primary", manifest = "acceptance_manifest.json";
    acc_cmd->add_option("--suite", suite, "primary");
    acc_cmd->add_option("--out", manifest);
    acc_cmd->callback([&] {
        if (suite != "primary")
            throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
        auto verdicts = run_acceptance([](const Verdict& v) {
            std::printf("%s\n", verdict_line(v).c_str());
            std::fflush(stdout);
        });
        write_file(manifest, manifest_to_json(verdicts));
        for (const auto& v : verdicts)
            if (!v.pass)
                throw std::runtime_error("acceptance criterion failed: " + v.check);
    });

    // ---- catalog ----
    auto* cat_cmd = app.add_subcommand("catalog", "list the built-in problem pieces");
    cat_cmd->callback([&] {
        for (const auto& e : catalog_list())
            std::printf("%-28s %-12s %s\n", e.name.c_str(), e.kind.c_str(), e.notes.c_str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2; // usage errors exit 2
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
