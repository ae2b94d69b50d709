#include "roughhj/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace roughhj {

namespace {

double parse_param(const std::string& name, double fallback) {
    const auto colon = name.find(':');
    if (colon == std::string::npos)
        return fallback;
    return std::stod(name.substr(colon + 1));
}

std::string head(const std::string& name) {
    const auto colon = name.find(':');
    return colon == std::string::npos ? name : name.substr(0, colon);
}

} // namespace

std::vector<CatalogEntry> catalog_list() {
    return {
        {"abs", "hamiltonian", "H(p) = |p|, convex, L = 1, trivial split (|p|, 0)"},
        {"neg_abs", "hamiltonian", "H(p) = -|p|, concave mirror of abs"},
        {"quadratic:a", "hamiltonian", "H(p) = a p^2/2, uniformly convex for a > 0"},
        {"power:theta", "hamiltonian",
         "H(p) = |p|^theta; for theta < 1/2 not a difference of convex functions "
         "(blow-up under the alternating envelope iteration)"},
        {"bounded", "hamiltonian", "H(p) = p^2/(2(1+p^2)) table; all derivatives bounded"},
        {"gassiat2d", "hamiltonian", "H(p,q) = |p| - |q|, nonconvex; no finite speed"},
        {"burgers", "flux", "A(u) = u^2/2"},
        {"cubic", "flux", "A(u) = u^3/3 - u, nonconvex"},
        {"linear:c", "flux", "A(u) = c u"},
        {"zero", "noise", "H(u) = 0"},
        {"linear", "noise", "H(u) = u"},
        {"sine", "noise", "H(u) = sin u"},
        {"abs", "u0", "|x| on [-box, box], slope-extended"},
        {"tent", "u0", "2-periodic tent 1 - |x - 1|"},
        {"gauss", "u0", "periodized Gaussian bump on [0, 2)"},
        {"sawtooth:slope", "u0", "periodic sawtooth of the given slope"},
        {"brownian/sawtooth/linear/hoelder", "path", "see path sample --kind"},
    };
}

Hamiltonian catalog_hamiltonian(const std::string& name) {
    const std::string h = head(name);
    if (h == "abs") {
        Hamiltonian H = Hamiltonian::abs();
        H.set_decomposition(Hamiltonian::abs(), Hamiltonian::quadratic(0.0));
        return H;
    }
    if (h == "neg_abs")
        return Hamiltonian::neg_abs();
    if (h == "quadratic")
        return Hamiltonian::quadratic(parse_param(name, 1.0));
    if (h == "power")
        return Hamiltonian::power(parse_param(name, 0.25));
    if (h == "bounded")
        return Hamiltonian::table(
            GridFn::sample(-40.0, 40.0, 4001,
                           [](double p) { return 0.5 * p * p / (1.0 + p * p); }),
            true);
    throw std::invalid_argument("catalog_hamiltonian: unknown entry '" + name + "'");
}

FluxA catalog_flux(const std::string& name) {
    const std::string h = head(name);
    if (h == "burgers")
        return FluxA::burgers();
    if (h == "cubic")
        return FluxA::cubic();
    if (h == "linear")
        return FluxA::linear(parse_param(name, 1.0));
    throw std::invalid_argument("catalog_flux: unknown entry '" + name + "'");
}

SemiH catalog_noise(const std::string& name) {
    if (name == "zero")
        return SemiH::zero();
    if (name == "linear")
        return SemiH::linear();
    if (name == "sine")
        return SemiH::sine();
    throw std::invalid_argument("catalog_noise: unknown entry '" + name + "'");
}

GridFn catalog_u0(const std::string& name, int n, double box) {
    const std::string h = head(name);
    if (h == "abs")
        return GridFn::sample(-box, box, n, [](double x) { return std::abs(x); });
    if (h == "cone") {
        const double s = parse_param(name, 1.0);
        return GridFn::sample(-box, box, n, [s](double x) { return s * std::abs(x); });
    }
    if (h == "tent")
        return GridFn::sample(0.0, 2.0, n, [](double x) { return 1.0 - std::abs(x - 1.0); },
                              Boundary::Periodic);
    if (h == "gauss")
        return GridFn::sample(0.0, 2.0, n, [](double x) {
            double acc = 0.0;
            for (int k = -3; k <= 3; ++k) {
                const double d = x - 1.0 + 2.0 * k;
                acc += std::exp(-d * d / 0.08);
            }
            return acc;
        }, Boundary::Periodic);
    if (h == "sawtooth") {
        const double s = parse_param(name, 10.0);
        return GridFn::sample(0.0, 2.0, n, [s](double x) {
            const double p = std::fmod(x, 0.4);
            return s * std::min(p, 0.4 - p);
        }, Boundary::Periodic);
    }
    throw std::invalid_argument("catalog_u0: unknown entry '" + name + "'");
}

void scl_semilinear_noise(const std::string& what) {
    throw std::invalid_argument(
        "semilinear noise " + what +
        " on a conservation law is rejected: the inverse flow map does not preserve shock "
        "waves, so there is no pathwise (rough-signal) solution theory to discretize. Use a "
        "flux-coupled signal (scl run) instead.");
}

} // namespace roughhj
