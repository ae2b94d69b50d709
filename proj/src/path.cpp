#include "roughhj/path.hpp"

#include "roughhj/prng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace roughhj {

Path::Path(std::vector<double> times, std::vector<std::vector<double>> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() < 2)
        throw std::invalid_argument("Path: need at least two knots");
    if (values_.empty())
        throw std::invalid_argument("Path: need at least one component");
    if (times_.front() != 0.0)
        throw std::invalid_argument("Path: first knot time must be 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("Path: knot times must strictly increase");
    for (const auto& comp : values_) {
        if (comp.size() != times_.size())
            throw std::invalid_argument("Path: component size mismatch");
        if (comp.front() != 0.0)
            throw std::invalid_argument("Path: paths start at the origin");
    }
}

Path Path::scalar(std::vector<double> times, std::vector<double> values) {
    std::vector<std::vector<double>> v;
    v.push_back(std::move(values));
    return Path(std::move(times), std::move(v));
}

Path Path::zero(double horizon) {
    return scalar({0.0, horizon}, {0.0, 0.0});
}

double Path::eval(int component, double t) const {
    const auto& v = values_.at(component);
    if (t < 0.0 || t > times_.back())
        throw std::out_of_range("Path::eval: t outside [0, T]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin())
        return v.front();
    std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    if (hi >= times_.size())
        return v.back();
    std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
}

std::pair<double, double> Path::running_extrema(int component, double t) const {
    const auto& v = values_.at(component);
    if (t < 0.0 || t > times_.back())
        throw std::out_of_range("Path::running_extrema: t outside [0, T]");
    double mx = v.front(), mn = v.front();
    for (std::size_t i = 1; i < times_.size() && times_[i] <= t; ++i) {
        mx = std::max(mx, v[i]);
        mn = std::min(mn, v[i]);
    }
    const double vt = eval(component, t);
    return {std::max(mx, vt), std::min(mn, vt)};
}

double Path::total_variation(int component, double a, double b) const {
    if (!(a < b))
        throw std::invalid_argument("total_variation: need a < b");
    if (a < 0.0 || b > times_.back())
        throw std::out_of_range("total_variation: [a,b] outside [0, T]");
    double tv = 0.0;
    double prev = eval(component, a);
    const auto& v = values_.at(component);
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] <= a)
            continue;
        if (times_[i] >= b)
            break;
        tv += std::abs(v[i] - prev);
        prev = v[i];
    }
    tv += std::abs(eval(component, b) - prev);
    return tv;
}

Path Path::restrict(double t) const {
    if (t <= 0.0 || t > horizon())
        throw std::out_of_range("Path::restrict: t outside (0, T]");
    std::vector<double> ts;
    std::vector<std::vector<double>> vs(values_.size());
    for (std::size_t i = 0; i < times_.size() && times_[i] < t; ++i) {
        ts.push_back(times_[i]);
        for (int c = 0; c < components(); ++c)
            vs[c].push_back(values_[c][i]);
    }
    ts.push_back(t);
    for (int c = 0; c < components(); ++c)
        vs[c].push_back(eval(c, t));
    return Path(std::move(ts), std::move(vs));
}

namespace {

std::vector<double> uniform_times(double T, int n) {
    std::vector<double> ts(n + 1);
    for (int i = 0; i <= n; ++i)
        ts[i] = T * static_cast<double>(i) / n;
    ts.back() = T;
    return ts;
}

} // namespace

Path sample_path(const PathEnsembleSpec& spec) {
    if (spec.resolution < 1)
        throw std::invalid_argument("sample_path: resolution must be >= 1");
    if (!(spec.horizon > 0.0))
        throw std::invalid_argument("sample_path: horizon must be positive");
    const double T = spec.horizon;
    switch (spec.kind) {
    case PathKind::Linear: {
        std::vector<std::vector<double>> vs(spec.components, std::vector<double>{0.0, spec.slope * T});
        return Path({0.0, T}, std::move(vs));
    }
    case PathKind::Sawtooth: {
        // 2n intervals of alternating slope +/-mu, starting with +mu
        const int n = spec.resolution;
        auto ts = uniform_times(T, 2 * n);
        std::vector<double> v(2 * n + 1, 0.0);
        const double step = spec.mu * T / (2 * n);
        for (int i = 1; i <= 2 * n; ++i)
            v[i] = v[i - 1] + ((i % 2 == 1) ? step : -step);
        std::vector<std::vector<double>> vs(spec.components, v);
        return Path(std::move(ts), std::move(vs));
    }
    case PathKind::Brownian: {
        const int n = spec.resolution;
        auto ts = uniform_times(T, n);
        const double sd = std::sqrt(T / n);
        std::vector<std::vector<double>> vs;
        vs.reserve(spec.components);
        for (int c = 0; c < spec.components; ++c) {
            SplitMix64 rng = component_stream(spec.seed, c);
            std::vector<double> v(n + 1, 0.0);
            for (int i = 1; i <= n; ++i)
                v[i] = v[i - 1] + sd * rng.next_normal();
            vs.push_back(std::move(v));
        }
        return Path(std::move(ts), std::move(vs));
    }
    case PathKind::Hoelder: {
        if (spec.construction == HoelderConstruction::Arch) {
            // alternating monotone arches s +/- amp (t - t_k)^alpha; the
            // cusp at each arch base realizes the alpha modulus
            const int n = std::max(1 << spec.resolution, 64);
            auto ts = uniform_times(T, n);
            std::vector<double> v(n + 1, 0.0);
            const double breaks[5] = {0.0, 0.35, 0.6, 0.85, 1.0};
            const double sign[4] = {1.0, -1.0, 1.0, -1.0};
            for (int i = 1; i <= n; ++i) {
                const double t = ts[i] / T;
                int k = 0;
                while (k < 3 && t > breaks[k + 1])
                    ++k;
                double base = 0.0;
                for (int j = 0; j < k; ++j)
                    base += sign[j] * spec.amplitude *
                            std::pow((breaks[j + 1] - breaks[j]) * T, spec.alpha);
                v[i] = base + sign[k] * spec.amplitude *
                                  std::pow((t - breaks[k]) * T, spec.alpha);
            }
            std::vector<std::vector<double>> vs(spec.components, v);
            return Path(std::move(ts), std::move(vs));
        }
        // deterministic dyadic cascade: level j adds alternating tents of
        // width T*2^-j and height amplitude * (T*2^-j)^alpha
        const int levels = spec.resolution;
        const int n = 1 << levels;
        auto ts = uniform_times(T, n);
        std::vector<double> v(n + 1, 0.0);
        for (int j = 1; j <= levels; ++j) {
            const int seg = 1 << j;          // number of half-tents at this level
            const int width = n / seg;       // knots per half-tent
            const double height = spec.amplitude * std::pow(T / seg * 2.0, spec.alpha) * 0.5;
            for (int k = 0; k < seg; ++k) {
                const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
                for (int i = 0; i <= width; ++i) {
                    const double frac = static_cast<double>(i) / width;
                    const double tent = (frac <= 0.5) ? frac : (1.0 - frac);
                    v[k * width + i] += sgn * height * 2.0 * tent;
                }
            }
        }
        std::vector<std::vector<double>> vs(spec.components, v);
        return Path(std::move(ts), std::move(vs));
    }
    }
    throw std::logic_error("sample_path: unknown kind");
}

namespace {

enum class ExtType { Max, Min };

// latest index attaining the extremum of v over [lo, hi]
std::size_t sup_arg(const std::vector<double>& v, std::size_t lo, std::size_t hi, ExtType ty) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (ty == ExtType::Max ? (v[i] >= v[best]) : (v[i] <= v[best]))
            best = i;
    }
    return best;
}

// earliest index attaining the extremum of v over [lo, hi]
std::size_t inf_arg(const std::vector<double>& v, std::size_t lo, std::size_t hi, ExtType ty) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (ty == ExtType::Max ? (v[i] > v[best]) : (v[i] < v[best]))
            best = i;
    }
    return best;
}

struct Skeleton {
    std::vector<std::size_t> idx; // knot indices of the extrema sequence, increasing
    std::size_t tau0;             // position of tau_0 within idx
};

Skeleton skeleton_indices(const std::vector<double>& t, const std::vector<double>& v) {
    const std::size_t n = t.size() - 1;
    const double gmax = *std::max_element(v.begin(), v.end());
    const double gmin = *std::min_element(v.begin(), v.end());

    Skeleton sk;
    if (gmax == gmin) { // constant path
        sk.idx = {0, n};
        sk.tau0 = 1;
        return sk;
    }

    // tau_0: latest attainment of the global max or min
    std::size_t tau0 = 0;
    for (std::size_t i = 0; i <= n; ++i)
        if (v[i] == gmax || v[i] == gmin)
            tau0 = i;
    ExtType ty0 = (v[tau0] == gmax) ? ExtType::Max : ExtType::Min;

    // backward: alternate, taking the earliest attainment on [0, tau]
    std::vector<std::size_t> back;
    {
        std::size_t cur = tau0;
        ExtType ty = ty0;
        while (cur > 0) {
            ExtType want = (ty == ExtType::Max) ? ExtType::Min : ExtType::Max;
            std::size_t nxt = inf_arg(v, 0, cur, want);
            if (nxt == cur)
                break;
            back.push_back(nxt);
            cur = nxt;
            ty = want;
        }
        if (back.empty() || back.back() != 0)
            back.push_back(0);
    }

    // forward: alternate, taking the latest attainment on [tau, T]
    std::vector<std::size_t> fwd;
    {
        std::size_t cur = tau0;
        ExtType ty = ty0;
        while (cur < n) {
            ExtType want = (ty == ExtType::Max) ? ExtType::Min : ExtType::Max;
            std::size_t nxt = sup_arg(v, cur, n, want);
            if (nxt == cur)
                break;
            fwd.push_back(nxt);
            cur = nxt;
            ty = want;
        }
        if (fwd.empty() || fwd.back() != n)
            fwd.push_back(n);
    }

    sk.idx.assign(back.rbegin(), back.rend());
    sk.idx.push_back(tau0);
    sk.tau0 = sk.idx.size() - 1;
    sk.idx.insert(sk.idx.end(), fwd.begin(), fwd.end());
    // drop accidental duplicates (tau0 == 0 or tau0 == n)
    std::vector<std::size_t> uniq;
    for (std::size_t i : sk.idx)
        if (uniq.empty() || i > uniq.back())
            uniq.push_back(i);
    // recompute tau0 position
    std::size_t tpos = 0;
    for (std::size_t k = 0; k < uniq.size(); ++k)
        if (uniq[k] == sk.idx[sk.tau0])
            tpos = k;
    sk.idx = std::move(uniq);
    sk.tau0 = tpos;
    return sk;
}

Path from_indices(const std::vector<double>& t, const std::vector<double>& v,
                  const std::vector<std::size_t>& idx) {
    std::vector<double> ts, vs;
    ts.reserve(idx.size());
    vs.reserve(idx.size());
    for (std::size_t i : idx) {
        ts.push_back(t[i]);
        vs.push_back(v[i]);
    }
    return Path::scalar(std::move(ts), std::move(vs));
}

} // namespace

Path reduce_path(const Path& p) {
    if (p.components() != 1)
        throw std::invalid_argument("reduce_path: scalar paths only");
    const auto& t = p.times();
    const auto& v = p.component(0);
    Skeleton sk = skeleton_indices(t, v);
    return from_indices(t, v, sk.idx);
}

Path fully_reduce_path(const Path& p) {
    if (p.components() != 1)
        throw std::invalid_argument("fully_reduce_path: scalar paths only");
    const auto& t = p.times();
    const auto& v = p.component(0);
    Skeleton sk = skeleton_indices(t, v);
    std::vector<std::size_t> idx(sk.idx.begin(), sk.idx.begin() + sk.tau0 + 1);
    if (idx.back() != t.size() - 1)
        idx.push_back(t.size() - 1); // affine on [tau_0, T]
    return from_indices(t, v, idx);
}

Path mollify(const Path& p, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("mollify: eps must be positive");
    const double T = p.horizon();
    // sample on a grid fine enough to resolve both the path and the kernel
    const int per_eps = 16;
    int n = static_cast<int>(std::ceil(T / eps)) * per_eps;
    n = std::max(n, 2 * static_cast<int>(p.knot_count()));
    n = std::min(n, 1 << 22);
    const double dt = T / n;
    const int k = std::max(1, static_cast<int>(std::round(eps / dt)));

    // bump kernel exp(-1/(1-z^2)) on (-1,1), discretized and normalized;
    // even with zero first moment by symmetry
    std::vector<double> w(2 * k + 1, 0.0);
    double wsum = 0.0;
    for (int j = -k; j <= k; ++j) {
        const double z = static_cast<double>(j) / k;
        if (std::abs(z) < 1.0)
            w[j + k] = std::exp(-1.0 / (1.0 - z * z));
        wsum += w[j + k];
    }
    for (auto& x : w)
        x /= wsum;

    std::vector<double> ts = uniform_times(T, n);
    std::vector<std::vector<double>> vs;
    for (int c = 0; c < p.components(); ++c) {
        std::vector<double> raw(n + 1);
        for (int i = 0; i <= n; ++i)
            raw[i] = p.eval(c, ts[i]);
        std::vector<double> sm(n + 1, 0.0);
        for (int i = 0; i <= n; ++i) {
            double acc = 0.0;
            for (int j = -k; j <= k; ++j) {
                int idx = std::clamp(i + j, 0, n); // clamped extension
                acc += w[j + k] * raw[idx];
            }
            sm[i] = acc;
        }
        const double anchor = sm[0];
        for (auto& x : sm)
            x -= anchor;
        sm[0] = 0.0;
        vs.push_back(std::move(sm));
    }
    return Path(std::move(ts), std::move(vs));
}

Path interpolate(const Path& p, double delta) {
    const double T = p.horizon();
    if (!(delta > 0.0) || delta > T * (1.0 + 1e-12))
        throw std::invalid_argument("interpolate: need 0 < delta <= T");
    int n = static_cast<int>(std::round(T / delta));
    n = std::max(n, 1);
    std::vector<double> ts = uniform_times(T, n);
    std::vector<std::vector<double>> vs;
    for (int c = 0; c < p.components(); ++c) {
        std::vector<double> v(n + 1);
        for (int i = 0; i <= n; ++i)
            v[i] = p.eval(c, ts[i]);
        v[0] = 0.0;
        vs.push_back(std::move(v));
    }
    return Path(std::move(ts), std::move(vs));
}

std::string path_to_csv(const Path& p) {
    std::ostringstream out;
    out << "t";
    for (int c = 0; c < p.components(); ++c)
        out << ",v" << (c + 1);
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < p.knot_count(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", p.times()[i]);
        out << buf;
        for (int c = 0; c < p.components(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", p.component(c)[i]);
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

Path path_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("path_from_csv: empty input");
    int m = static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (m < 1)
        throw std::invalid_argument("path_from_csv: expected header t,v1[,v2,...]");
    std::vector<double> ts;
    std::vector<std::vector<double>> vs(m);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string cell;
        if (!std::getline(ls, cell, ','))
            break;
        ts.push_back(std::stod(cell));
        for (int c = 0; c < m; ++c) {
            if (!std::getline(ls, cell, ','))
                throw std::invalid_argument("path_from_csv: short row");
            vs[c].push_back(std::stod(cell));
        }
    }
    return Path(std::move(ts), std::move(vs));
}

} // namespace roughhj
