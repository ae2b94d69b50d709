#include "roughhj/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace roughhj {

GridFn::GridFn(double origin, double step, std::vector<double> values, Boundary boundary)
    : x0_(origin), h_(step), v_(std::move(values)), b_(boundary) {
    if (!(h_ > 0.0))
        throw std::invalid_argument("GridFn: step must be positive");
    if (v_.size() < 2)
        throw std::invalid_argument("GridFn: need at least two values");
}

GridFn GridFn::sample(double a, double b, int n, const std::function<double(double)>& f,
                      Boundary boundary) {
    if (n < 2)
        throw std::invalid_argument("GridFn::sample: n must be >= 2");
    const double h = (b - a) / (boundary == Boundary::Periodic ? n : (n - 1));
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = f(a + h * i);
    return GridFn(a, h, std::move(v), boundary);
}

double GridFn::at(int i) const {
    const int n = size();
    if (b_ == Boundary::Periodic) {
        int k = i % n;
        if (k < 0)
            k += n;
        return v_[k];
    }
    if (i < 0)
        return v_[0] + (v_[1] - v_[0]) * i;
    if (i >= n)
        return v_[n - 1] + (v_[n - 1] - v_[n - 2]) * (i - (n - 1));
    return v_[i];
}

double GridFn::eval(double x) const {
    const double s = (x - x0_) / h_;
    const double fl = std::floor(s);
    int i = static_cast<int>(fl);
    const double w = s - fl;
    if (w == 0.0)
        return at(i);
    return (1.0 - w) * at(i) + w * at(i + 1);
}

double GridFn::max() const { return *std::max_element(v_.begin(), v_.end()); }
double GridFn::min() const { return *std::min_element(v_.begin(), v_.end()); }

double GridFn::sup_norm() const {
    double m = 0.0;
    for (double x : v_)
        m = std::max(m, std::abs(x));
    return m;
}

double GridFn::lipschitz() const {
    double m = 0.0;
    for (int i = 0; i + 1 < size(); ++i)
        m = std::max(m, std::abs(v_[i + 1] - v_[i]));
    if (b_ == Boundary::Periodic)
        m = std::max(m, std::abs(v_[0] - v_[size() - 1]));
    return m / h_;
}

GridFn GridFn::map(const std::function<double(double)>& f) const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i)
        w[i] = f(v_[i]);
    return GridFn(x0_, h_, std::move(w), b_);
}

double sup_dist(const GridFn& a, const GridFn& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sup_dist: size mismatch");
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::string gridfn_to_csv(const GridFn& g) {
    std::ostringstream out;
    out << "x,v\n";
    char buf[64];
    for (int i = 0; i < g.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", g.x(i));
        out << buf << ",";
        std::snprintf(buf, sizeof buf, "%.17g", g[i]);
        out << buf << "\n";
    }
    return out.str();
}

GridFn gridfn_from_csv(const std::string& text, Boundary boundary) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("gridfn_from_csv: empty input");
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("gridfn_from_csv: malformed row");
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 2)
        throw std::invalid_argument("gridfn_from_csv: need at least two rows");
    return GridFn(xs.front(), xs[1] - xs[0], std::move(vs), boundary);
}

Grid2::Grid2(double x0, double y0, double h, int nx, int ny, Boundary boundary)
    : x0_(x0), y0_(y0), h_(h), nx_(nx), ny_(ny), b_(boundary),
      v_(static_cast<std::size_t>(nx) * ny, 0.0) {
    if (!(h > 0.0) || nx < 3 || ny < 3)
        throw std::invalid_argument("Grid2: bad dimensions");
}

std::string grid2_to_csv(const Grid2& g) {
    std::ostringstream out;
    out << "x,y,v\n";
    char buf[120];
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j), g(i, j));
            out << buf;
        }
    return out.str();
}

double Grid2::at(int i, int j) const {
    if (b_ == Boundary::Periodic) {
        int a = i % nx_;
        if (a < 0)
            a += nx_;
        int b = j % ny_;
        if (b < 0)
            b += ny_;
        return (*this)(a, b);
    }
    // linear extension axis by axis
    if (i < 0)
        return at(0, j) + (at(1, j) - at(0, j)) * i;
    if (i >= nx_)
        return at(nx_ - 1, j) + (at(nx_ - 1, j) - at(nx_ - 2, j)) * (i - (nx_ - 1));
    if (j < 0)
        return (*this)(i, 0) + ((*this)(i, 1) - (*this)(i, 0)) * j;
    if (j >= ny_)
        return (*this)(i, ny_ - 1) + ((*this)(i, ny_ - 1) - (*this)(i, ny_ - 2)) * (j - (ny_ - 1));
    return (*this)(i, j);
}

} // namespace roughhj
