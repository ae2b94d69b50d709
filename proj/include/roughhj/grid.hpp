#pragma once

#include <functional>
#include <string>
#include <vector>

namespace roughhj {

enum class Boundary { Periodic, LinearExtension };

// Scalar function sampled on a uniform 1D grid. Periodic grids treat the node
// past the last one as the first (period = n*h); linear-extension grids
// extend with the one-sided boundary slope, which keeps Lipschitz constants.
class GridFn {
  public:
    GridFn(double origin, double step, std::vector<double> values,
           Boundary boundary = Boundary::LinearExtension);

    static GridFn sample(double a, double b, int n, const std::function<double(double)>& f,
                         Boundary boundary = Boundary::LinearExtension);

    int size() const { return static_cast<int>(v_.size()); }
    double origin() const { return x0_; }
    double step() const { return h_; }
    Boundary boundary() const { return b_; }
    double x(int i) const { return x0_ + h_ * i; }
    double xmax() const { return x(size() - 1); }

    double& operator[](int i) { return v_[i]; }
    double operator[](int i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    // node value with boundary rule applied for out-of-range indices
    double at(int i) const;
    // piecewise-linear evaluation at an arbitrary point
    double eval(double x) const;

    double max() const;
    double min() const;
    double sup_norm() const;
    // max |v[i+1]-v[i]|/h (periodic grids include the wrap edge)
    double lipschitz() const;

    GridFn map(const std::function<double(double)>& f) const;

  private:
    double x0_, h_;
    std::vector<double> v_;
    Boundary b_;
};

double sup_dist(const GridFn& a, const GridFn& b);

std::string gridfn_to_csv(const GridFn& g);
GridFn gridfn_from_csv(const std::string& text, Boundary boundary = Boundary::LinearExtension);

class Grid2;
std::string grid2_to_csv(const Grid2& g);

// Dense 2D grid for the two-dimensional schemes. Values stored row-major in
// y: idx = ix*ny + iy.
class Grid2 {
  public:
    Grid2(double x0, double y0, double h, int nx, int ny,
          Boundary boundary = Boundary::LinearExtension);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double h() const { return h_; }
    double x(int i) const { return x0_ + h_ * i; }
    double y(int j) const { return y0_ + h_ * j; }
    Boundary boundary() const { return b_; }

    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * ny_ + j]; }
    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * ny_ + j]; }
    double at(int i, int j) const;

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

  private:
    double x0_, y0_, h_;
    int nx_, ny_;
    Boundary b_;
    std::vector<double> v_;
};

} // namespace roughhj
