#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace roughhj {

// Piecewise-linear continuous driving signal. Knot times strictly increase,
// the first knot is (0, 0) in every component, and evaluation between knots
// is exact linear interpolation. Immutable after construction.
class Path {
  public:
    Path(std::vector<double> times, std::vector<std::vector<double>> values);

    static Path scalar(std::vector<double> times, std::vector<double> values);
    static Path zero(double horizon);

    int components() const { return static_cast<int>(values_.size()); }
    std::size_t knot_count() const { return times_.size(); }
    double horizon() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& component(int c) const { return values_.at(c); }

    double eval(int component, double t) const;
    double eval(double t) const { return eval(0, t); }

    // running max and min of one component over [0,t]
    std::pair<double, double> running_extrema(int component, double t) const;
    std::pair<double, double> running_extrema(double t) const { return running_extrema(0, t); }

    double total_variation(int component, double a, double b) const;
    double total_variation(double a, double b) const { return total_variation(0, a, b); }
    double total_variation() const { return total_variation(0, 0.0, horizon()); }

    // restriction to [0,t], keeping interior knots and adding a knot at t
    Path restrict(double t) const;

  private:
    std::vector<double> times_;
    std::vector<std::vector<double>> values_; // one array per component
};

enum class PathKind { Brownian, Sawtooth, Linear, Hoelder };

// hoelder construction variants: a dyadic tent cascade, or alternating
// monotone arches t^alpha whose cusps carry the modulus
enum class HoelderConstruction { Cascade, Arch };

// Deterministic recipe for a path; identical spec gives a bit-identical Path.
struct PathEnsembleSpec {
    std::uint64_t seed = 0;
    double horizon = 1.0;
    int resolution = 1; // knot intervals (brownian), teeth (sawtooth), dyadic levels (hoelder)
    PathKind kind = PathKind::Brownian;
    int components = 1;
    double mu = 1.0;    // sawtooth slope magnitude
    double slope = 1.0; // linear
    double alpha = 0.5; // hoelder exponent
    double amplitude = 1.0;
    HoelderConstruction construction = HoelderConstruction::Arch;
};

Path sample_path(const PathEnsembleSpec& spec);

// Skeleton (reduced path) through the alternating successive extrema; exact
// for piecewise-linear paths. Scalar paths only.
Path reduce_path(const Path& p);

// As reduce_path but affine after the last global extremum.
Path fully_reduce_path(const Path& p);

// Discrete mollification with a compactly supported even bump kernel of
// half-width eps (zero first moment), clamped at the ends and re-anchored so
// the result starts at 0.
Path mollify(const Path& p, double eps);

// Linear interpolation of p at multiples of delta (delta must divide the
// horizon up to rounding slack).
Path interpolate(const Path& p, double delta);

std::string path_to_csv(const Path& p);
Path path_from_csv(const std::string& text);

} // namespace roughhj
