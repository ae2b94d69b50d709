#pragma once

#include "roughhj/grid.hpp"

#include <memory>
#include <optional>
#include <string>

namespace roughhj {

// Descriptor of a spatially homogeneous Hamiltonian. Closed-form entries come
// from a fixed catalog; arbitrary H enters as a table over p. The Lipschitz
// constant refers to the reference ball |p| <= pmax.
class Hamiltonian {
  public:
    enum class Form { Abs, NegAbs, Quadratic, Power, Table };

    static Hamiltonian abs();                      // |p|
    static Hamiltonian neg_abs();                  // -|p|
    static Hamiltonian quadratic(double a);        // a p^2 / 2
    static Hamiltonian power(double theta);        // |p|^theta, theta in (0,1]
    static Hamiltonian table(GridFn values, bool convex_hint = false);

    Form form() const { return form_; }
    double eval(double p) const;
    double deriv(double p) const;

    bool is_convex() const { return convex_; }
    bool is_concave() const { return concave_; }
    // Lipschitz constant of H on |p| <= pmax
    double lipschitz(double pmax) const;
    // uniform convexity constant (D^2 H >= theta), 0 when not uniformly convex
    double uniform_convexity() const { return uc_; }
    double param() const { return param_; }
    const std::optional<GridFn>& table_values() const { return table_; }

    // optional difference-of-convex split H = H1 - H2
    bool has_decomposition() const { return static_cast<bool>(h1_); }
    const Hamiltonian& part1() const { return *h1_; }
    const Hamiltonian& part2() const { return *h2_; }
    void set_decomposition(Hamiltonian h1, Hamiltonian h2);

    std::string describe() const;

  private:
    Hamiltonian() = default;
    Form form_ = Form::Abs;
    double param_ = 0.0; // quadratic a / power theta
    std::optional<GridFn> table_;
    bool convex_ = false, concave_ = false;
    double uc_ = 0.0;
    std::shared_ptr<const Hamiltonian> h1_, h2_;
};

// numerical convexity test: second differences >= -tol_scale * max|f|
bool numerically_convex(const GridFn& f, double tol_scale = 1e-8);

} // namespace roughhj
