#include "roughhj/hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace roughhj {

Hamiltonian Hamiltonian::abs() {
    Hamiltonian h;
    h.form_ = Form::Abs;
    h.convex_ = true;
    return h;
}

Hamiltonian Hamiltonian::neg_abs() {
    Hamiltonian h;
    h.form_ = Form::NegAbs;
    h.concave_ = true;
    return h;
}

Hamiltonian Hamiltonian::quadratic(double a) {
    Hamiltonian h;
    h.form_ = Form::Quadratic;
    h.param_ = a;
    h.convex_ = a >= 0.0; // a = 0 is the zero Hamiltonian, weakly convex
    h.concave_ = a <= 0.0;
    h.uc_ = a > 0.0 ? a : 0.0;
    return h;
}

Hamiltonian Hamiltonian::power(double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("Hamiltonian::power: theta in (0,1] required");
    Hamiltonian h;
    h.form_ = Form::Power;
    h.param_ = theta;
    h.convex_ = theta == 1.0;
    return h;
}

Hamiltonian Hamiltonian::table(GridFn values, bool convex_hint) {
    Hamiltonian h;
    h.form_ = Form::Table;
    h.convex_ = convex_hint && numerically_convex(values);
    h.table_ = std::move(values);
    return h;
}

double Hamiltonian::eval(double p) const {
    switch (form_) {
    case Form::Abs:
        return std::abs(p);
    case Form::NegAbs:
        return -std::abs(p);
    case Form::Quadratic:
        return 0.5 * param_ * p * p;
    case Form::Power:
        return std::pow(std::abs(p), param_);
    case Form::Table:
        return table_->eval(p);
    }
    return 0.0;
}

double Hamiltonian::deriv(double p) const {
    switch (form_) {
    case Form::Abs:
        return p > 0.0 ? 1.0 : (p < 0.0 ? -1.0 : 0.0);
    case Form::NegAbs:
        return p > 0.0 ? -1.0 : (p < 0.0 ? 1.0 : 0.0);
    case Form::Quadratic:
        return param_ * p;
    case Form::Power: {
        if (p == 0.0)
            return 0.0;
        const double s = p > 0.0 ? 1.0 : -1.0;
        return s * param_ * std::pow(std::abs(p), param_ - 1.0);
    }
    case Form::Table: {
        const double h = table_->step();
        return (table_->eval(p + h) - table_->eval(p - h)) / (2.0 * h);
    }
    }
    return 0.0;
}

double Hamiltonian::lipschitz(double pmax) const {
    switch (form_) {
    case Form::Abs:
    case Form::NegAbs:
        return 1.0;
    case Form::Quadratic:
        return std::abs(param_) * pmax;
    case Form::Power:
        return param_ >= 1.0 ? param_ : std::pow(std::max(pmax, 1e-12), param_ - 1.0) * param_;
    case Form::Table:
        return table_->lipschitz();
    }
    return 0.0;
}

void Hamiltonian::set_decomposition(Hamiltonian h1, Hamiltonian h2) {
    if (!h1.is_convex() || !h2.is_convex())
        throw std::invalid_argument("Hamiltonian::set_decomposition: both parts must be convex");
    h1_ = std::make_shared<const Hamiltonian>(std::move(h1));
    h2_ = std::make_shared<const Hamiltonian>(std::move(h2));
}

std::string Hamiltonian::describe() const {
    std::ostringstream out;
    switch (form_) {
    case Form::Abs:
        out << "abs";
        break;
    case Form::NegAbs:
        out << "neg_abs";
        break;
    case Form::Quadratic:
        out << "quadratic(" << param_ << ")";
        break;
    case Form::Power:
        out << "power(" << param_ << ")";
        break;
    case Form::Table:
        out << "table[" << table_->size() << "]";
        break;
    }
    out << (convex_ ? " convex" : concave_ ? " concave" : " nonconvex");
    return out.str();
}

bool numerically_convex(const GridFn& f, double tol_scale) {
    const double tol = tol_scale * std::max(1.0, f.sup_norm());
    for (int i = 1; i + 1 < f.size(); ++i)
        if (f[i + 1] + f[i - 1] - 2.0 * f[i] < -tol)
            return false;
    return true;
}

} // namespace roughhj
