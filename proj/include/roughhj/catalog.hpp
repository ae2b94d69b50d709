#pragma once

#include "roughhj/grid.hpp"
#include "roughhj/hamiltonian.hpp"
#include "roughhj/scl.hpp"
#include "roughhj/semilinear.hpp"

#include <string>
#include <vector>

namespace roughhj {

struct CatalogEntry {
    std::string name;
    std::string kind; // hamiltonian / flux / noise / u0 / path
    std::string notes;
};

// built-in problem pieces with the metadata the solvers' preconditions need
std::vector<CatalogEntry> catalog_list();

// "abs", "neg_abs", "quadratic", "quadratic:a", "power:theta", "bounded"
Hamiltonian catalog_hamiltonian(const std::string& name);

// "burgers", "cubic", "linear:c"
FluxA catalog_flux(const std::string& name);

// "zero", "linear", "sine"
SemiH catalog_noise(const std::string& name);

// "abs" -> |x| on [-box, box]; "cone:slope"; "tent" (periodic 2-periodic tent);
// "gauss" (periodic Gaussian on [0,2)); "sawtooth:slope" periodic
GridFn catalog_u0(const std::string& name, int n, double box);

// rejected at the API level: no pathwise theory backs semilinear noise on
// conservation laws (shocks are not preserved under the inverse flow map)
[[noreturn]] void scl_semilinear_noise(const std::string& what);

} // namespace roughhj
