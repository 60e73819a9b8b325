#pragma once

#include <functional>

#include "folap/fields.hpp"
#include "folap/young.hpp"

namespace folap {

// \int_dom A(|u|) dx with the grid's trapezoid weights over contained nodes
double modular(const YoungFunction& yf, const Field& u, const Domain& dom, const Grid& g);

// Gagliardo-type modular: double sum over contained node pairs (diagonal
// excluded) of A(|u(x)-u(y)| / |x-y|^s) * cell_x * cell_y / |x-y|^n
double fractional_modular(const YoungFunction& yf, const Field& u, const Domain& dom,
                          const Grid& g, double s);

// Luxemburg norm inf{ lam > 0 : modular_of(lam) <= 1 } where modular_of(lam)
// evaluates the modular of u/lam.  Bracketed by the widest index window of yf,
// then bisected to relative tolerance 1e-10 (absolute 1e-12).
double luxemburg_norm(const YoungFunction& yf,
                      const std::function<double(double)>& modular_of);

}  // namespace folap
