// Finite-difference Dunkl operator
//   Lambda_k f(x) = f'(x) + (2k+1)/x * (f(x) - f(-x))/2.
#pragma once

#include "dunkl/grid.hpp"

namespace dunkl {

// Second-order nonuniform central differences in the interior, one-sided
// second-order stencils at +-X. Grid nodes never sit at 0; the reflection
// quotient is evaluated directly on symmetric node pairs.
GridFunction dunkl_derivative(const GridFunction& f);

// The limit Lambda_k f(0) = (2k+2) f'(0), with f'(0) taken from the innermost
// symmetric pair.
cplx dunkl_derivative_at_zero(const GridFunction& f);

} // namespace dunkl
