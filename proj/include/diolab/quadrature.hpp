#ifndef DIOLAB_QUADRATURE_HPP
#define DIOLAB_QUADRATURE_HPP

#include <functional>

namespace diolab {

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// Subdivides until the local Kronrod-minus-Gauss error estimate is below
// rel_tol times the running integral, or max_depth is reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8, int max_depth = 48);

} // namespace diolab

#endif
