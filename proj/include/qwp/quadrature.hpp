#pragma once

#include <functional>
#include <stdexcept>

namespace qwp {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to the given
/// absolute tolerance. Throws QuadratureError when the subdivision budget is
/// exhausted before the error estimate falls below tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);

}  // namespace qwp
