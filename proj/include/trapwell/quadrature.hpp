#pragma once

#include <functional>

namespace trapwell {

struct quad_result {
    double value = 0;
    double error = 0;
};

// Adaptive 7/15-point Gauss-Kronrod on [a, b]: the interval with the largest
// error estimate is bisected until the summed estimate is below
// max(tol, 1e-14 * integral of |f|).  Throws numerical_error past 1e6 pieces.
quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12);

}  // namespace trapwell
