#pragma once
#include "escdim/contour.hpp"
#include "escdim/types.hpp"

namespace escdim {

struct QuadResult {
    cplx value{};
    double err = 0.0;      // estimated absolute error of the quadrature
    int intervals = 0;     // subintervals in the final partition
};

// (1/2(pi)i) * integral over the contour of density(t) / (t - z)^m dt.
//
// Adaptive Gauss-Kronrod(7,15) with a worst-interval-first refinement queue;
// nodes pile up automatically near the contour's closest approach to z.
// m >= 1 selects the kernel power (m = k+1 gives the k-th derivative up to a
// factor k!).
//
// Throws NearSingularityError when z is closer than 1e-9 to the contour
// (pass known_distance >= 0 to skip the internal distance computation) and
// ToleranceNotMetError when the interval budget runs out above tol.
QuadResult eval_cauchy_integral(const ContourSpec& contour, cplx z, double tol,
                                int m = 1, int max_intervals = 6000,
                                double known_distance = -1.0);

} // namespace escdim
