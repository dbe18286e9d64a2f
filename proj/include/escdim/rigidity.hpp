#pragma once
#include <cstdint>
#include <vector>

#include "escdim/function_model.hpp"

namespace escdim {

// Radius (K+1)/(K-1) of the disc on which a K-quasiconformal straightening
// can move the unit disc's center; K > 1.
double disc_radius(double K);

// Dilatation (D + |lambda|) / (D - |lambda|) picked up when the multiplier
// lambda is transported across a disc of radius D > |lambda|.
double dilatation_at(double D, cplx lambda);

// dim >= dim_in / K for sets carried by a K-quasiconformal map, K >= 1.
double qc_dim_lower_bound(double dim_in, double K);

// psi . f . phi^{-1} as a model in its own right.
FunctionModel affine_pushforward(const FunctionModel& f, const AffineMap& phi,
                                 const AffineMap& psi);

struct ResidualReport {
    double residual = 0.0; // max over retained samples of |psi(f(z)) - g(phi(z))|
    int retained = 0;
    int filtered = 0;      // near-boundary or overflowing samples dropped
};

// Conjugacy defect of (phi, psi) between f and g on a sample set.  Samples in
// either model's near-boundary collar and samples where either side overflows
// are excluded; all-excluded throws AllSamplesFilteredError.
ResidualReport equivalence_residual(const FunctionModel& f, const FunctionModel& g,
                                    const AffineMap& phi, const AffineMap& psi,
                                    const std::vector<cplx>& samples,
                                    double tol = 1e-8);

// Deterministic uniform samples in the square [-half_width, half_width]^2.
std::vector<cplx> sample_box(uint64_t seed, int n, double half_width);

} // namespace escdim
