#pragma once
#include <limits>
#include <vector>

#include "escdim/function_model.hpp"

namespace escdim {

enum class OrbitStatus { Escaped, BoundedHorizon, Undetermined, OverflowEscaped };

// Finite orbit of a point: values and moduli for steps n = 1..m (a step whose
// value overflows is not stored; at_step names it), plus the classification.
//
// Escaped(n): |f^n| >= escape_radius and the next two recorded moduli increase
// strictly; iteration stops after the confirmation pair.  OverflowEscaped(n):
// step n overflowed.  BoundedHorizon: horizon hit with every modulus below
// escape_radius.  Undetermined: horizon hit after an unconfirmed crossing, or
// an evaluation failure (eval_failure flags the latter).
struct OrbitRecord {
    cplx start{};
    std::vector<cplx> points;
    std::vector<double> moduli;
    OrbitStatus status = OrbitStatus::Undetermined;
    int at_step = -1;           // 1-based; Escaped/OverflowEscaped only
    bool stayed_above_R = true; // every recorded modulus >= R (vacuous if none)
    bool eval_failure = false;
    double min_modulus = std::numeric_limits<double>::infinity();
};

OrbitRecord iterate_orbit(const FunctionModel& model, cplx z0, int max_iter,
                          double escape_radius, double R);

} // namespace escdim
