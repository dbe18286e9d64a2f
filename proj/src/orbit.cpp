#include "escdim/orbit.hpp"

#include <cmath>

#include "escdim/errors.hpp"

namespace escdim {

namespace {

// One orbit step.  Points that land exactly on (or absurdly close to) the
// contour would abort the whole orbit, so retry once with a fixed diagonal
// nudge; the contour pieces are vertical/horizontal/shallow arcs, so a
// diagonal offset always gains clearance.  Deterministic by construction.
cplx step_once(const FunctionModel& model, cplx z) {
    try {
        return model.eval(z);
    } catch (const NearSingularityError&) {
        const double h = 1e-7 + 1e-9 * std::abs(z);
        const double inv_sqrt2 = 0.70710678118654752440;
        return model.eval(z + h * cplx(inv_sqrt2, inv_sqrt2));
    }
}

} // namespace

OrbitRecord iterate_orbit(const FunctionModel& model, cplx z0, int max_iter,
                          double escape_radius, double R) {
    if (max_iter < 1) throw ConfigError("iterate_orbit: max_iter must be >= 1");
    if (!(R > 0.0)) throw ConfigError("iterate_orbit: R must be positive");
    if (!(escape_radius > R))
        throw ConfigError("iterate_orbit: escape_radius must exceed R");

    OrbitRecord rec;
    rec.start = z0;
    rec.points.reserve(static_cast<size_t>(max_iter));
    rec.moduli.reserve(static_cast<size_t>(max_iter));

    cplx z = z0;
    bool done = false;
    for (int n = 1; n <= max_iter && !done; ++n) {
        cplx w;
        try {
            w = step_once(model, z);
        } catch (const OverflowError&) {
            rec.status = OrbitStatus::OverflowEscaped;
            rec.at_step = n;
            done = true;
            break;
        } catch (const Error&) {
            rec.status = OrbitStatus::Undetermined;
            rec.eval_failure = true;
            done = true;
            break;
        }
        rec.points.push_back(w);
        rec.moduli.push_back(std::abs(w));
        z = w;

        // Each candidate crossing step k is tested exactly once, in order, as
        // soon as its two confirmation steps exist.
        const size_t m = rec.moduli.size();
        if (m >= 3) {
            const size_t k = m - 3;
            if (rec.moduli[k] >= escape_radius && rec.moduli[k + 1] > rec.moduli[k] &&
                rec.moduli[k + 2] > rec.moduli[k + 1]) {
                rec.status = OrbitStatus::Escaped;
                rec.at_step = static_cast<int>(k) + 1;
                done = true;
            }
        }
    }

    if (!done) {
        bool crossed = false;
        for (double m : rec.moduli)
            if (m >= escape_radius) crossed = true;
        rec.status = crossed ? OrbitStatus::Undetermined : OrbitStatus::BoundedHorizon;
    }

    for (double m : rec.moduli) {
        if (m < rec.min_modulus) rec.min_modulus = m;
        if (m < R) rec.stayed_above_R = false;
    }
    return rec;
}

} // namespace escdim
