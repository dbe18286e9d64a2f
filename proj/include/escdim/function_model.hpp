#pragma once
#include <memory>

#include "escdim/affine.hpp"
#include "escdim/contour.hpp"
#include "escdim/errors.hpp"
#include "escdim/types.hpp"

namespace escdim {

enum class Family { F0, Fp, Exp, Pushforward };

// A concrete entire function.  The two Cauchy-integral families carry their
// truncated boundary contour; evaluation dispatches on which side of the
// contour the point falls, adding the continuation term on the inside.  The
// continuation sign is calibrated once at construction by comparing the two
// representations across the boundary at a probe point, and is immutable
// afterwards, so models are safe to share across threads.
class FunctionModel {
public:
    struct Impl; // opaque shared state (contour, calibration, parameters)

    static FunctionModel f0(cplx kappa = {}, double quad_tol = 1e-8);
    static FunctionModel fp(double p, double K = 0.0, double quad_tol = 1e-8);
    static FunctionModel exponential(double quad_tol = 1e-8);
    static FunctionModel pushforward(const FunctionModel& base, const AffineMap& phi,
                                     const AffineMap& psi);

    Family family() const;
    cplx kappa() const;
    double p() const;
    double K() const;
    double quad_tol() const;
    const AffineMap& phi() const;        // Pushforward only
    const AffineMap& psi() const;        // Pushforward only
    const FunctionModel& base() const;   // Pushforward only
    const ContourSpec& contour() const;  // F0/Fp only
    int continuation_sign() const;       // +1/-1; F0/Fp only
    // How sharply the calibration separated the two candidate signs
    // (mismatch of the rejected sign / mismatch of the chosen sign).
    double calibration_ratio() const;

    // Full evaluation: value, error estimate, reduced-accuracy flag (set when
    // the point lies within delta of the contour and the local expansion
    // could not certify the requested tolerance).
    EvalResult eval_full(cplx z, double tol = 0.0) const; // tol<=0 -> quad_tol
    cplx eval(cplx z, double tol = 0.0) const { return eval_full(z, tol).value; }

    // The two analytic branches, without the near-boundary machinery.  Used by
    // the calibration and by continuity checks across the contour; callers
    // must keep distance(z, contour) >= 1e-9.
    cplx eval_exterior_rep(cplx z, double tol = 0.0) const;
    cplx eval_interior_rep(cplx z, double tol = 0.0) const;

    // Continuation term added on the inside (the boundary density evaluated
    // at z).  Throws OverflowError carrying log|corr| when unrepresentable.
    cplx correction_term(cplx z) const;
    double correction_log_abs(cplx z) const;

    RegionMembership membership(cplx z) const;

    // max |f| on |z| = r from n_samples equispaced angles plus a golden-section
    // polish around the best sample.  Throws OverflowError naming the first
    // overflowing angle.
    double max_modulus(double r, int n_samples = 64) const;
    // Same search in log space; overflowing samples contribute their
    // closed-form log-magnitude instead of failing.
    double log_max_modulus(double r, int n_samples = 64) const;
    // log log log M(r) / log log r.  Needs r > e and M(r) > e^e.
    double growth_statistic(double r) const;

private:
    std::shared_ptr<const Impl> impl_;
    explicit FunctionModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Parameter conversions between the target dimension d in (1,2) and the
// region exponent p > 0:  p = (2-d)/(d-1),  d = 1 + 1/(1+p).
double p_from_d(double d);
double d_from_p(double p);

} // namespace escdim
