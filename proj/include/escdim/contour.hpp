#pragma once
#include <vector>

#include "escdim/errors.hpp"
#include "escdim/types.hpp"

namespace escdim {

// ---------------------------------------------------------------------------
// Weight functions ("densities") that sit on top of the Cauchy kernel.
// ---------------------------------------------------------------------------

enum class DensityKind {
    DoubleExp,   // exp(exp(t))
    LogPowerExp, // exp(exp((log t)^(1+p))), principal branches
    RationalTest // 1/(t - pole); used to cross-check the quadrature engine
};

struct Density {
    DensityKind kind = DensityKind::DoubleExp;
    double p = 0.0; // exponent parameter for LogPowerExp
    cplx pole{};    // pole for RationalTest

    static Density double_exp() { return {DensityKind::DoubleExp, 0.0, {}}; }
    static Density log_power_exp(double p);
    static Density rational(cplx pole) { return {DensityKind::RationalTest, 0.0, pole}; }

    cplx eval(cplx t) const;
    // log|eval(t)| computed without forming the value (safe for huge inputs)
    double log_abs(cplx t) const;
};

// ---------------------------------------------------------------------------
// Contour pieces and the truncated integration contour.
// ---------------------------------------------------------------------------

enum class PieceKind {
    Line,        // straight segment from a to b
    BoundaryArc  // graph y = sign * arc_half_width_p(x), x in [x0, x1]
};

// Half-width of the log-power region at abscissa x (x >= 3):
//   pi * x / ((1+p) * (log x)^p)
double arc_half_width(double p, double x);
double arc_half_width_deriv(double p, double x);

struct ContourPiece {
    PieceKind kind = PieceKind::Line;
    cplx a{}, b{};           // Line endpoints
    double x0 = 0, x1 = 0;   // BoundaryArc abscissa range (traversal order)
    double sign = 1.0;       // +1 upper arc, -1 lower arc
    double p = 0.0;          // arc family parameter

    static ContourPiece line(cplx a, cplx b);
    static ContourPiece arc(double p, double x0, double x1, double sign);

    cplx point(double s) const;  // s in [0,1]
    cplx deriv(double s) const;  // d point / d s
    cplx start() const { return point(0.0); }
    cplx end() const { return point(1.0); }
    double length_upper_bound() const;
};

struct ContourSpec {
    std::vector<ContourPiece> pieces; // connected, traversed clockwise
    bool clockwise_around_region = true;
    double truncation_x = 0.0; // abscissa where the unbounded ends were cut
    double tail_bound = 0.0;   // certified bound on the discarded |density| mass
    Density density;           // the weight this contour was built for

    // Distance from z to the truncated contour (the pieces actually present).
    double distance(cplx z) const;
    // Closest contour point to z (same search as distance()).
    cplx nearest_point(cplx z) const;
};

// Certified tail bounds used when choosing truncation_x.
double double_exp_tail_bound(double X);
double log_power_tail_bound(double p, double X);

// Build the clockwise boundary contour for one of the two families,
// truncated so the discarded tail mass is <= quad_tol / 10.
// min_truncation_x can push the cut farther out (callers evaluating at large
// real part need the contour to extend past them).
ContourSpec build_contour_f0(double quad_tol, double min_truncation_x = 3.0);
ContourSpec build_contour_fp(double p, double quad_tol, double min_truncation_x = 3.0);

// ---------------------------------------------------------------------------
// Region membership relative to the *untruncated* region boundary.
// ---------------------------------------------------------------------------

enum class RegionStatus { Exterior, Interior, NearBoundary };

struct RegionMembership {
    RegionStatus status = RegionStatus::Exterior;
    double distance = 0.0; // distance to the full (untruncated) boundary
    bool inside = false;   // side of the boundary, regardless of status
};

inline constexpr double kNearBoundaryDelta = 0.05;

// F0 region: { Re z > 0, |Im z| < pi }.
RegionMembership region_membership_f0(cplx z, double delta = kNearBoundaryDelta);
// Log-power region: { x + iy : x >= 3, |y| <= arc_half_width(p, x) }.
RegionMembership region_membership_fp(double p, cplx z, double delta = kNearBoundaryDelta);

} // namespace escdim
