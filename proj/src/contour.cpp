#include "escdim/contour.hpp"

#include <algorithm>
#include <cmath>

namespace escdim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golden-section minimizer for smooth 1-d slices (distance-to-arc etc).
template <class F>
double golden_min(F f, double lo, double hi, int iters = 80) {
    const double r = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        }
    }
    return std::min(f(0.5 * (a + b)), std::min(f1, f2));
}

cplx point_segment_project(cplx z, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return a;
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return a + t * ab;
}

double point_segment_distance(cplx z, cplx a, cplx b) {
    return std::abs(z - point_segment_project(z, a, b));
}

template <class F>
double golden_argmin(F f, double lo, double hi, int iters = 80) {
    const double r = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Doubling mesh over [x_lo, x_hi].  Long rays/arcs are split at these knots so
// the quadrature seeds never miss the density mass concentrated at the low end
// (re-truncated contours can extend astronomically far out).
std::vector<double> chunk_knots(double x_lo, double x_hi) {
    std::vector<double> ks{x_lo};
    double step = 4.0, cur = x_lo;
    while (cur + step < x_hi) {
        cur += step;
        ks.push_back(cur);
        step *= 2.0;
    }
    ks.push_back(x_hi);
    return ks;
}

// Re(exp(w)) evaluated in log space so it never overflows: returns the exact
// sign and |.| saturated to ~1e308.
double re_exp_safe(cplx w) {
    const double c = std::cos(w.imag());
    if (c == 0.0) return 0.0;
    const double lg = w.real() + std::log(std::abs(c));
    const double mag = lg > 709.0 ? 1e308 : std::exp(lg);
    return c > 0.0 ? mag : -mag;
}

// exp(exp(w)) with overflow/underflow guards.  Values smaller than the double
// range quietly become 0 (harmless inside an integral); values larger raise.
cplx exp_exp_guarded(cplx w) {
    const double logmag = re_exp_safe(w); // log |exp(exp(w))|
    if (logmag < -745.0) return {0.0, 0.0};
    if (logmag > 690.0)
        throw OverflowError("exp(exp(.)) magnitude above 1e300", logmag);
    if (w.real() > 34.0) {
        // |Im exp(w)| is astronomically large: the phase of the result is not
        // representable, but the magnitude is tiny on any valid contour.
        return {std::exp(logmag), 0.0};
    }
    return std::exp(std::exp(w));
}

} // namespace

// ---------------------------------------------------------------------------
// Density
// ---------------------------------------------------------------------------

Density Density::log_power_exp(double p) {
    if (!(p > 0.0)) throw ConfigError("log-power family needs p > 0");
    return {DensityKind::LogPowerExp, p, {}};
}

cplx Density::eval(cplx t) const {
    switch (kind) {
    case DensityKind::DoubleExp:
        return exp_exp_guarded(t);
    case DensityKind::LogPowerExp: {
        // (log t)^(1+p), principal branches; contour points have Re t >= 3.
        const cplx w = std::log(t);
        const cplx u = std::exp((1.0 + p) * std::log(w));
        return exp_exp_guarded(u);
    }
    case DensityKind::RationalTest:
        return 1.0 / (t - pole);
    }
    return {};
}

double Density::log_abs(cplx t) const {
    switch (kind) {
    case DensityKind::DoubleExp:
        return re_exp_safe(t);
    case DensityKind::LogPowerExp: {
        const cplx w = std::log(t);
        const cplx u = std::exp((1.0 + p) * std::log(w));
        return re_exp_safe(u);
    }
    case DensityKind::RationalTest:
        return -std::log(std::abs(t - pole));
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Pieces
// ---------------------------------------------------------------------------

double arc_half_width(double p, double x) {
    return kPi * x / ((1.0 + p) * std::pow(std::log(x), p));
}

double arc_half_width_deriv(double p, double x) {
    const double L = std::log(x);
    return kPi / ((1.0 + p) * std::pow(L, p)) * (1.0 - p / L);
}

ContourPiece ContourPiece::line(cplx a, cplx b) {
    ContourPiece pc;
    pc.kind = PieceKind::Line;
    pc.a = a;
    pc.b = b;
    return pc;
}

ContourPiece ContourPiece::arc(double p, double x0, double x1, double sign) {
    ContourPiece pc;
    pc.kind = PieceKind::BoundaryArc;
    pc.p = p;
    pc.x0 = x0;
    pc.x1 = x1;
    pc.sign = sign;
    return pc;
}

cplx ContourPiece::point(double s) const {
    if (kind == PieceKind::Line) return a + s * (b - a);
    const double x = x0 + s * (x1 - x0);
    return {x, sign * arc_half_width(p, x)};
}

cplx ContourPiece::deriv(double s) const {
    if (kind == PieceKind::Line) return b - a;
    const double x = x0 + s * (x1 - x0);
    return cplx(1.0, sign * arc_half_width_deriv(p, x)) * (x1 - x0);
}

double ContourPiece::length_upper_bound() const {
    if (kind == PieceKind::Line) return std::abs(b - a);
    double acc = 0.0;
    cplx prev = point(0.0);
    for (int i = 1; i <= 16; ++i) {
        cplx cur = point(i / 16.0);
        acc += std::abs(cur - prev);
        prev = cur;
    }
    return acc * 1.1;
}

double ContourSpec::distance(cplx z) const {
    double best = 1e308;
    for (const auto& pc : pieces) {
        if (pc.kind == PieceKind::Line) {
            best = std::min(best, point_segment_distance(z, pc.a, pc.b));
        } else {
            auto d = [&](double s) { return std::abs(z - pc.point(s)); };
            int bi = 0;
            double bd = d(0.0);
            const int K = 48;
            for (int i = 1; i <= K; ++i) {
                double v = d(double(i) / K);
                if (v < bd) { bd = v; bi = i; }
            }
            double lo = std::max(0.0, (bi - 1.0) / K), hi = std::min(1.0, (bi + 1.0) / K);
            best = std::min(best, golden_min(d, lo, hi));
        }
    }
    return best;
}

cplx ContourSpec::nearest_point(cplx z) const {
    double best = 1e308;
    cplx bp{};
    for (const auto& pc : pieces) {
        cplx q;
        if (pc.kind == PieceKind::Line) {
            q = point_segment_project(z, pc.a, pc.b);
        } else {
            auto d = [&](double s) { return std::abs(z - pc.point(s)); };
            int bi = 0;
            double bd = d(0.0);
            const int K = 48;
            for (int i = 1; i <= K; ++i) {
                double v = d(double(i) / K);
                if (v < bd) { bd = v; bi = i; }
            }
            double lo = std::max(0.0, (bi - 1.0) / K), hi = std::min(1.0, (bi + 1.0) / K);
            q = pc.point(golden_argmin(d, lo, hi));
        }
        const double dq = std::abs(z - q);
        if (dq < best) { best = dq; bp = q; }
    }
    return bp;
}

// ---------------------------------------------------------------------------
// Tail bounds + builders
// ---------------------------------------------------------------------------

double double_exp_tail_bound(double X) {
    // |exp(exp(x +/- i pi))| = exp(-e^x); integral over both discarded rays is
    // <= 2 exp(-e^X)/e^X which is < exp(-e^X) once e^X >= 2.  Keep the stored
    // bound strictly positive even when the true one underflows.
    return std::max(std::exp(-std::exp(X)), 5e-324);
}

double log_power_tail_bound(double p, double X) {
    const double L = std::log(X);
    const double slope_max = kPi * (1.0 + p / L) / std::pow(L, p);
    const double expo = std::exp(std::pow(L, 1.0 + p)); // X^{(log X)^p}
    const double core = expo > 1500.0 ? 0.0 : std::exp(-0.5 * expo);
    return std::max(4.0 * (1.0 + slope_max) * core, 5e-324);
}

namespace {
void check_quad_tol(double quad_tol) {
    if (!(quad_tol > 0.0) || quad_tol >= 1.0)
        throw ConfigError("quad_tol must lie in (0, 1)");
}
} // namespace

ContourSpec build_contour_f0(double quad_tol, double min_truncation_x) {
    check_quad_tol(quad_tol);
    // minimal X with exp(-e^X) <= quad_tol/10, plus one unit of margin
    double X = std::max(3.0, std::log(std::log(10.0 / quad_tol)) + 1.0);
    X = std::max(X, min_truncation_x);
    while (double_exp_tail_bound(X) > quad_tol / 10.0) X += 0.5;

    ContourSpec spec;
    spec.truncation_x = X;
    spec.tail_bound = double_exp_tail_bound(X);
    spec.density = Density::double_exp();
    // clockwise around {Re > 0, |Im| < pi}: in along the bottom ray, up the
    // imaginary-axis segment, out along the top ray
    const auto ks = chunk_knots(0.0, X);
    for (size_t i = ks.size() - 1; i > 0; --i)
        spec.pieces.push_back(ContourPiece::line({ks[i], -kPi}, {ks[i - 1], -kPi}));
    spec.pieces.push_back(ContourPiece::line({0.0, -kPi}, {0.0, kPi}));
    for (size_t i = 0; i + 1 < ks.size(); ++i)
        spec.pieces.push_back(ContourPiece::line({ks[i], kPi}, {ks[i + 1], kPi}));
    return spec;
}

ContourSpec build_contour_fp(double p, double quad_tol, double min_truncation_x) {
    check_quad_tol(quad_tol);
    if (!(p > 0.0)) throw ConfigError("log-power family needs p > 0");

    double X = std::max(4.0, min_truncation_x);
    while (log_power_tail_bound(p, X) > quad_tol / 10.0) {
        X += 0.25;
        if (X > 5e4)
            throw TailBoundError("cannot certify contour tail for p = " + std::to_string(p));
    }

    // The closed-form tail bound assumes the boundary density obeys
    // |density| <= exp(-exp((log x)^(1+p)) / 2) on the discarded part x >= X;
    // check it at samples there.  For small p the density only starts decaying
    // at astronomical x and the certificate genuinely fails -- better to
    // refuse than to mis-integrate.
    Density dens = Density::log_power_exp(p);
    for (int i = 0; i <= 32; ++i) {
        const double x = X * std::pow(8.0, i / 32.0);
        const cplx t(x, arc_half_width(p, x));
        const double allowed = -0.5 * std::exp(std::pow(std::log(x), 1.0 + p));
        if (dens.log_abs(t) > allowed + 1e-9)
            throw TailBoundError(
                "boundary density decay certificate failed at x = " + std::to_string(x) +
                " for p = " + std::to_string(p) + "; this p is outside the certified range");
    }

    const double y3 = arc_half_width(p, 3.0);
    ContourSpec spec;
    spec.truncation_x = X;
    spec.tail_bound = log_power_tail_bound(p, X);
    spec.density = dens;
    const auto ks = chunk_knots(3.0, X);
    for (size_t i = ks.size() - 1; i > 0; --i)
        spec.pieces.push_back(ContourPiece::arc(p, ks[i], ks[i - 1], -1.0)); // lower, inbound
    spec.pieces.push_back(ContourPiece::line({3.0, -y3}, {3.0, y3}));
    for (size_t i = 0; i + 1 < ks.size(); ++i)
        spec.pieces.push_back(ContourPiece::arc(p, ks[i], ks[i + 1], 1.0)); // upper, outbound
    return spec;
}

// ---------------------------------------------------------------------------
// Region membership
// ---------------------------------------------------------------------------

RegionMembership region_membership_f0(cplx z, double delta) {
    const double x = z.real(), ay = std::abs(z.imag());
    RegionMembership m;
    m.inside = (x > 0.0 && ay < kPi);
    const double d_seg = (ay <= kPi) ? std::abs(x) : std::hypot(x, ay - kPi);
    const double d_ray = (x >= 0.0) ? std::abs(ay - kPi) : std::hypot(x, ay - kPi);
    m.distance = std::min(d_seg, d_ray);
    m.status = m.distance < delta ? RegionStatus::NearBoundary
               : m.inside        ? RegionStatus::Interior
                                 : RegionStatus::Exterior;
    return m;
}

RegionMembership region_membership_fp(double p, cplx z, double delta) {
    if (!(p > 0.0)) throw ConfigError("log-power family needs p > 0");
    const double x = z.real(), ay = std::abs(z.imag());
    RegionMembership m;
    m.inside = (x >= 3.0 && ay <= arc_half_width(p, x));

    if (std::abs(z) <= 2e3) {
        const double y3 = arc_half_width(p, 3.0);
        double best = point_segment_distance(z, {3.0, -y3}, {3.0, y3});
        const double x_hi = std::max(20.0, x + 40.0);
        // reflect once: the region is conjugation-symmetric
        const cplx zr(x, ay);
        auto d = [&](double xx) {
            return std::abs(zr - cplx(xx, arc_half_width(p, xx)));
        };
        int bi = 0;
        const int K = 128;
        double bd = d(3.0);
        for (int i = 1; i <= K; ++i) {
            const double xx = 3.0 + (x_hi - 3.0) * i / K;
            const double v = d(xx);
            if (v < bd) { bd = v; bi = i; }
        }
        const double lo = 3.0 + (x_hi - 3.0) * std::max(0, bi - 1) / K;
        const double hi = 3.0 + (x_hi - 3.0) * std::min(K, bi + 1) / K;
        best = std::min(best, golden_min(d, lo, hi));
        m.distance = best;
    } else {
        // Far field: cheap conservative estimates are all callers need.
        if (m.inside) {
            m.distance = std::max(
                std::min((arc_half_width(p, x) - ay) / 3.0, x - 3.0), 1e-12);
        } else if (x < 3.0) {
            m.distance = std::hypot(3.0 - x, std::max(0.0, ay - arc_half_width(p, 3.0)));
        } else {
            m.distance = std::max((ay - arc_half_width(p, x)) / 3.0, 1e-12);
        }
    }
    m.status = m.distance < delta ? RegionStatus::NearBoundary
               : m.inside        ? RegionStatus::Interior
                                 : RegionStatus::Exterior;
    return m;
}

} // namespace escdim
