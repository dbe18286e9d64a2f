#include "escdim/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "escdim/quadrature.hpp"

namespace escdim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.718281828459045;
constexpr int kMaxIntervals = 8000;
const double kLogOverflow = std::log(kOverflowLimit);

double clamp_tol(double tol, double fallback) {
    if (tol <= 0.0) tol = fallback;
    if (!(tol > 0.0) || tol > 1e-2) throw ConfigError("tolerance must lie in (0, 1e-2]");
    return tol;
}

template <class F>
double golden_max(F f, double lo, double hi, int iters = 60) {
    const double r = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-13 * (1.0 + std::abs(a)); ++i) {
        if (f1 >= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        }
    }
    return std::max(f(0.5 * (a + b)), std::max(f1, f2));
}

} // namespace

struct FunctionModel::Impl {
    Family family = Family::Exp;
    cplx kappa{};
    double p = 0.0, K = 0.0;
    double quad_tol = 1e-8;
    ContourSpec contour;     // F0/Fp only
    int eps = 1;             // continuation sign across the contour
    double calib_ratio = 0.0;
    std::shared_ptr<const FunctionModel> base; // Pushforward only
    AffineMap phi, psi;
};

namespace {

using Impl = FunctionModel::Impl;

RegionMembership membership_of(const Impl& im, cplx z) {
    return im.family == Family::F0 ? region_membership_f0(z)
                                   : region_membership_fp(im.p, z);
}

ContourSpec build_family_contour(Family fam, double p, double quad_tol, double min_x) {
    // Tails are cut far below any tolerance a caller can request, so one
    // contour serves every eval tolerance down to ~1e-12.
    const double tol = std::min(quad_tol, 1e-12);
    return fam == Family::F0 ? build_contour_f0(tol, min_x)
                             : build_contour_fp(p, tol, min_x);
}

// Evaluation points close to (or beyond) the truncation abscissa need the
// contour extended past them, else the discarded tail is no longer >= 1 away.
bool needs_longer_contour(const Impl& im, cplx z) {
    if (z.real() <= im.contour.truncation_x - 1.0) return false;
    if (im.family == Family::F0) return std::abs(z.imag()) <= kPi + 1.0;
    return std::abs(z.imag()) <= arc_half_width(im.p, std::max(z.real(), 3.5)) + 1.0;
}

cplx family_tail(const Impl& im) {
    if (im.family == Family::F0) return im.kappa;
    if (im.family == Family::Fp) return {-im.K, 0.0};
    return {};
}

cplx finalize_value(cplx v) {
    const double mag = std::abs(v);
    if (!(mag <= kOverflowLimit)) {
        if (std::isfinite(mag))
            throw OverflowError("value magnitude above 1e300", std::log(mag));
        throw OverflowError("value not representable");
    }
    return v;
}

struct Calib {
    int eps;
    double ratio;
};

// Fix the continuation sign by comparing the two representations across the
// boundary at a probe where the jump term dwarfs the smooth variation.
Calib calibrate(const Impl& im) {
    const double ct = std::min(im.quad_tol, 1e-8);
    std::vector<std::pair<cplx, cplx>> probes; // (boundary point, outward normal)
    if (im.family == Family::F0) {
        probes = {{{1.0, kPi}, {0.0, 1.0}}, {{2.0, kPi}, {0.0, 1.0}}};
    } else {
        const double h3 = arc_half_width(im.p, 3.0);
        for (double f : {0.0, 0.35, 0.6, 0.8})
            probes.push_back({{3.0, f * h3}, {-1.0, 0.0}});
    }
    const double eta = 1e-3;
    for (const auto& [w, nrm] : probes) {
        try {
            const cplx ze = w + eta * nrm, zi = w - eta * nrm;
            const cplx corr = im.contour.density.eval(zi);
            if (std::abs(corr) < 1e-4) continue; // jump too weak to discriminate
            const cplx fe =
                eval_cauchy_integral(im.contour, ze, ct, 1, kMaxIntervals).value;
            const cplx fi =
                eval_cauchy_integral(im.contour, zi, ct, 1, kMaxIntervals).value;
            const double mp = std::abs(fe - (fi + corr));
            const double mm = std::abs(fe - (fi - corr));
            const double ratio =
                std::max(mp, mm) / std::max(std::min(mp, mm), 1e-300);
            if (ratio < 10.0) continue;
            return {mp <= mm ? +1 : -1, ratio};
        } catch (const Error&) {
            continue;
        }
    }
    throw ConfigError("continuation-sign calibration failed: no probe discriminated");
}

// Direct quadrature without the reflected-point machinery; used as a fallback
// when the Taylor center cannot be placed on the exterior side.
EvalResult direct_eval(const Impl& im, cplx z, const RegionMembership& m, double tol,
                       const ContourSpec& C) {
    QuadResult q = eval_cauchy_integral(C, z, tol, 1, kMaxIntervals);
    cplx v = q.value;
    if (m.inside) v += double(im.eps) * C.density.eval(z);
    v = finalize_value(v + family_tail(im));
    return {v, q.err, false};
}

// Within delta of the contour the Cauchy kernel is too peaked for routine
// quadrature.  Evaluate at the mirror point on the far side with that side's
// representation, then transport across using a 4-term Taylor expansion of
// the entire function centered 2*delta off the boundary (exterior side, so
// its coefficients are plain kernel-power quadratures).
EvalResult near_boundary_eval(const Impl& im, cplx z, const RegionMembership& m,
                              double tol, const ContourSpec& C) {
    const cplx w0 = C.nearest_point(z);
    const double d = std::abs(z - w0);
    if (d < 1e-9)
        throw NearSingularityError("evaluation point within 1e-9 of the contour");
    const cplx zr = 2.0 * w0 - z;
    const RegionMembership mr = membership_of(im, zr);

    const cplx n_ext = (m.inside ? (w0 - z) : (z - w0)) / d;
    const cplx c = w0 + 2.0 * kNearBoundaryDelta * n_ext;
    if (membership_of(im, c).inside) return direct_eval(im, z, m, tol, C);

    const double qt = tol / 8.0;
    QuadResult q = eval_cauchy_integral(C, zr, qt, 1, kMaxIntervals);
    cplx vr = q.value;
    double err = q.err;
    if (mr.inside) vr += double(im.eps) * C.density.eval(zr);

    const cplx u = z - c, ur = zr - c;
    cplx upow = u, urpow = ur;
    cplx diff{};
    double last = 0.0;
    for (int k = 1; k <= 4; ++k) {
        QuadResult dk = eval_cauchy_integral(C, c, qt, k + 1, kMaxIntervals);
        const cplx term = dk.value * (upow - urpow);
        diff += term;
        err += dk.err * std::abs(upow - urpow);
        last = std::abs(term);
        upow *= u;
        urpow *= ur;
    }
    err += last; // remainder proxy: magnitude of the highest retained term
    const cplx v = finalize_value(vr + diff + family_tail(im));
    return {v, err, err > tol};
}

EvalResult eval_integral_family(const Impl& im, cplx z, double tol) {
    const RegionMembership m = membership_of(im, z);
    ContourSpec local;
    const ContourSpec* C = &im.contour;
    if (needs_longer_contour(im, z)) {
        local = build_family_contour(im.family, im.p, im.quad_tol, z.real() + 2.0);
        C = &local;
    }
    if (m.status == RegionStatus::NearBoundary)
        return near_boundary_eval(im, z, m, tol, *C);

    QuadResult q = eval_cauchy_integral(*C, z, tol, 1, kMaxIntervals, m.distance);
    cplx v = q.value;
    if (m.inside) v += double(im.eps) * C->density.eval(z);
    v = finalize_value(v + family_tail(im));
    return {v, q.err, false};
}

cplx rep_value(const Impl& im, cplx z, double tol, bool interior) {
    ContourSpec local;
    const ContourSpec* C = &im.contour;
    if (needs_longer_contour(im, z)) {
        local = build_family_contour(im.family, im.p, im.quad_tol, z.real() + 2.0);
        C = &local;
    }
    QuadResult q = eval_cauchy_integral(*C, z, tol, 1, kMaxIntervals);
    cplx v = q.value;
    if (interior) v += double(im.eps) * C->density.eval(z);
    return finalize_value(v + family_tail(im));
}

} // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

FunctionModel FunctionModel::f0(cplx kappa, double quad_tol) {
    auto im = std::make_shared<Impl>();
    im->family = Family::F0;
    im->kappa = kappa;
    im->quad_tol = clamp_tol(quad_tol, quad_tol);
    im->contour = build_family_contour(Family::F0, 0.0, im->quad_tol, 12.0);
    const Calib cal = calibrate(*im);
    im->eps = cal.eps;
    im->calib_ratio = cal.ratio;
    return FunctionModel(std::move(im));
}

FunctionModel FunctionModel::fp(double p, double K, double quad_tol) {
    if (!(p > 0.0)) throw ConfigError("log-power family needs p > 0");
    auto im = std::make_shared<Impl>();
    im->family = Family::Fp;
    im->p = p;
    im->K = K;
    im->quad_tol = clamp_tol(quad_tol, quad_tol);
    im->contour = build_family_contour(Family::Fp, p, im->quad_tol, 18.0);
    const Calib cal = calibrate(*im);
    im->eps = cal.eps;
    im->calib_ratio = cal.ratio;
    return FunctionModel(std::move(im));
}

FunctionModel FunctionModel::exponential(double quad_tol) {
    auto im = std::make_shared<Impl>();
    im->family = Family::Exp;
    im->quad_tol = clamp_tol(quad_tol, quad_tol);
    return FunctionModel(std::move(im));
}

FunctionModel FunctionModel::pushforward(const FunctionModel& base, const AffineMap& phi,
                                         const AffineMap& psi) {
    auto im = std::make_shared<Impl>();
    im->family = Family::Pushforward;
    im->quad_tol = base.quad_tol();
    im->base = std::make_shared<const FunctionModel>(base);
    im->phi = phi;
    im->psi = psi;
    return FunctionModel(std::move(im));
}

// ---------------------------------------------------------------------------
// Accessors
// ---------------------------------------------------------------------------

namespace {
void require_family(const Impl& im, Family want, const char* what) {
    if (im.family != want) throw ConfigError(std::string(what) + ": wrong model family");
}
void require_integral_family(const Impl& im, const char* what) {
    if (im.family != Family::F0 && im.family != Family::Fp)
        throw ConfigError(std::string(what) + ": model has no contour");
}
} // namespace

Family FunctionModel::family() const { return impl_->family; }
double FunctionModel::quad_tol() const { return impl_->quad_tol; }

cplx FunctionModel::kappa() const {
    require_family(*impl_, Family::F0, "kappa");
    return impl_->kappa;
}

double FunctionModel::p() const {
    require_family(*impl_, Family::Fp, "p");
    return impl_->p;
}

double FunctionModel::K() const {
    require_family(*impl_, Family::Fp, "K");
    return impl_->K;
}

const AffineMap& FunctionModel::phi() const {
    require_family(*impl_, Family::Pushforward, "phi");
    return impl_->phi;
}

const AffineMap& FunctionModel::psi() const {
    require_family(*impl_, Family::Pushforward, "psi");
    return impl_->psi;
}

const FunctionModel& FunctionModel::base() const {
    require_family(*impl_, Family::Pushforward, "base");
    return *impl_->base;
}

const ContourSpec& FunctionModel::contour() const {
    require_integral_family(*impl_, "contour");
    return impl_->contour;
}

int FunctionModel::continuation_sign() const {
    if (impl_->family == Family::Pushforward) return impl_->base->continuation_sign();
    require_integral_family(*impl_, "continuation_sign");
    return impl_->eps;
}

double FunctionModel::calibration_ratio() const {
    if (impl_->family == Family::Pushforward) return impl_->base->calibration_ratio();
    require_integral_family(*impl_, "calibration_ratio");
    return impl_->calib_ratio;
}

RegionMembership FunctionModel::membership(cplx z) const {
    switch (impl_->family) {
    case Family::Exp: {
        RegionMembership m;
        m.status = RegionStatus::Exterior;
        m.distance = 1e308;
        m.inside = false;
        return m;
    }
    case Family::Pushforward:
        return impl_->base->membership(impl_->phi.inverse()(z));
    default:
        return membership_of(*impl_, z);
    }
}

cplx FunctionModel::correction_term(cplx z) const {
    require_integral_family(*impl_, "correction_term");
    return impl_->contour.density.eval(z);
}

double FunctionModel::correction_log_abs(cplx z) const {
    require_integral_family(*impl_, "correction_log_abs");
    return impl_->contour.density.log_abs(z);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

EvalResult FunctionModel::eval_full(cplx z, double tol) const {
    tol = clamp_tol(tol, impl_->quad_tol);
    switch (impl_->family) {
    case Family::Exp: {
        if (z.real() > kLogOverflow)
            throw OverflowError("exp overflow", z.real()); // log|exp z| = Re z
        return {std::exp(z), 0.0, false};
    }
    case Family::Pushforward: {
        const cplx w = impl_->phi.inverse()(z);
        EvalResult r;
        try {
            r = impl_->base->eval_full(w, tol);
        } catch (const OverflowError& e) {
            if (e.log_magnitude)
                throw OverflowError("pushforward overflow",
                                    *e.log_magnitude + std::log(std::abs(impl_->psi.a)));
            throw;
        }
        r.value = finalize_value(impl_->psi(r.value));
        r.err *= std::abs(impl_->psi.a);
        return r;
    }
    default:
        return eval_integral_family(*impl_, z, tol);
    }
}

cplx FunctionModel::eval_exterior_rep(cplx z, double tol) const {
    tol = clamp_tol(tol, impl_->quad_tol);
    switch (impl_->family) {
    case Family::Exp:
        return eval_full(z, tol).value;
    case Family::Pushforward:
        return finalize_value(
            impl_->psi(impl_->base->eval_exterior_rep(impl_->phi.inverse()(z), tol)));
    default:
        return rep_value(*impl_, z, tol, false);
    }
}

cplx FunctionModel::eval_interior_rep(cplx z, double tol) const {
    tol = clamp_tol(tol, impl_->quad_tol);
    switch (impl_->family) {
    case Family::Exp:
        return eval_full(z, tol).value;
    case Family::Pushforward:
        return finalize_value(
            impl_->psi(impl_->base->eval_interior_rep(impl_->phi.inverse()(z), tol)));
    default:
        return rep_value(*impl_, z, tol, true);
    }
}

// ---------------------------------------------------------------------------
// Max modulus and growth
// ---------------------------------------------------------------------------

namespace {

// Sample |f| (or its log) on the circle, nudging off near-singular angles.
template <class Eval>
double circle_sample(Eval eval, double r, double theta) {
    for (int attempt = 0;; ++attempt) {
        try {
            return eval(std::polar(r, theta));
        } catch (const NearSingularityError&) {
            if (attempt >= 3) throw;
            theta += 1e-7;
        }
    }
}

} // namespace

double FunctionModel::max_modulus(double r, int n_samples) const {
    if (!(r > 0.0)) throw EvalDomainError("max_modulus needs r > 0");
    if (n_samples < 16) throw ConfigError("max_modulus needs n_samples >= 16");
    auto at = [&](double th) {
        try {
            return circle_sample([&](cplx z) { return std::abs(eval(z)); }, r, th);
        } catch (const OverflowError& e) {
            if (e.log_magnitude)
                throw OverflowError("max_modulus overflow at angle " + fmt17(th) +
                                        " on |z| = " + fmt17(r) + "; reduce r",
                                    *e.log_magnitude);
            throw OverflowError("max_modulus overflow at angle " + fmt17(th) +
                                " on |z| = " + fmt17(r) + "; reduce r");
        }
    };
    double best = -1.0, best_th = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double th = 2.0 * kPi * i / n_samples;
        const double v = at(th);
        if (v > best) { best = v; best_th = th; }
    }
    const double half = 2.0 * kPi / n_samples;
    return std::max(best, golden_max(at, best_th - half, best_th + half));
}

double FunctionModel::log_max_modulus(double r, int n_samples) const {
    if (!(r > 0.0)) throw EvalDomainError("log_max_modulus needs r > 0");
    if (n_samples < 16) throw ConfigError("log_max_modulus needs n_samples >= 16");
    auto at = [&](double th) {
        return circle_sample(
            [&](cplx z) {
                try {
                    return std::log(std::max(std::abs(eval(z)), 1e-300));
                } catch (const OverflowError& e) {
                    if (e.log_magnitude) return *e.log_magnitude;
                    throw;
                }
            },
            r, th);
    };
    double best = -1e308, best_th = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double th = 2.0 * kPi * i / n_samples;
        const double v = at(th);
        if (v > best) { best = v; best_th = th; }
    }
    const double half = 2.0 * kPi / n_samples;
    return std::max(best, golden_max(at, best_th - half, best_th + half));
}

double FunctionModel::growth_statistic(double r) const {
    if (!(r > kE)) throw EvalDomainError("growth statistic needs r > e");
    const double logM = log_max_modulus(r, 64);
    if (!(logM > kE)) throw EvalDomainError("growth statistic needs M(r) > e^e");
    return std::log(std::log(logM)) / std::log(std::log(r));
}

// ---------------------------------------------------------------------------
// Parameter conversions
// ---------------------------------------------------------------------------

double p_from_d(double d) {
    if (!(d > 1.0 && d < 2.0)) throw EvalDomainError("d must lie in (1, 2)");
    return (2.0 - d) / (d - 1.0);
}

double d_from_p(double p) {
    if (!(p > 0.0)) throw EvalDomainError("p must be positive");
    return 1.0 + 1.0 / (1.0 + p);
}

} // namespace escdim
