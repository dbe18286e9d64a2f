#include "escdim/rigidity.hpp"

#include <cmath>
#include <random>

#include "escdim/errors.hpp"

namespace escdim {

double disc_radius(double K) {
    if (!(K > 1.0)) throw ConfigError("disc_radius: K must exceed 1");
    return (K + 1.0) / (K - 1.0);
}

double dilatation_at(double D, cplx lambda) {
    if (!(D > 0.0)) throw ConfigError("dilatation_at: D must be positive");
    const double l = std::abs(lambda);
    if (!(l < D)) throw EvalDomainError("dilatation_at: need |lambda| < D");
    return (D + l) / (D - l);
}

double qc_dim_lower_bound(double dim_in, double K) {
    if (!(dim_in >= 0.0) || !(dim_in <= 2.0))
        throw ConfigError("qc_dim_lower_bound: dim_in must lie in [0, 2]");
    if (!(K >= 1.0)) throw ConfigError("qc_dim_lower_bound: K must be >= 1");
    return dim_in / K;
}

FunctionModel affine_pushforward(const FunctionModel& f, const AffineMap& phi,
                                 const AffineMap& psi) {
    return FunctionModel::pushforward(f, phi, psi);
}

ResidualReport equivalence_residual(const FunctionModel& f, const FunctionModel& g,
                                    const AffineMap& phi, const AffineMap& psi,
                                    const std::vector<cplx>& samples, double tol) {
    if (samples.empty()) throw ConfigError("equivalence_residual: no samples");
    ResidualReport rep;
    for (cplx z : samples) {
        const cplx w = phi(z);
        if (f.membership(z).status == RegionStatus::NearBoundary ||
            g.membership(w).status == RegionStatus::NearBoundary) {
            ++rep.filtered;
            continue;
        }
        double r;
        try {
            r = std::abs(psi(f.eval(z, tol)) - g.eval(w, tol));
        } catch (const OverflowError&) {
            ++rep.filtered;
            continue;
        }
        ++rep.retained;
        if (r > rep.residual) rep.residual = r;
    }
    if (rep.retained == 0)
        throw AllSamplesFilteredError("equivalence_residual: every sample was filtered");
    return rep;
}

std::vector<cplx> sample_box(uint64_t seed, int n, double half_width) {
    if (n < 1) throw ConfigError("sample_box: need n >= 1");
    if (!(half_width > 0.0)) throw ConfigError("sample_box: half_width must be positive");
    std::mt19937_64 eng(seed);
    auto unit = [&eng]() { return (eng() >> 11) * 0x1.0p-53; };
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double x = -half_width + 2.0 * half_width * unit();
        const double y = -half_width + 2.0 * half_width * unit();
        out.emplace_back(x, y);
    }
    return out;
}

} // namespace escdim
