#include "escdim/fit.hpp"

#include <cmath>

#include "escdim/errors.hpp"

namespace escdim {

namespace {

// Two-sided 95% Student t quantiles, dof 1..30; normal beyond.
double t95(int dof) {
    static const double table[30] = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (dof < 1) return table[0];
    if (dof <= 30) return table[dof - 1];
    return 1.96;
}

} // namespace

DimensionEstimate fit_dimension(const std::vector<double>& scales,
                                const std::vector<long long>& counts,
                                double exclude_at_or_below) {
    if (scales.size() != counts.size())
        throw ConfigError("fit_dimension: scales/counts length mismatch");

    DimensionEstimate est;
    for (size_t k = 0; k < scales.size(); ++k) {
        if (scales[k] <= exclude_at_or_below * (1.0 + 1e-9)) continue;
        if (counts[k] < 1) throw ConfigError("fit_dimension: counts must be >= 1");
        est.scales.push_back(scales[k]);
        est.counts.push_back(counts[k]);
    }
    const int n = static_cast<int>(est.scales.size());
    if (n < 4)
        throw InsufficientScalesError("fit_dimension: need at least 4 scales, have " +
                                      std::to_string(n));

    double sx = 0, sy = 0;
    std::vector<double> xs(n), ys(n);
    for (int k = 0; k < n; ++k) {
        xs[k] = std::log(1.0 / est.scales[k]);
        ys[k] = std::log(static_cast<double>(est.counts[k]));
        sx += xs[k];
        sy += ys[k];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (!(sxx > 0)) throw ConfigError("fit_dimension: degenerate scales");
    est.slope = sxy / sxx;
    const double intercept = my - est.slope * mx;

    double ssr = 0, sst = 0;
    for (int k = 0; k < n; ++k) {
        const double r = ys[k] - (intercept + est.slope * xs[k]);
        ssr += r * r;
        sst += (ys[k] - my) * (ys[k] - my);
    }
    est.r2 = sst > 1e-300 ? 1.0 - ssr / sst : (ssr < 1e-300 ? 1.0 : 0.0);
    const double se = std::sqrt(ssr / (n - 2) / sxx);
    est.ci95 = t95(n - 2) * se;
    return est;
}

} // namespace escdim
