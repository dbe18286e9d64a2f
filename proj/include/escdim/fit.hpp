#pragma once
#include <string>
#include <vector>

namespace escdim {

// Least-squares fit of log(count) against log(1/scale).
struct DimensionEstimate {
    std::vector<double> scales;   // the scales used in the fit
    std::vector<long long> counts;
    double slope = 0.0;
    double r2 = 0.0;
    double ci95 = 0.0; // half-width of the 95% confidence interval on slope
};

// exclude_at_or_below drops saturated rungs (scales at or below the raw cell
// size never probe anything).  Needs at least four surviving points
// (InsufficientScalesError) and every count >= 1 (ConfigError).
DimensionEstimate fit_dimension(const std::vector<double>& scales,
                                const std::vector<long long>& counts,
                                double exclude_at_or_below = 0.0);

} // namespace escdim
