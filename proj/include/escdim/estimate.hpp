#pragma once
#include <vector>

#include "escdim/boxcount.hpp"
#include "escdim/fit.hpp"

namespace escdim {

// IR selects confirmed escapers (escaped or overflowed cells); at finite
// horizon that is the reliable stand-in for escape-with-high-modulus, and its
// dimension does not depend on R.  JR selects cells whose whole recorded
// orbit stayed at or above R with a determined status.
enum class Target { IR, JR };

struct RunParams {
    Window window{};
    int nx = 0, ny = 0;
    int max_iter = 0;
    double escape_radius = 0.0, R = 0.0;
    Target target = Target::IR;
};

struct EstimateResult {
    DimensionEstimate est;
    RunParams params;
    long long selected_cells = 0;
};

// Box-count dimension of the selected cell set on the dyadic ladder, with the
// saturated finest rung excluded from the fit when the ladder reaches raw
// cell size.  The classification run is reused for both select steps.
EstimateResult estimate_set_dimension(const FunctionModel& model, const Window& win,
                                      int nx, int ny, int max_iter,
                                      double escape_radius, double R, Target target);

// Same, on an existing classification (R overrides the grid's own threshold).
EstimateResult estimate_from_grid(const GridClassification& g, double R, Target target);

struct EdimEntry {
    double R = 0.0;
    EstimateResult result;
};

struct EdimResult {
    std::vector<EdimEntry> entries; // one JR estimate per R, same classification
    double edim = 0.0;              // min slope over the sweep
    double ir_slope = 0.0;          // NaN when the escaping set was empty
    bool sandwich_ok = true;        // edim >= ir_slope - 0.1
};

// Sweeps JR over R_list (strictly increasing, all below escape_radius) on a
// single classification and takes the minimum slope; cross-checks it against
// the escaping-set slope.
EdimResult estimate_edim(const FunctionModel& model, const Window& win, int nx, int ny,
                         int max_iter, double escape_radius,
                         const std::vector<double>& R_list);

} // namespace escdim
