#include "escdim/estimate.hpp"

#include <cmath>

#include "escdim/errors.hpp"

namespace escdim {

namespace {

std::vector<std::pair<int, int>> select_cells(const GridClassification& g, double R,
                                              Target target) {
    if (target == Target::JR) return jr_at(g, R);
    // Escaping set: confirmed escape or overflow, any modulus history.
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const CellStatus s = g.at(i, j).status;
            if (s == CellStatus::Escaped || s == CellStatus::Overflow)
                out.emplace_back(i, j);
        }
    return out;
}

} // namespace

EstimateResult estimate_from_grid(const GridClassification& g, double R, Target target) {
    const auto cells = select_cells(g, R, target);
    if (cells.empty())
        throw EmptySetError(target == Target::JR ? "estimate: no cells stayed above R"
                                                 : "estimate: no escaping cells");
    const auto scales = dyadic_scales(g);
    const auto counts = box_count(cells, g, scales);
    const double cell = g.cell_dx();
    const double exclude = scales.back() <= cell * (1.0 + 1e-9) ? cell : 0.0;

    EstimateResult res;
    res.est = fit_dimension(scales, counts, exclude);
    res.params = {g.window, g.nx, g.ny, g.max_iter, g.escape_radius, R, target};
    res.selected_cells = static_cast<long long>(cells.size());
    return res;
}

EstimateResult estimate_set_dimension(const FunctionModel& model, const Window& win,
                                      int nx, int ny, int max_iter,
                                      double escape_radius, double R, Target target) {
    const GridClassification g =
        classify_grid(model, win, nx, ny, max_iter, escape_radius, R);
    return estimate_from_grid(g, R, target);
}

EdimResult estimate_edim(const FunctionModel& model, const Window& win, int nx, int ny,
                         int max_iter, double escape_radius,
                         const std::vector<double>& R_list) {
    if (R_list.empty()) throw ConfigError("estimate_edim: empty R list");
    for (size_t k = 0; k < R_list.size(); ++k) {
        if (!(R_list[k] > 0.0) || !(R_list[k] < escape_radius))
            throw ConfigError("estimate_edim: R values must lie in (0, escape_radius)");
        if (k > 0 && !(R_list[k] > R_list[k - 1]))
            throw ConfigError("estimate_edim: R list must be strictly increasing");
    }

    // One classification serves the whole sweep: membership at any R below
    // escape_radius is a pure threshold on each cell's recorded minimum.
    const GridClassification g =
        classify_grid(model, win, nx, ny, max_iter, escape_radius, R_list.front());

    EdimResult out;
    out.edim = std::numeric_limits<double>::infinity();
    for (double R : R_list) {
        EdimEntry e;
        e.R = R;
        e.result = estimate_from_grid(g, R, Target::JR);
        if (e.result.est.slope < out.edim) out.edim = e.result.est.slope;
        out.entries.push_back(std::move(e));
    }

    try {
        out.ir_slope = estimate_from_grid(g, R_list.front(), Target::IR).est.slope;
        out.sandwich_ok = out.edim >= out.ir_slope - 0.1;
    } catch (const EmptySetError&) {
        out.ir_slope = std::numeric_limits<double>::quiet_NaN();
        out.sandwich_ok = true;
    }
    return out;
}

} // namespace escdim
