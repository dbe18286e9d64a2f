#include "escdim/boxcount.hpp"

#include <algorithm>
#include <cmath>

#include "escdim/errors.hpp"

namespace escdim {

namespace {

// Scale -> integer cell multiple, or throw.
long long scale_multiple(double scale, double cell) {
    if (!(scale > 0.0)) throw ScaleError("box_count: scales must be positive");
    const double ratio = scale / cell;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw ScaleError("box_count: scale " + fmt17(scale) +
                         " is not an integer multiple of the cell size " + fmt17(cell));
    return static_cast<long long>(rounded);
}

} // namespace

std::vector<long long> box_count(const std::vector<std::pair<int, int>>& cells,
                                 const GridClassification& g,
                                 const std::vector<double>& scales) {
    if (cells.empty()) throw EmptySetError("box_count: no cells selected");
    const double dx = g.cell_dx(), dy = g.cell_dy();
    if (std::abs(dx - dy) > 1e-12 * std::max(dx, dy))
        throw ConfigError("box_count: cells must be square");
    if (scales.empty()) throw ScaleError("box_count: no scales");
    for (size_t k = 1; k < scales.size(); ++k)
        if (!(scales[k] < scales[k - 1]))
            throw ScaleError("box_count: scales must be strictly decreasing");

    std::vector<long long> counts;
    counts.reserve(scales.size());
    std::vector<long long> keys;
    keys.reserve(cells.size());
    for (double s : scales) {
        const long long m = scale_multiple(s, dx);
        keys.clear();
        for (const auto& [i, j] : cells)
            keys.push_back((static_cast<long long>(j) / m) * (g.nx + 1) + i / m);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        counts.push_back(static_cast<long long>(keys.size()));
    }
    return counts;
}

std::vector<double> dyadic_scales(const GridClassification& g) {
    const double dx = g.cell_dx(), dy = g.cell_dy();
    if (std::abs(dx - dy) > 1e-12 * std::max(dx, dy))
        throw ConfigError("dyadic_scales: cells must be square");
    std::vector<long long> mults;
    for (long long m = g.nx / 4; m >= 2; m /= 2) mults.push_back(m);
    if (mults.size() < 5 && g.nx / 2 >= 2 &&
        (mults.empty() || g.nx / 2 > mults.front()))
        mults.insert(mults.begin(), g.nx / 2);
    if (mults.empty())
        throw InsufficientScalesError("dyadic_scales: grid too small for a ladder");
    std::vector<double> scales;
    scales.reserve(mults.size());
    for (long long m : mults) scales.push_back(m * dx);
    return scales;
}

} // namespace escdim
