#pragma once
#include <utility>
#include <vector>

#include "escdim/grid.hpp"

namespace escdim {

// Number of side-s boxes, anchored at the window's lower-left corner, that
// meet at least one selected cell center.  Counting is exact integer
// arithmetic on cell indices: a scale that is m cells wide maps cell (i, j)
// to box (i / m, j / m).
//
// scales are absolute box sides, strictly decreasing, each an integer
// multiple of the (square) cell size and at least one cell.  Throws
// EmptySetError for no cells, ScaleError for a bad ladder, ConfigError for
// non-square cells.
std::vector<long long> box_count(const std::vector<std::pair<int, int>>& cells,
                                 const GridClassification& g,
                                 const std::vector<double>& scales);

// Dyadic ladder of box sides for a square-cell grid: window/4 halving down to
// 2 cells, with window/2 prepended when that yields fewer than five rungs.
std::vector<double> dyadic_scales(const GridClassification& g);

} // namespace escdim
