#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "escdim/orbit.hpp"

namespace escdim {

// Axis-aligned sampling window: center +/- half-widths.
struct Window {
    double cx = 0.0;
    double cy = 0.0;
    double hx = 0.0;
    double hy = 0.0;
};

enum class CellStatus : uint8_t { Bounded = 0, Escaped = 1, Overflow = 2, Undetermined = 3 };

// Per-cell summary of the center orbit.  min_modulus keeps enough information
// to re-threshold stay-above tests at any R' without re-iterating.
struct GridCell {
    CellStatus status = CellStatus::Undetermined;
    bool stayed_above_R = true;
    bool eval_failure = false;
    int32_t at_step = -1;
    double min_modulus = std::numeric_limits<double>::infinity();
};

struct GridClassification {
    Window window{};
    int nx = 0, ny = 0;
    int max_iter = 0;
    double escape_radius = 0.0, R = 0.0;
    std::vector<GridCell> cells; // row-major, index j * nx + i

    double cell_dx() const { return 2.0 * window.hx / nx; }
    double cell_dy() const { return 2.0 * window.hy / ny; }
    cplx center(int i, int j) const {
        return {window.cx - window.hx + (i + 0.5) * cell_dx(),
                window.cy - window.hy + (j + 0.5) * cell_dy()};
    }
    const GridCell& at(int i, int j) const { return cells[size_t(j) * nx + i]; }
};

// Classifies the orbit of every cell center.  The parallel path distributes
// rows across threads with disjoint writes and no reductions, so its output
// is bit-identical to the serial reference.
GridClassification classify_grid(const FunctionModel& model, const Window& win,
                                 int nx, int ny, int max_iter, double escape_radius,
                                 double R, bool parallel = true);

inline GridClassification classify_grid_serial(const FunctionModel& model,
                                               const Window& win, int nx, int ny,
                                               int max_iter, double escape_radius,
                                               double R) {
    return classify_grid(model, win, nx, ny, max_iter, escape_radius, R, false);
}

// Membership predicates at an arbitrary threshold (no re-iteration needed).
inline bool jr_member(const GridCell& c, double R) {
    return c.min_modulus >= R && c.status != CellStatus::Undetermined;
}
inline bool ir_member(const GridCell& c, double R) {
    return c.min_modulus >= R &&
           (c.status == CellStatus::Escaped || c.status == CellStatus::Overflow);
}

// Cell indices (i, j) whose orbit stayed above the grid's own R; jr keeps any
// determined status, ir additionally requires confirmed escape or overflow.
std::vector<std::pair<int, int>> jr_candidates(const GridClassification& g);
std::vector<std::pair<int, int>> ir_candidates(const GridClassification& g);
std::vector<std::pair<int, int>> jr_at(const GridClassification& g, double R);
std::vector<std::pair<int, int>> ir_at(const GridClassification& g, double R);

// Binary PGM (P5): 0 bounded, 255 escaped/overflow, 128 undetermined; top
// image row is the cell row with the largest y.  Written atomically.
void write_pgm(const GridClassification& g, const std::string& path);

// CSV "i,j,re,im,status,escape_step,stayed_above_R"; escape_step is -1 when
// not applicable.  Written atomically.
void write_csv(const GridClassification& g, const std::string& path);

} // namespace escdim
