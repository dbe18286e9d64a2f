#include "escdim/grid.hpp"

#include <sstream>

#include "escdim/errors.hpp"
#include "escdim/io_util.hpp"

namespace escdim {

namespace {

GridCell classify_cell(const FunctionModel& model, cplx z0, int max_iter,
                       double escape_radius, double R) {
    const OrbitRecord rec = iterate_orbit(model, z0, max_iter, escape_radius, R);
    GridCell c;
    switch (rec.status) {
        case OrbitStatus::Escaped: c.status = CellStatus::Escaped; break;
        case OrbitStatus::OverflowEscaped: c.status = CellStatus::Overflow; break;
        case OrbitStatus::BoundedHorizon: c.status = CellStatus::Bounded; break;
        case OrbitStatus::Undetermined: c.status = CellStatus::Undetermined; break;
    }
    c.stayed_above_R = rec.stayed_above_R;
    c.eval_failure = rec.eval_failure;
    c.at_step = rec.at_step;
    c.min_modulus = rec.min_modulus;
    return c;
}

const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::Bounded: return "bounded";
        case CellStatus::Escaped: return "escaped";
        case CellStatus::Overflow: return "overflow";
        case CellStatus::Undetermined: return "undetermined";
    }
    return "?";
}

} // namespace

GridClassification classify_grid(const FunctionModel& model, const Window& win,
                                 int nx, int ny, int max_iter, double escape_radius,
                                 double R, bool parallel) {
    if (!(win.hx > 0.0) || !(win.hy > 0.0))
        throw ConfigError("classify_grid: window half-widths must be positive");
    if (nx < 1 || ny < 1) throw ConfigError("classify_grid: resolution must be >= 1");
    if (max_iter < 1) throw ConfigError("classify_grid: max_iter must be >= 1");
    if (!(R > 0.0) || !(escape_radius > R))
        throw ConfigError("classify_grid: need escape_radius > R > 0");

    GridClassification g;
    g.window = win;
    g.nx = nx;
    g.ny = ny;
    g.max_iter = max_iter;
    g.escape_radius = escape_radius;
    g.R = R;
    g.cells.resize(size_t(nx) * ny);

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i)
                g.cells[size_t(j) * nx + i] =
                    classify_cell(model, g.center(i, j), max_iter, escape_radius, R);
        }
    } else {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                g.cells[size_t(j) * nx + i] =
                    classify_cell(model, g.center(i, j), max_iter, escape_radius, R);
    }
    return g;
}

std::vector<std::pair<int, int>> jr_at(const GridClassification& g, double R) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (jr_member(g.at(i, j), R)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> ir_at(const GridClassification& g, double R) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (ir_member(g.at(i, j), R)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> jr_candidates(const GridClassification& g) {
    return jr_at(g, g.R);
}

std::vector<std::pair<int, int>> ir_candidates(const GridClassification& g) {
    return ir_at(g, g.R);
}

void write_pgm(const GridClassification& g, const std::string& path) {
    std::string bytes;
    bytes += "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n255\n";
    bytes.reserve(bytes.size() + size_t(g.nx) * g.ny);
    for (int j = g.ny - 1; j >= 0; --j) {
        for (int i = 0; i < g.nx; ++i) {
            const CellStatus s = g.at(i, j).status;
            unsigned char px = 128;
            if (s == CellStatus::Bounded) px = 0;
            else if (s == CellStatus::Escaped || s == CellStatus::Overflow) px = 255;
            bytes.push_back(static_cast<char>(px));
        }
    }
    write_text_atomic(path, bytes);
}

void write_csv(const GridClassification& g, const std::string& path) {
    std::ostringstream out;
    out << "i,j,re,im,status,escape_step,stayed_above_R\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const GridCell& c = g.at(i, j);
            const cplx z = g.center(i, j);
            out << i << ',' << j << ',' << fmt17(z.real()) << ',' << fmt17(z.imag())
                << ',' << status_name(c.status) << ',' << c.at_step << ','
                << (c.stayed_above_R ? 1 : 0) << '\n';
        }
    }
    write_text_atomic(path, out.str());
}

} // namespace escdim
