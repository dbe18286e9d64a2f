#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "escdim/grid.hpp"

using namespace escdim;

namespace {

long long count_status(const GridClassification& g, CellStatus s) {
    long long n = 0;
    for (const GridCell& c : g.cells)
        if (c.status == s) ++n;
    return n;
}

long long escaping_count(const GridClassification& g) {
    return count_status(g, CellStatus::Escaped) + count_status(g, CellStatus::Overflow);
}

bool cells_identical(const GridClassification& a, const GridClassification& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (size_t k = 0; k < a.cells.size(); ++k) {
        const GridCell &x = a.cells[k], &y = b.cells[k];
        if (x.status != y.status || x.stayed_above_R != y.stayed_above_R ||
            x.eval_failure != y.eval_failure || x.at_step != y.at_step)
            return false;
        // exact double equality intended: same computation must give same bits
        if (!(x.min_modulus == y.min_modulus) &&
            !(std::isinf(x.min_modulus) && std::isinf(y.min_modulus)))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("exponential orbit from 1 blows through the overflow ceiling at step 4") {
    const FunctionModel ex = FunctionModel::exponential();
    const OrbitRecord r = iterate_orbit(ex, {1.0, 0.0}, 20, 100.0, 50.0);
    CHECK(r.status == OrbitStatus::OverflowEscaped);
    CHECK(r.at_step == 4);
    REQUIRE(r.moduli.size() == 3);
    CHECK(r.moduli[0] == doctest::Approx(std::exp(1.0)));
    CHECK(r.moduli[1] == doctest::Approx(std::exp(std::exp(1.0))));
    CHECK_FALSE(r.stayed_above_R);
    CHECK(r.min_modulus == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("escape requires a confirmed crossing, not just one large modulus") {
    // psi flips the exponential's output sign; orbit from 2.8 jumps above 15
    // and then collapses, so a horizon-2 run must stay Undetermined.
    const FunctionModel ex = FunctionModel::exponential();
    const FunctionModel flip =
        FunctionModel::pushforward(ex, AffineMap(), AffineMap({-1.0, 0.0}, {0.0, 0.0}));
    const OrbitRecord r = iterate_orbit(flip, {2.8, 0.0}, 2, 15.0, 1.0);
    REQUIRE(r.moduli.size() == 2);
    CHECK(r.moduli[0] >= 15.0);
    CHECK(r.moduli[1] < r.moduli[0]);
    CHECK(r.status == OrbitStatus::Undetermined);
    CHECK_FALSE(r.eval_failure);

    // the orbit is then trapped by the attracting point of -e^z, so even a
    // long horizon keeps the unconfirmed crossing Undetermined
    const OrbitRecord r2 = iterate_orbit(flip, {2.8, 0.0}, 30, 15.0, 1.0);
    CHECK(r2.status == OrbitStatus::Undetermined);
    CHECK(std::abs(r2.points.back() - cplx{-0.5671, 0.0}) < 1e-3);
}

TEST_CASE("attracting far-field fixed point keeps the orbit bounded at the horizon") {
    const FunctionModel f = FunctionModel::f0({-100.0, 0.0});
    const OrbitRecord r = iterate_orbit(f, {0.0, 0.0}, 40, 100.0, 50.0);
    CHECK(r.status == OrbitStatus::BoundedHorizon);
    CHECK(r.at_step == -1);
    CHECK(r.stayed_above_R);
    REQUIRE(r.moduli.size() == 40);
    CHECK(std::abs(r.points.back() - cplx{-100.0, 0.0}) < 1.0);
    // settles near the solution of z = kappa - 1/z
    CHECK(r.points.back().real() == doctest::Approx(-99.98999).epsilon(1e-4));
}

TEST_CASE("orbit start on the contour is nudged, not failed") {
    const FunctionModel f = FunctionModel::f0({-100.0, 0.0});
    CHECK_THROWS_AS(f.eval({0.0, 0.0}), NearSingularityError);
    const OrbitRecord r = iterate_orbit(f, {0.0, 0.0}, 5, 100.0, 50.0);
    CHECK_FALSE(r.eval_failure);
    CHECK(r.moduli.size() == 5);
}

TEST_CASE("immediate overflow is OverflowEscaped at step 1 with no moduli") {
    const FunctionModel ex = FunctionModel::exponential();
    const OrbitRecord r = iterate_orbit(ex, {800.0, 0.0}, 10, 100.0, 50.0);
    CHECK(r.status == OrbitStatus::OverflowEscaped);
    CHECK(r.at_step == 1);
    CHECK(r.moduli.empty());
    CHECK(r.stayed_above_R); // vacuously
    CHECK(std::isinf(r.min_modulus));
}

TEST_CASE("orbit parameter validation") {
    const FunctionModel ex = FunctionModel::exponential();
    CHECK_THROWS_AS(iterate_orbit(ex, {0, 0}, 0, 100.0, 50.0), ConfigError);
    CHECK_THROWS_AS(iterate_orbit(ex, {0, 0}, 5, 40.0, 50.0), ConfigError);
    CHECK_THROWS_AS(iterate_orbit(ex, {0, 0}, 5, 100.0, 0.0), ConfigError);
    CHECK_THROWS_AS(classify_grid(ex, {0, 0, 1, 1}, 0, 4, 5, 100.0, 50.0), ConfigError);
    CHECK_THROWS_AS(classify_grid(ex, {0, 0, 1, -1}, 4, 4, 5, 100.0, 50.0), ConfigError);
}

TEST_CASE("degenerate 1x1 grid equals the single-orbit classification") {
    const FunctionModel ex = FunctionModel::exponential();
    const Window w{1.0, 0.5, 0.25, 0.25};
    const GridClassification g = classify_grid(ex, w, 1, 1, 20, 100.0, 50.0);
    REQUIRE(g.cells.size() == 1);
    const OrbitRecord r = iterate_orbit(ex, {1.0, 0.5}, 20, 100.0, 50.0);
    CHECK(g.cells[0].at_step == r.at_step);
    CHECK(g.cells[0].stayed_above_R == r.stayed_above_R);
    CHECK((g.cells[0].status == CellStatus::Overflow) ==
          (r.status == OrbitStatus::OverflowEscaped));
}

TEST_CASE("most of the standard window escapes under the exponential") {
    const FunctionModel ex = FunctionModel::exponential();
    const GridClassification g = classify_grid(ex, {0, 0, 2, 2}, 64, 64, 20, 50.0, 10.0);
    CHECK(double(escaping_count(g)) / double(g.cells.size()) > 0.5);
}

TEST_CASE("grids are deterministic and the parallel kernel matches the serial one") {
    const FunctionModel ex = FunctionModel::exponential();
    const Window w{0, 0, 2, 2};
    const GridClassification a = classify_grid(ex, w, 48, 48, 15, 100.0, 20.0);
    const GridClassification b = classify_grid(ex, w, 48, 48, 15, 100.0, 20.0);
    const GridClassification s = classify_grid_serial(ex, w, 48, 48, 15, 100.0, 20.0);
    CHECK(cells_identical(a, b));
    CHECK(cells_identical(a, s));
}

TEST_CASE("escaping count never drops when the horizon lengthens") {
    const FunctionModel ex = FunctionModel::exponential();
    std::mt19937_64 g(41);
    auto unit = [&g]() { return (g() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 20; ++trial) {
        const Window w{4.0 * unit() - 2.0, 2.0 * unit() - 1.0, 0.5 + unit(), 0.5 + unit()};
        const int short_h = 3 + int(unit() * 4), long_h = short_h + 1 + int(unit() * 10);
        const double R = 1.0 + 20.0 * unit();
        const double E = R + 30.0 + 100.0 * unit();
        const GridClassification a = classify_grid(ex, w, 24, 24, short_h, E, R);
        const GridClassification b = classify_grid(ex, w, 24, 24, long_h, E, R);
        CHECK(escaping_count(b) >= escaping_count(a));
        // and cell-wise: an escaper stays an escaper with the same step
        for (size_t k = 0; k < a.cells.size(); ++k) {
            if (a.cells[k].status == CellStatus::Escaped ||
                a.cells[k].status == CellStatus::Overflow) {
                CHECK(b.cells[k].status == a.cells[k].status);
                CHECK(b.cells[k].at_step == a.cells[k].at_step);
            }
        }
    }
}

TEST_CASE("stay-above sets nest as the threshold grows") {
    const FunctionModel ex = FunctionModel::exponential();
    const GridClassification g =
        classify_grid(ex, {5.0, 0.0, 2.0, 2.0}, 48, 48, 2, 1e300, 20.0);
    std::mt19937_64 rg(5);
    auto unit = [&rg]() { return (rg() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 20; ++trial) {
        const double r1 = 1.0 + 80.0 * unit();
        const double r2 = r1 + 1.0 + 60.0 * unit();
        const auto lo = jr_at(g, r1), hi = jr_at(g, r2);
        CHECK(hi.size() <= lo.size());
        size_t li = 0;
        bool subset = true;
        for (const auto& c : hi) {
            while (li < lo.size() && lo[li] != c) ++li;
            if (li == lo.size()) subset = false;
        }
        CHECK(subset);
        // escapers that stayed above are a subset of all who stayed above
        CHECK(ir_at(g, r1).size() <= lo.size());
    }
}

TEST_CASE("right half-plane window keeps almost every orbit above the threshold") {
    const FunctionModel ex = FunctionModel::exponential();
    const Window w{6.0, 0.0, 1.0, 1.0};
    // short horizon: both recorded moduli are astronomically large
    const GridClassification g = classify_grid(ex, w, 16, 16, 2, 1e300, 50.0);
    const auto jr = jr_candidates(g);
    CHECK(double(jr.size()) / double(g.cells.size()) > 0.9);

    // longer horizon with a lower ceiling: staying above forces escaping
    const GridClassification g2 = classify_grid(ex, w, 16, 16, 8, 1e10, 50.0);
    const auto jr2 = jr_candidates(g2);
    const auto ir2 = ir_candidates(g2);
    REQUIRE(!jr2.empty());
    CHECK(double(ir2.size()) / double(jr2.size()) >= 0.9);
}

TEST_CASE("orbits that dip below the threshold leave the stay-above set") {
    const FunctionModel ex = FunctionModel::exponential();
    // z1 = e^{z0} has modulus < 1 on Re z0 < 0, so nothing stays above R = 1
    const GridClassification g =
        classify_grid(ex, {-2.0, 0.0, 1.0, 1.0}, 16, 16, 5, 100.0, 1.0);
    CHECK(jr_candidates(g).empty());
    CHECK(ir_candidates(g).empty());
}

TEST_CASE("conjugating by a translation relabels orbits without changing fate") {
    const FunctionModel ex = FunctionModel::exponential();
    const AffineMap shift({1.0, 0.0}, {0.03, 0.02});
    const FunctionModel conj = FunctionModel::pushforward(ex, shift, shift);
    std::mt19937_64 g(59);
    auto unit = [&g]() { return (g() >> 11) * 0x1.0p-53; };
    int compared = 0;
    for (int k = 0; k < 40 && compared < 20; ++k) {
        const cplx z{3.0 * unit() - 1.0, 2.0 * unit() - 1.0};
        const OrbitRecord a = iterate_orbit(ex, z, 12, 1e6, 1e-6);
        const OrbitRecord b = iterate_orbit(conj, shift(z), 12, 1e6, 1e-6);
        if (a.status == OrbitStatus::Undetermined) continue;
        ++compared;
        CHECK(a.status == b.status);
        if (a.status == OrbitStatus::Escaped) {
            // conjugated orbit tracks the original while moduli stay moderate;
            // past that the exponential amplifies rounding too fast to compare
            const size_t n = std::min(a.points.size(), b.points.size());
            for (size_t i = 0; i + 1 < n && std::abs(a.points[i]) <= 50.0; ++i)
                CHECK(std::abs(b.points[i] - shift(a.points[i])) <
                      1e-6 * (1.0 + std::abs(a.points[i])));
        }
    }
    CHECK(compared >= 10);
}

TEST_CASE("pgm and csv writers emit well-formed deterministic output") {
    const FunctionModel ex = FunctionModel::exponential();
    const GridClassification g = classify_grid(ex, {0, 0, 2, 2}, 8, 8, 10, 100.0, 10.0);
    const std::string pgm = "/tmp/escdim_test_grid.pgm";
    const std::string csv = "/tmp/escdim_test_grid.csv";
    write_pgm(g, pgm);
    write_csv(g, csv);
    FILE* fp = std::fopen(pgm.c_str(), "rb");
    REQUIRE(fp);
    char header[16] = {0};
    REQUIRE(std::fgets(header, sizeof header, fp));
    CHECK(std::string(header) == "P5\n");
    std::fclose(fp);
    fp = std::fopen(csv.c_str(), "r");
    REQUIRE(fp);
    char line[256] = {0};
    REQUIRE(std::fgets(line, sizeof line, fp));
    CHECK(std::string(line) == "i,j,re,im,status,escape_step,stayed_above_R\n");
    std::fclose(fp);
    // writing twice gives identical bytes
    const std::string pgm2 = "/tmp/escdim_test_grid2.pgm";
    write_pgm(g, pgm2);
    auto slurp = [](const std::string& p) {
        FILE* f = std::fopen(p.c_str(), "rb");
        std::string s;
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
        std::fclose(f);
        return s;
    };
    CHECK(slurp(pgm) == slurp(pgm2));
}
