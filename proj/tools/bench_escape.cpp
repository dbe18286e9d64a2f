// Times grid classification, serial reference vs the OpenMP kernel, and
// checks the outputs are bit-identical.  Usage: escdim_bench [res] [max_iter]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "escdim/grid.hpp"

using namespace escdim;

namespace {

double run_ms(const FunctionModel& m, const Window& w, int res, int iters,
              bool parallel, GridClassification& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = classify_grid(m, w, res, res, iters, 100.0, 50.0, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool identical(const GridClassification& a, const GridClassification& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (size_t k = 0; k < a.cells.size(); ++k) {
        const GridCell &x = a.cells[k], &y = b.cells[k];
        // min_modulus compared bitwise so +inf == +inf and no FP surprises
        if (x.status != y.status || x.stayed_above_R != y.stayed_above_R ||
            x.eval_failure != y.eval_failure || x.at_step != y.at_step ||
            std::memcmp(&x.min_modulus, &y.min_modulus, sizeof(double)) != 0)
            return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const int res = argc > 1 ? std::atoi(argv[1]) : 512;
    const int iters = argc > 2 ? std::atoi(argv[2]) : 30;
    const FunctionModel m = FunctionModel::exponential();
    const Window w{0.0, 0.0, 3.0, 3.0};

    GridClassification serial, parallel;
    const double warm = run_ms(m, w, res / 4, iters, true, parallel);
    (void)warm;
    const double ms_ser = run_ms(m, w, res, iters, false, serial);
    const double ms_par = run_ms(m, w, res, iters, true, parallel);

    std::printf("res=%d max_iter=%d\n", res, iters);
    std::printf("serial   %10.2f ms\n", ms_ser);
    std::printf("parallel %10.2f ms  (speedup %.2fx)\n", ms_par, ms_ser / ms_par);
    if (!identical(serial, parallel)) {
        std::printf("MISMATCH: parallel output differs from serial reference\n");
        return 1;
    }
    std::printf("outputs bit-identical\n");
    return 0;
}
