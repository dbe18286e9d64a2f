#pragma once
#include <complex>
#include <cstdio>
#include <string>

namespace escdim {

using cplx = std::complex<double>;

// Values whose magnitude passes this are treated as overflowed everywhere.
inline constexpr double kOverflowLimit = 1e300;

// Result of evaluating a model: value plus an estimate of the absolute error.
// reduced_accuracy marks near-boundary evaluations whose Taylor remainder
// exceeded the requested tolerance (value is still the best available).
struct EvalResult {
    cplx value{};
    double err = 0.0;
    bool reduced_accuracy = false;
};

// All floats that cross a file/stdout boundary go through here: 17 significant
// digits round-trip exactly through IEEE doubles.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace escdim
