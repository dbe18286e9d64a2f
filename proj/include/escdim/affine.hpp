#pragma once
#include <cmath>

#include "escdim/errors.hpp"
#include "escdim/types.hpp"

namespace escdim {

// z -> a*z + b with a != 0, so every map here is invertible.
struct AffineMap {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    AffineMap() = default;
    AffineMap(cplx a_, cplx b_) : a(a_), b(b_) {
        if (a == cplx(0.0, 0.0))
            throw ConfigError("affine map needs a != 0");
    }

    cplx operator()(cplx z) const { return a * z + b; }

    AffineMap inverse() const { return AffineMap(1.0 / a, -b / a); }

    static AffineMap identity() { return AffineMap(); }

    bool is_identity() const { return a == cplx(1.0, 0.0) && b == cplx(0.0, 0.0); }
};

// compose(f, g)(z) = f(g(z))
inline AffineMap compose(const AffineMap& f, const AffineMap& g) {
    return AffineMap(f.a * g.a, f.a * g.b + f.b);
}

} // namespace escdim
