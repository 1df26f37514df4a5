#pragma once

#include <functional>

#include "openres/errors.hpp"

namespace openres {

// beta(k, k') = delta_coeff * delta(k' - k) + PV pv_part(k') / (k'^2 - k^2)
struct BetaKernel {
    double k = 0.0;
    cplx delta_coeff;
    std::function<cplx(double)> pv_part;
};

// Which one-sided limit to take at the separating surface.
enum class Side { Interior, Exterior };

}  // namespace openres
