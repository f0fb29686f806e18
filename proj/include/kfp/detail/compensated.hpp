#pragma once

#include "kfp/core.hpp"

namespace kfp::detail {

// e^{(1 - |c1|) t} ||e^{-tM}||^2 - 1 without cancellation at either end of
// the time axis. Requires |A| > 0.
double compensated_deviation(const Params& p, const AuxQuantities& aux, double t);

}  // namespace kfp::detail
