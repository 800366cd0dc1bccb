#pragma once

#include "skewlab/measure.hpp"

namespace skewlab {

/// Exact small-instance transport cost between atomic measures on the
/// circle, solved as a transportation problem by successive shortest
/// paths. Independent of the CDF-median route; intended for
/// cross-checking on instances with few atoms.
double transport_cost_oracle(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu);

}  // namespace skewlab
