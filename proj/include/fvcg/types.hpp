#pragma once

#include <cstddef>
#include <vector>

namespace fvcg {

using Currency = double;

/// Zero-based operator index. Externally (CSV, wire protocol) operators are
/// numbered from 1.
using MnoIndex = std::size_t;

/// Absolute tolerance for currency and fraction comparisons.
inline constexpr double kTolerance = 1e-9;

}  // namespace fvcg
