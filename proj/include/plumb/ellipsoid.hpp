#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "plumb/lattice.hpp"

namespace plumb {

/// Visits every characteristic vector K = rep + 2 Q x in the class of `rep`
/// with -K^2 <= bound. The callback receives the offset x and the pairing
/// vector k. Enumeration is exact (Fincke-Pohst on -Q with integer-scaled
/// centres); throws BudgetExceeded after `budget` hits.
void for_each_char_in_ellipsoid(
    const QFormContext& ctx, const CharVector& rep, const Rational& bound, std::uint64_t budget,
    const std::function<void(std::span<const std::int64_t> x, std::span<const std::int64_t> k)>& visit);

/// Inclusive per-coordinate range of the offsets x visited by
/// for_each_char_in_ellipsoid for the same arguments (slightly padded).
std::vector<std::pair<std::int64_t, std::int64_t>> ellipsoid_box(const QFormContext& ctx, const CharVector& rep,
                                                                  const Rational& bound);

}  // namespace plumb
