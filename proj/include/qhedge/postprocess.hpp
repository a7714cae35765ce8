#pragma once

// Classical post-processing of scan differences into binary edge maps.
//
// Units: a DifferenceGrid stores d_i = (c_i - c_{i+1}) / 2. The dynamic
// threshold is defined on the raw difference c_i - c_{i+1} = 2 d_i, and the
// modified detector compares raw differences against it. The traditional
// detector compares the stored |d_i| against its epsilon.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qhedge/errors.hpp"
#include "qhedge/image.hpp"
#include "qhedge/qhed.hpp"

namespace qhedge {

/// signed_max: |max_i (c_i - c_{i+1})|; max_abs: max_i |c_i - c_{i+1}|.
enum class ThresholdMode { signed_max, max_abs };

/// Whether the reference "first edge" sign is taken once per grid or reset
/// at the start of every scan row.
enum class FirstEdgeScope { per_grid, per_row };

inline constexpr double kTraditionalEpsilon = 1e-9;

struct Threshold {
    double value = 0.0;
    std::size_t n = 1; ///< image side exponent
};

/// Square binary map, row-major, bits in {0, 1}.
class EdgeMap {
  public:
    explicit EdgeMap(std::size_t side) : side_(side), bits_(side * side, 0) {
        detail::check_square_side(side_, bits_.size());
    }

    EdgeMap(std::size_t side, std::vector<std::uint8_t> bits) : side_(side), bits_(std::move(bits)) {
        detail::check_square_side(side_, bits_.size());
        for (auto b : bits_)
            if (b > 1)
                throw ValidationError("edge map bits must be 0 or 1");
    }

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    [[nodiscard]] const std::vector<std::uint8_t> &bits() const noexcept { return bits_; }
    [[nodiscard]] bool at(std::size_t row, std::size_t col) const {
        return bits_.at(row * side_ + col) != 0;
    }
    [[nodiscard]] std::size_t count() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
    }
    void set(std::size_t idx) { bits_.at(idx) = 1; }

    friend bool operator==(const EdgeMap &, const EdgeMap &) = default;

  private:
    std::size_t side_;
    std::vector<std::uint8_t> bits_;
};

inline Threshold compute_threshold(const DifferenceGrid &grid,
                                   ThresholdMode mode = ThresholdMode::signed_max) {
    const std::size_t n = grid.exponent();
    if (n < 1)
        throw SizeError("threshold needs an image side of at least 2");
    const auto &vals = grid.values();
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (grid.boundary() == BoundaryMode::clipped && grid.is_row_end(i))
            continue;
        const double raw = 2.0 * vals[i];
        best = std::max(best, mode == ThresholdMode::signed_max ? raw : std::abs(raw));
        any = true;
    }
    if (!any)
        return {0.0, n};
    return {std::abs(best) / (2.0 * static_cast<double>(n)), n};
}

/// Marks pixel i wherever |d_i| > epsilon. No shift, no noise pass.
inline EdgeMap detect_edges_traditional(const DifferenceGrid &grid,
                                        double epsilon = kTraditionalEpsilon) {
    if (epsilon < 0.0)
        throw ValidationError("epsilon must be non-negative");
    EdgeMap out(grid.side());
    const auto &vals = grid.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i]) > epsilon)
            out.set(i);
    return out;
}

/// Pixels whose raw difference exceeds the threshold (before any shift).
inline EdgeMap edge_candidates(const DifferenceGrid &grid, Threshold thr) {
    EdgeMap out(grid.side());
    const auto &vals = grid.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (std::abs(2.0 * vals[i]) > thr.value)
            out.set(i);
    return out;
}

/// Walks the grid in scan order. The sign of the first above-threshold
/// difference is the reference: matching differences mark their own pixel,
/// opposite ones mark the next pixel along the scan (dropped past the row
/// end) and never their own, which is the noise rule for d < -thr.
inline EdgeMap detect_edges_modified(const DifferenceGrid &grid, Threshold thr,
                                     FirstEdgeScope scope = FirstEdgeScope::per_grid) {
    const std::size_t side = grid.side();
    EdgeMap out(side);
    int reference = 0;
    for (std::size_t sr = 0; sr < side; ++sr) {
        if (scope == FirstEdgeScope::per_row)
            reference = 0;
        for (std::size_t sc = 0; sc < side; ++sc) {
            const double d = grid.scan_at(sr, sc);
            if (!(std::abs(2.0 * d) > thr.value))
                continue;
            const int sign = d > 0.0 ? 1 : -1;
            if (reference == 0)
                reference = sign;
            if (sign == reference) {
                out.set(grid.image_index(sr, sc));
            } else if (sc + 1 < side) {
                out.set(grid.image_index(sr, sc + 1));
            }
        }
    }
    return out;
}

/// Pixel-wise OR.
inline EdgeMap superimpose(const EdgeMap &h, const EdgeMap &v) {
    if (h.side() != v.side())
        throw ValidationError("cannot superimpose edge maps of sides " + std::to_string(h.side()) +
                              " and " + std::to_string(v.side()));
    std::vector<std::uint8_t> bits(h.bits().size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = static_cast<std::uint8_t>(h.bits()[i] | v.bits()[i]);
    return EdgeMap(h.side(), std::move(bits));
}

} // namespace qhedge
