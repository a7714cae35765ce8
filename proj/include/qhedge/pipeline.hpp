#pragma once

// End-to-end edge detection: horizontal and vertical scans, thresholding,
// shift-aware edge marking and superimposition.

#include <cstddef>
#include <optional>
#include <utility>

#include "qhedge/image.hpp"
#include "qhedge/postprocess.hpp"
#include "qhedge/qhed.hpp"

namespace qhedge {

struct EdgeOptions {
    PipelineConfig pipeline{};
    ThresholdMode threshold_mode = ThresholdMode::signed_max;
    /// Replaces the dynamic threshold in both directions when set.
    std::optional<double> threshold_override{};
    FirstEdgeScope first_edge = FirstEdgeScope::per_grid;
    double traditional_epsilon = kTraditionalEpsilon;
};

struct DirectionResult {
    DifferenceGrid grid;
    Threshold threshold;
    EdgeMap modified;
    EdgeMap traditional;
    std::optional<MeasurementRecord> record; ///< FRQI only
};

struct EdgeRun {
    DirectionResult horizontal;
    DirectionResult vertical;
    EdgeMap edges;       ///< modified H OR modified V
    EdgeMap traditional; ///< traditional H OR traditional V
};

inline DirectionResult run_direction(const GrayImage &img, ScanDirection direction,
                                     const EdgeOptions &opts) {
    std::optional<MeasurementRecord> record;
    auto grid = [&] {
        if (opts.pipeline.method == EncodingMethod::qpie)
            return scan_qpie(img, direction, opts.pipeline.boundary, opts.pipeline.ancilla);
        auto scan = scan_frqi(img, direction, opts.pipeline);
        record = scan.record;
        return std::move(scan.grid);
    }();
    Threshold thr = compute_threshold(grid, opts.threshold_mode);
    if (opts.threshold_override)
        thr.value = *opts.threshold_override;
    EdgeMap modified = detect_edges_modified(grid, thr, opts.first_edge);
    EdgeMap traditional = detect_edges_traditional(grid, opts.traditional_epsilon);
    return {std::move(grid), thr, std::move(modified), std::move(traditional), record};
}

/// Horizontal scan first, then vertical.
inline EdgeRun run_edges(const GrayImage &img, const EdgeOptions &opts = {}) {
    DirectionResult h = run_direction(img, ScanDirection::horizontal, opts);
    DirectionResult v = run_direction(img, ScanDirection::vertical, opts);
    EdgeMap edges = superimpose(h.modified, v.modified);
    EdgeMap trad = superimpose(h.traditional, v.traditional);
    return {std::move(h), std::move(v), std::move(edges), std::move(trad)};
}

} // namespace qhedge
