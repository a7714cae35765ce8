#pragma once

// Run manifest (JSON) and the string names of every pipeline option.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhedge/errors.hpp"
#include "qhedge/imageio.hpp"
#include "qhedge/pipeline.hpp"

namespace qhedge {

namespace names {

template <class E> struct Table;

template <> struct Table<EncodingMethod> {
    static inline const std::map<std::string, EncodingMethod> map{{"qpie", EncodingMethod::qpie},
                                                                  {"frqi", EncodingMethod::frqi}};
};
template <> struct Table<BranchPolicy> {
    static inline const std::map<std::string, BranchPolicy> map{
        {"max-prob", BranchPolicy::max_prob},
        {"forced-0", BranchPolicy::forced_0},
        {"forced-1", BranchPolicy::forced_1},
        {"sampled", BranchPolicy::sampled}};
};
template <> struct Table<BoundaryMode> {
    static inline const std::map<std::string, BoundaryMode> map{{"clipped", BoundaryMode::clipped},
                                                                {"cyclic", BoundaryMode::cyclic}};
};
template <> struct Table<AncillaPrep> {
    static inline const std::map<std::string, AncillaPrep> map{
        {"plus", AncillaPrep::plus}, {"minus", AncillaPrep::minus}};
};
template <> struct Table<FirstEdgeScope> {
    static inline const std::map<std::string, FirstEdgeScope> map{
        {"per-grid", FirstEdgeScope::per_grid}, {"per-row", FirstEdgeScope::per_row}};
};
template <> struct Table<ThresholdMode> {
    static inline const std::map<std::string, ThresholdMode> map{
        {"signed-max", ThresholdMode::signed_max}, {"max-abs", ThresholdMode::max_abs}};
};
template <> struct Table<io::FitMode> {
    static inline const std::map<std::string, io::FitMode> map{{"zero", io::FitMode::zero_pad},
                                                               {"crop", io::FitMode::center_crop}};
};

template <class E> std::string to_string(E value) {
    for (const auto &[k, v] : Table<E>::map)
        if (v == value)
            return k;
    return "?";
}

template <class E> E parse(std::string_view text) {
    const auto it = Table<E>::map.find(std::string(text));
    if (it == Table<E>::map.end())
        throw ValidationError("unknown option value '" + std::string(text) + "'");
    return it->second;
}

template <class E> std::vector<std::string> choices() {
    std::vector<std::string> out;
    for (const auto &[k, v] : Table<E>::map)
        out.push_back(k);
    return out;
}

} // namespace names

struct RunManifest {
    std::string input;
    std::size_t source_width = 0;
    std::size_t source_height = 0;
    std::size_t side = 0;
    io::LoadOptions load{};
    EdgeOptions options{};
    std::vector<std::string> outputs;
    std::optional<double> timing_ms{};
};

inline nlohmann::json record_json(const std::optional<MeasurementRecord> &rec) {
    if (!rec)
        return nullptr;
    return {{"qubit", rec->qubit.value},
            {"outcome", rec->outcome},
            {"probability", rec->probability}};
}

/// Keys serialize in sorted order, so equal runs give byte-identical text.
inline nlohmann::json to_json(const RunManifest &m, const EdgeRun &run) {
    const auto &o = m.options;
    nlohmann::json j;
    j["input"] = m.input;
    j["image"] = {{"source_width", m.source_width},
                  {"source_height", m.source_height},
                  {"side", m.side},
                  {"fit", names::to_string(m.load.fit)},
                  {"rgb_angle", m.load.rgb_angle}};
    j["method"] = names::to_string(o.pipeline.method);
    j["branch"] = {{"policy", names::to_string(o.pipeline.branch.kind)},
                   {"seed", o.pipeline.branch.seed},
                   {"horizontal", record_json(run.horizontal.record)},
                   {"vertical", record_json(run.vertical.record)}};
    j["seed"] = o.pipeline.branch.seed;
    j["boundary"] = names::to_string(o.pipeline.boundary);
    j["ancilla"] = names::to_string(o.pipeline.ancilla);
    j["first_edge"] = names::to_string(o.first_edge);
    j["threshold"] = {{"mode", names::to_string(o.threshold_mode)},
                      {"override", o.threshold_override ? nlohmann::json(*o.threshold_override)
                                                        : nlohmann::json(nullptr)},
                      {"horizontal", run.horizontal.threshold.value},
                      {"vertical", run.vertical.threshold.value}};
    j["traditional_epsilon"] = o.traditional_epsilon;
    j["edge_pixels"] = {{"modified", run.edges.count()}, {"traditional", run.traditional.count()}};
    j["outputs"] = m.outputs;
    if (m.timing_ms)
        j["timing_ms"] = *m.timing_ms;
    return j;
}

} // namespace qhedge
