#pragma once
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safed/core/trace_io.hpp"
#include "safed/core/types.hpp"
#include "safed/util/jsonio.hpp"

namespace safed {

struct TraceEntry {
    std::string path;  // relative to the manifest's directory
    std::string trace_id;
    std::string map_id;
    Label label = Label::healthy;
    int windows = 0;  // windows this trace yields under the manifest's preprocessing
};

// Trace-level split; every window of a trace inherits its trace's side.
struct SplitAssignment {
    double ratio = 0.85;
    std::uint64_t seed = 0;
    std::vector<std::string> train;  // trace ids
    std::vector<std::string> test;
};

struct PreprocessParams {
    double target_hz = 30.0;
    double window_s = 4.0;
    double overlap_s = 1.0;
    double frame_s = 1.0;
    double frame_stride_s = 0.5;
    double steering_range_deg = kDefaultSteeringRangeDeg;

    double stride_s() const { return window_s - overlap_s; }
    int window_len() const { return static_cast<int>(std::lround(window_s * target_hz)); }

    json to_json() const {
        return {{"target_hz", target_hz},   {"window_s", window_s},
                {"overlap_s", overlap_s},   {"frame_s", frame_s},
                {"frame_stride_s", frame_stride_s}, {"steering_range_deg", steering_range_deg}};
    }
    static PreprocessParams from_json(const json& j) {
        PreprocessParams p;
        p.target_hz = j.value("target_hz", p.target_hz);
        p.window_s = j.value("window_s", p.window_s);
        p.overlap_s = j.value("overlap_s", p.overlap_s);
        p.frame_s = j.value("frame_s", p.frame_s);
        p.frame_stride_s = j.value("frame_stride_s", p.frame_stride_s);
        p.steering_range_deg = j.value("steering_range_deg", p.steering_range_deg);
        return p;
    }
};

struct DatasetManifest {
    std::uint64_t global_seed = 0;
    PreprocessParams preprocessing;
    std::vector<TraceEntry> traces;
    std::string config_digest;
    std::optional<SplitAssignment> split;

    int count_traces(Label l) const {
        int n = 0;
        for (const auto& t : traces) n += (t.label == l) ? 1 : 0;
        return n;
    }
    int count_windows(Label l) const {
        int n = 0;
        for (const auto& t : traces) n += (t.label == l) ? t.windows : 0;
        return n;
    }
};

inline json manifest_to_json(const DatasetManifest& m) {
    json j;
    j["global_seed"] = m.global_seed;
    j["preprocessing"] = m.preprocessing.to_json();
    j["config_digest"] = m.config_digest;
    json traces = json::array();
    for (const auto& t : m.traces)
        traces.push_back({{"path", t.path},
                          {"trace_id", t.trace_id},
                          {"map_id", t.map_id},
                          {"label", label_name(t.label)},
                          {"windows", t.windows}});
    j["traces"] = traces;
    j["counts"] = {{"healthy_traces", m.count_traces(Label::healthy)},
                   {"abnormal_traces", m.count_traces(Label::abnormal)},
                   {"healthy_windows", m.count_windows(Label::healthy)},
                   {"abnormal_windows", m.count_windows(Label::abnormal)}};
    if (m.split) {
        j["split"] = {{"ratio", m.split->ratio},
                      {"seed", m.split->seed},
                      {"train", m.split->train},
                      {"test", m.split->test}};
    } else {
        j["split"] = nullptr;
    }
    return j;
}

inline DatasetManifest manifest_from_json(const json& j) {
    DatasetManifest m;
    m.global_seed = j.at("global_seed").get<std::uint64_t>();
    m.preprocessing = PreprocessParams::from_json(j.at("preprocessing"));
    m.config_digest = j.value("config_digest", "");
    for (const auto& t : j.at("traces"))
        m.traces.push_back({t.at("path").get<std::string>(), t.at("trace_id").get<std::string>(),
                            t.at("map_id").get<std::string>(),
                            label_from_name(t.at("label").get<std::string>()),
                            t.at("windows").get<int>()});
    if (j.contains("split") && !j["split"].is_null()) {
        SplitAssignment s;
        s.ratio = j["split"].at("ratio").get<double>();
        s.seed = j["split"].at("seed").get<std::uint64_t>();
        s.train = j["split"].at("train").get<std::vector<std::string>>();
        s.test = j["split"].at("test").get<std::vector<std::string>>();
        m.split = s;
    }
    return m;
}

inline void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
    save_json(manifest_to_json(m), path);
}

inline DatasetManifest load_manifest(const std::filesystem::path& path) {
    const json j = load_json(path);
    DatasetManifest m = manifest_from_json(j);
    // Stored counts must equal the sums over listed traces.
    if (j.contains("counts")) {
        const auto& c = j["counts"];
        if (c.value("healthy_traces", -1) != m.count_traces(Label::healthy) ||
            c.value("abnormal_traces", -1) != m.count_traces(Label::abnormal) ||
            c.value("healthy_windows", -1) != m.count_windows(Label::healthy) ||
            c.value("abnormal_windows", -1) != m.count_windows(Label::abnormal))
            throw std::runtime_error("manifest counts do not match listed traces: " + path.string());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Dataset validation
// ---------------------------------------------------------------------------

struct RateStats {
    double min_hz = 0.0;
    double mean_hz = 0.0;
    double max_hz = 0.0;
};

struct ValidationReport {
    bool ok = false;
    int healthy_traces = 0;
    int abnormal_traces = 0;
    int healthy_windows = 0;
    int abnormal_windows = 0;
    std::map<std::string, RateStats> rate_stats;  // per channel, observed rates
    std::vector<std::string> violations;

    json to_json() const {
        json j{{"ok", ok},
               {"counts",
                {{"healthy_traces", healthy_traces},
                 {"abnormal_traces", abnormal_traces},
                 {"healthy_windows", healthy_windows},
                 {"abnormal_windows", abnormal_windows}}},
               {"violations", violations}};
        json rates = json::object();
        for (const auto& [name, rs] : rate_stats)
            rates[name] = {{"min_hz", rs.min_hz}, {"mean_hz", rs.mean_hz}, {"max_hz", rs.max_hz}};
        j["rate_stats"] = rates;
        return j;
    }
};

// Violations are report content, not errors; ok=true iff none were found.
// `manifest_counts` lets callers check a manifest JSON whose stored counts
// disagree with its trace list (load_manifest rejects those outright).
inline ValidationReport validate_dataset(const DatasetManifest& manifest,
                                         const std::filesystem::path& base_dir,
                                         const json* manifest_counts = nullptr) {
    ValidationReport rep;
    rep.healthy_traces = manifest.count_traces(Label::healthy);
    rep.abnormal_traces = manifest.count_traces(Label::abnormal);
    rep.healthy_windows = manifest.count_windows(Label::healthy);
    rep.abnormal_windows = manifest.count_windows(Label::abnormal);

    if (manifest_counts) {
        const auto check = [&](const char* key, int actual) {
            if (manifest_counts->contains(key) && (*manifest_counts)[key].get<int>() != actual)
                rep.violations.push_back(std::string("count mismatch for ") + key + ": claimed " +
                                         std::to_string((*manifest_counts)[key].get<int>()) +
                                         ", listed " + std::to_string(actual));
        };
        check("healthy_traces", rep.healthy_traces);
        check("abnormal_traces", rep.abnormal_traces);
        check("healthy_windows", rep.healthy_windows);
        check("abnormal_windows", rep.abnormal_windows);
    }

    std::map<std::string, std::vector<double>> rates;
    const auto& pp = manifest.preprocessing;
    for (const auto& entry : manifest.traces) {
        const auto path = base_dir / entry.path;
        RawTrace trace;
        try {
            trace = load_trace(path);
        } catch (const std::exception& e) {
            rep.violations.push_back(entry.path + ": " + e.what());
            continue;
        }
        for (const auto& v : trace_violations(trace)) rep.violations.push_back(entry.path + ": " + v);
        if (trace.label != entry.label)
            rep.violations.push_back(entry.path + ": label differs from manifest entry");
        if (trace.map_id != entry.map_id)
            rep.violations.push_back(entry.path + ": map_id differs from manifest entry");
        const double dur = trace.duration_s();
        if (dur + 1e-9 >= pp.window_s) {
            const int expect =
                static_cast<int>(std::floor((dur - pp.window_s) / pp.stride_s() + 1e-9)) + 1;
            if (expect != entry.windows)
                rep.violations.push_back(entry.path + ": window count " + std::to_string(entry.windows) +
                                         " does not match duration (" + std::to_string(expect) + ")");
        }
        for (ChannelId c : kAllChannels) {
            const auto& s = trace.channel(c);
            if (s.timestamps.size() >= 2 && dur > 0)
                rates[channel_name(c)].push_back(static_cast<double>(s.timestamps.size() - 1) /
                                                 (s.timestamps.back() - s.timestamps.front()));
        }
    }
    for (auto& [name, rs] : rates) {
        RateStats st;
        st.min_hz = *std::min_element(rs.begin(), rs.end());
        st.max_hz = *std::max_element(rs.begin(), rs.end());
        double sum = 0.0;
        for (double r : rs) sum += r;
        st.mean_hz = sum / static_cast<double>(rs.size());
        rep.rate_stats[name] = st;
    }
    rep.ok = rep.violations.empty();
    return rep;
}

} // namespace safed
