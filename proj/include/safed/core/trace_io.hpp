#pragma once
#include <filesystem>
#include <fstream>
#include <string>

#include "safed/core/types.hpp"
#include "safed/util/jsonio.hpp"

namespace safed {

// Trace storage: one JSONL record {t, channel, value} per raw sample plus a
// JSON sidecar with segments/label/map/provenance and per-channel metadata.
// Doubles survive the JSON round trip bit-exactly.

inline std::filesystem::path sidecar_path(const std::filesystem::path& data_path) {
    std::filesystem::path p = data_path;
    p.replace_extension(".sidecar.json");
    return p;
}

inline void save_trace(const RawTrace& trace, const std::filesystem::path& path) {
    const auto violations = trace_violations(trace);
    if (!violations.empty())
        throw std::runtime_error("invalid trace for " + path.string() + ": " + violations.front());

    ensure_dir(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (ChannelId c : kAllChannels) {
        const auto& s = trace.channel(c);
        for (std::size_t i = 0; i < s.timestamps.size(); ++i) {
            json rec{{"t", s.timestamps[i]}, {"channel", channel_name(c)}, {"value", s.values[i]}};
            out << rec.dump() << "\n";
        }
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());

    json side;
    json segs = json::array();
    for (const auto& seg : trace.segments)
        segs.push_back({{"start_s", seg.start_s}, {"end_s", seg.end_s}, {"kind", segment_kind_name(seg.kind)}});
    side["segments"] = segs;
    side["label"] = label_name(trace.label);
    side["map_id"] = trace.map_id;
    side["provenance"] = trace.provenance;
    side["seed"] = trace.provenance.value("seed", std::uint64_t{0});
    side["normalized"] = trace.normalized;
    json channels = json::object();
    for (ChannelId c : kAllChannels) {
        const auto& s = trace.channel(c);
        const auto& r = trace.ranges[static_cast<int>(c)];
        channels[channel_name(c)] = {{"nominal_rate_hz", s.nominal_rate_hz},
                                     {"range", {{"lo", r.lo}, {"hi", r.hi}}}};
    }
    side["channels"] = channels;
    save_json(side, sidecar_path(path));
}

inline RawTrace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    RawTrace trace;
    for (ChannelId c : kAllChannels) trace.channel(c).channel = c;

    std::string line;
    std::size_t line_no = 0;
    std::size_t records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": parse error: " + e.what());
        }
        if (!rec.contains("t") || !rec.contains("channel") || !rec.contains("value"))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": record missing t/channel/value");
        auto& s = trace.channel(channel_from_name(rec["channel"].get<std::string>()));
        s.timestamps.push_back(rec["t"].get<double>());
        s.values.push_back(rec["value"].get<double>());
        ++records;
    }
    if (records == 0) throw std::runtime_error(path.string() + ": parse error: file has no records");

    const json side = load_json(sidecar_path(path));
    for (const auto& seg : side.at("segments"))
        trace.segments.push_back({seg.at("start_s").get<double>(), seg.at("end_s").get<double>(),
                                  segment_kind_from_name(seg.at("kind").get<std::string>())});
    trace.label = label_from_name(side.at("label").get<std::string>());
    trace.map_id = side.at("map_id").get<std::string>();
    trace.provenance = side.at("provenance");
    trace.normalized = side.value("normalized", false);
    if (side.contains("channels")) {
        for (ChannelId c : kAllChannels) {
            const auto& meta = side["channels"].at(channel_name(c));
            trace.channel(c).nominal_rate_hz = meta.at("nominal_rate_hz").get<double>();
            auto& r = trace.ranges[static_cast<int>(c)];
            r.lo = meta.at("range").at("lo").get<double>();
            r.hi = meta.at("range").at("hi").get<double>();
        }
    }

    const auto violations = trace_violations(trace);
    if (!violations.empty())
        throw std::runtime_error("validation error in " + path.string() + ": " + violations.front());
    return trace;
}

inline bool traces_equal(const RawTrace& a, const RawTrace& b) {
    if (a.map_id != b.map_id || a.label != b.label || a.normalized != b.normalized) return false;
    if (a.provenance != b.provenance) return false;
    if (a.segments.size() != b.segments.size()) return false;
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        if (a.segments[i].start_s != b.segments[i].start_s) return false;
        if (a.segments[i].end_s != b.segments[i].end_s) return false;
        if (a.segments[i].kind != b.segments[i].kind) return false;
    }
    for (ChannelId c : kAllChannels) {
        const auto& sa = a.channel(c);
        const auto& sb = b.channel(c);
        if (sa.nominal_rate_hz != sb.nominal_rate_hz) return false;
        if (sa.timestamps != sb.timestamps || sa.values != sb.values) return false;
        const int i = static_cast<int>(c);
        if (a.ranges[i].lo != b.ranges[i].lo || a.ranges[i].hi != b.ranges[i].hi) return false;
    }
    return true;
}

} // namespace safed
