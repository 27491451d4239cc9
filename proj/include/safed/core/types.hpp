#pragma once
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "safed/util/jsonio.hpp"

namespace safed {

using Mat = Eigen::MatrixXf;
using Vec = Eigen::VectorXf;

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

// Channel ordinals are the channel index c used everywhere downstream.
enum class ChannelId : int { steering = 0, throttle = 1, brake = 2 };
inline constexpr int kNumChannels = 3;

inline constexpr std::array<ChannelId, 3> kAllChannels{ChannelId::steering, ChannelId::throttle,
                                                       ChannelId::brake};

inline const char* channel_name(ChannelId c) {
    switch (c) {
        case ChannelId::steering: return "steering";
        case ChannelId::throttle: return "throttle";
        case ChannelId::brake: return "brake";
    }
    return "?";
}

inline ChannelId channel_from_name(const std::string& name) {
    for (ChannelId c : kAllChannels)
        if (name == channel_name(c)) return c;
    throw std::runtime_error("unknown channel name: " + name);
}

// Declared raw unit range of a channel (degrees for steering, percent for pedals).
struct ChannelRange {
    double lo = 0.0;
    double hi = 0.0;
};

inline constexpr double kDefaultSteeringRangeDeg = 450.0;  // 900-degree consumer wheel

inline std::array<ChannelRange, 3> default_ranges(double steering_range_deg = kDefaultSteeringRangeDeg) {
    return {ChannelRange{-steering_range_deg, steering_range_deg}, ChannelRange{0.0, 100.0},
            ChannelRange{0.0, 100.0}};
}

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

enum class SegmentKind : int { straight = 0, turn_left = 1, turn_right = 2, u_turn = 3 };

inline const char* segment_kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::straight: return "straight";
        case SegmentKind::turn_left: return "turn_left";
        case SegmentKind::turn_right: return "turn_right";
        case SegmentKind::u_turn: return "u_turn";
    }
    return "?";
}

inline SegmentKind segment_kind_from_name(const std::string& name) {
    for (SegmentKind k : {SegmentKind::straight, SegmentKind::turn_left, SegmentKind::turn_right,
                          SegmentKind::u_turn})
        if (name == segment_kind_name(k)) return k;
    throw std::runtime_error("unknown segment kind: " + name);
}

inline bool is_straight(SegmentKind k) { return k == SegmentKind::straight; }

struct Segment {
    double start_s = 0.0;
    double end_s = 0.0;
    SegmentKind kind = SegmentKind::straight;
};

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

enum class Label : int { healthy = 0, abnormal = 1 };

inline const char* label_name(Label l) { return l == Label::healthy ? "healthy" : "abnormal"; }

inline Label label_from_name(const std::string& name) {
    if (name == "healthy") return Label::healthy;
    if (name == "abnormal") return Label::abnormal;
    throw std::runtime_error("unknown label: " + name);
}

struct ChannelSeries {
    ChannelId channel = ChannelId::steering;
    std::vector<double> timestamps;  // seconds, strictly increasing
    std::vector<double> values;      // raw units; normalized after preprocess
    double nominal_rate_hz = 0.0;
};

struct RawTrace {
    std::array<ChannelSeries, kNumChannels> series;  // indexed by channel ordinal
    std::vector<Segment> segments;                   // tile [0, duration], no gaps/overlaps
    std::string map_id;
    Label label = Label::healthy;
    json provenance = json::object();  // {"kind":"healthy"} or seed + symptom record
    std::array<ChannelRange, kNumChannels> ranges = default_ranges();
    bool normalized = false;

    double duration_s() const { return segments.empty() ? 0.0 : segments.back().end_s; }
    ChannelSeries& channel(ChannelId c) { return series[static_cast<int>(c)]; }
    const ChannelSeries& channel(ChannelId c) const { return series[static_cast<int>(c)]; }
};

// Invariant check shared by save/load/validate. Returns human-readable
// violations; empty means the trace is well-formed.
inline std::vector<std::string> trace_violations(const RawTrace& trace) {
    std::vector<std::string> v;
    for (ChannelId c : kAllChannels) {
        const auto& s = trace.channel(c);
        const std::string name = channel_name(c);
        if (s.channel != c) v.push_back(name + ": series stored under wrong ordinal");
        if (s.timestamps.size() != s.values.size())
            v.push_back(name + ": timestamp/value length mismatch");
        if (s.timestamps.empty()) v.push_back(name + ": channel missing (no samples)");
        for (std::size_t i = 0; i + 1 < s.timestamps.size(); ++i)
            if (!(s.timestamps[i] < s.timestamps[i + 1])) {
                v.push_back(name + ": timestamps not strictly increasing at index " +
                            std::to_string(i + 1));
                break;
            }
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (!std::isfinite(s.values[i]) || !std::isfinite(s.timestamps[i])) {
                v.push_back(name + ": non-finite sample at index " + std::to_string(i));
                break;
            }
    }
    if (trace.segments.empty()) {
        v.push_back("segments: empty");
    } else {
        if (std::abs(trace.segments.front().start_s) > 1e-9)
            v.push_back("segments: do not start at 0");
        for (std::size_t i = 0; i < trace.segments.size(); ++i) {
            const auto& seg = trace.segments[i];
            if (!(seg.end_s > seg.start_s))
                v.push_back("segments: non-positive duration at index " + std::to_string(i));
            if (i + 1 < trace.segments.size() &&
                std::abs(seg.end_s - trace.segments[i + 1].start_s) > 1e-9)
                v.push_back("segments: gap or overlap at index " + std::to_string(i + 1));
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Windows and frames
// ---------------------------------------------------------------------------

// One 4 s driving action: 3 x M normalized matrix with its binary label.
struct WindowSample {
    Mat data;  // kNumChannels x M
    int label = 0;
    double window_start_s = 0.0;
    std::string map_id;
    std::string trace_id;
    std::vector<SegmentKind> segment_kinds;  // kinds overlapped, ordered, unique

    int length() const { return static_cast<int>(data.cols()); }
};

struct Frame {
    Mat data;            // kNumChannels x F
    int frame_index = 1; // r in [1..R]
};

inline int frame_count(double window_s, double frame_s, double stride_s) {
    return static_cast<int>(std::floor((window_s - frame_s) / stride_s + 1e-9)) + 1;
}

} // namespace safed
