#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "safed/core/manifest.hpp"
#include "safed/core/types.hpp"

namespace safed {

// ---------------------------------------------------------------------------
// Normalization: steering [-range, +range] deg -> [-1, 1], pedals 0-100% -> [0, 1].
// ---------------------------------------------------------------------------

struct NormalizeResult {
    RawTrace trace;
    std::array<int, kNumChannels> clipped{0, 0, 0};  // raw values outside the declared range

    int total_clipped() const { return clipped[0] + clipped[1] + clipped[2]; }
};

inline NormalizeResult normalize(const RawTrace& input) {
    if (input.normalized) throw std::runtime_error("normalize: trace already normalized");
    NormalizeResult res;
    res.trace = input;
    for (ChannelId c : kAllChannels) {
        const int i = static_cast<int>(c);
        const ChannelRange r = input.ranges[i];
        if (!(r.hi > r.lo)) throw std::runtime_error("normalize: channel range not declared");
        auto& values = res.trace.series[i].values;
        for (double& v : values) {
            if (v < r.lo || v > r.hi) {
                v = std::clamp(v, r.lo, r.hi);
                ++res.clipped[i];
            }
            if (c == ChannelId::steering)
                v = 2.0 * (v - r.lo) / (r.hi - r.lo) - 1.0;
            else
                v = (v - r.lo) / (r.hi - r.lo);
        }
    }
    res.trace.normalized = true;
    return res;
}

// ---------------------------------------------------------------------------
// Nearest-neighbor resampling onto the common grid t_k = k / target_hz.
// ---------------------------------------------------------------------------

inline RawTrace resample_nearest(const RawTrace& input, double target_hz = 30.0) {
    if (target_hz <= 0) throw std::runtime_error("resample_nearest: target_hz must be positive");
    const double duration = input.duration_s();
    const long n = std::lround(duration * target_hz);
    RawTrace out = input;
    for (ChannelId c : kAllChannels) {
        const auto& src = input.channel(c);
        if (src.timestamps.empty())
            throw std::runtime_error(std::string("resample_nearest: empty channel ") + channel_name(c));
        auto& dst = out.channel(c);
        dst.timestamps.assign(static_cast<std::size_t>(n), 0.0);
        dst.values.assign(static_cast<std::size_t>(n), 0.0);
        std::size_t j = 0;  // last source index with timestamp <= t_k (monotone in k)
        for (long k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) / target_hz;
            while (j + 1 < src.timestamps.size() && src.timestamps[j + 1] <= t) ++j;
            std::size_t pick = j;
            if (j + 1 < src.timestamps.size()) {
                const double d_prev = t - src.timestamps[j];
                const double d_next = src.timestamps[j + 1] - t;
                if (d_next < d_prev) pick = j + 1;  // ties go to the earlier sample
            }
            dst.timestamps[static_cast<std::size_t>(k)] = t;
            dst.values[static_cast<std::size_t>(k)] = src.values[pick];
        }
        dst.nominal_rate_hz = target_hz;
    }
    return out;
}

inline bool on_common_grid(const RawTrace& trace, double target_hz) {
    const auto& ref = trace.channel(ChannelId::steering).timestamps;
    for (ChannelId c : kAllChannels) {
        const auto& s = trace.channel(c);
        if (s.nominal_rate_hz != target_hz) return false;
        if (s.timestamps.size() != ref.size()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Windowing: fixed windows of window_s seconds, consecutive windows sharing
// overlap_s seconds; the trailing remainder shorter than a window is dropped.
// ---------------------------------------------------------------------------

inline std::vector<WindowSample> window(const RawTrace& trace, const PreprocessParams& pp,
                                        std::string* warning = nullptr) {
    if (!trace.normalized) throw std::runtime_error("window: trace not normalized");
    if (!on_common_grid(trace, pp.target_hz))
        throw std::runtime_error("window: trace not resampled to the common grid");
    const double stride_s = pp.stride_s();
    if (stride_s <= 0) throw std::runtime_error("window: overlap must be smaller than the window");

    const double duration = trace.duration_s();
    std::vector<WindowSample> out;
    if (duration + 1e-9 < pp.window_s) {
        if (warning)
            *warning = "trace shorter than one window (" + std::to_string(duration) + " s); no windows";
        return out;
    }

    const int m = pp.window_len();
    const int stride_cols = static_cast<int>(std::lround(stride_s * pp.target_hz));
    const int total = static_cast<int>(trace.channel(ChannelId::steering).values.size());
    const std::string trace_id = trace.provenance.value("trace_id", std::string{});

    for (int start_col = 0; start_col + m <= total; start_col += stride_cols) {
        WindowSample w;
        w.data.resize(kNumChannels, m);
        for (ChannelId c : kAllChannels) {
            const auto& vals = trace.channel(c).values;
            for (int i = 0; i < m; ++i)
                w.data(static_cast<int>(c), i) = static_cast<float>(vals[static_cast<std::size_t>(start_col + i)]);
        }
        w.label = static_cast<int>(trace.label);
        w.window_start_s = static_cast<double>(start_col) / pp.target_hz;
        w.map_id = trace.map_id;
        w.trace_id = trace_id;
        const double w_end = w.window_start_s + pp.window_s;
        for (const auto& seg : trace.segments) {
            if (seg.end_s > w.window_start_s + 1e-9 && seg.start_s < w_end - 1e-9) {
                if (std::find(w.segment_kinds.begin(), w.segment_kinds.end(), seg.kind) ==
                    w.segment_kinds.end())
                    w.segment_kinds.push_back(seg.kind);
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Framing: 1 s frames with a 0.5 s sliding step inside one window.
// ---------------------------------------------------------------------------

inline std::vector<Frame> frame(const WindowSample& sample, const PreprocessParams& pp) {
    if (pp.frame_s > pp.window_s + 1e-9)
        throw std::runtime_error("frame: frame length exceeds window length");
    const double rate = static_cast<double>(sample.length()) / pp.window_s;
    const int f = static_cast<int>(std::lround(pp.frame_s * rate));
    const int step = static_cast<int>(std::lround(pp.frame_stride_s * rate));
    const int r_total = frame_count(pp.window_s, pp.frame_s, pp.frame_stride_s);

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(r_total));
    for (int r = 1; r <= r_total; ++r) {
        Frame fr;
        fr.frame_index = r;
        fr.data = sample.data.middleCols((r - 1) * step, f);
        frames.push_back(std::move(fr));
    }
    return frames;
}

} // namespace safed
