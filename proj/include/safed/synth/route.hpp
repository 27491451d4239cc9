#pragma once
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "safed/core/types.hpp"
#include "safed/util/rng.hpp"

namespace safed {

struct RouteSegmentPlan {
    SegmentKind kind = SegmentKind::straight;
    double duration_s = 0.0;
    double curvature = 0.0;  // signed; scales the steering target, 0 on straights
};

struct RoutePlan {
    std::string map_id;
    std::vector<RouteSegmentPlan> segments;

    double total_duration_s() const {
        double d = 0.0;
        for (const auto& s : segments) d += s.duration_s;
        return d;
    }
    std::vector<Segment> to_segments() const {
        std::vector<Segment> out;
        double t = 0.0;
        for (const auto& s : segments) {
            out.push_back({t, t + s.duration_s, s.kind});
            t += s.duration_s;
        }
        return out;
    }
    double straight_fraction() const {
        double s = 0.0;
        for (const auto& seg : segments)
            if (is_straight(seg.kind)) s += seg.duration_s;
        return s / total_duration_s();
    }
};

struct RouteSpec {
    std::string map_id;             // one of the three built-in maps, or a label for custom routes
    double duration_s = 61.0;       // 61 s -> exactly 20 windows at 4 s / 3 s stride
    std::vector<RouteSegmentPlan> custom;  // when non-empty, used verbatim
};

namespace detail {

struct TemplateStep {
    SegmentKind kind;
    double dur_lo, dur_hi;
};

// Each map cycles a fixed segment pattern with randomized durations/curvatures.
// Urban turns dominate by construction; rural is straight-heavy; mixed balanced.
inline const std::vector<TemplateStep>& map_pattern(const std::string& name) {
    static const std::vector<TemplateStep> urban{{SegmentKind::straight, 2.0, 4.0},
                                                 {SegmentKind::turn_right, 4.0, 7.0},
                                                 {SegmentKind::turn_left, 4.0, 7.0},
                                                 {SegmentKind::u_turn, 5.0, 8.0}};
    static const std::vector<TemplateStep> rural{{SegmentKind::straight, 8.0, 12.0},
                                                 {SegmentKind::turn_right, 3.0, 5.0},
                                                 {SegmentKind::straight, 8.0, 12.0},
                                                 {SegmentKind::turn_left, 3.0, 5.0}};
    static const std::vector<TemplateStep> mixed{{SegmentKind::straight, 4.0, 7.0},
                                                 {SegmentKind::turn_right, 4.0, 7.0},
                                                 {SegmentKind::straight, 4.0, 7.0},
                                                 {SegmentKind::u_turn, 4.0, 7.0},
                                                 {SegmentKind::straight, 4.0, 7.0},
                                                 {SegmentKind::turn_left, 4.0, 7.0}};
    if (name == "urban") return urban;
    if (name == "rural") return rural;
    if (name == "mixed") return mixed;
    throw std::runtime_error("unknown map template: " + name + " (expected urban|rural|mixed)");
}

inline double draw_curvature(SegmentKind kind, Rng& rng) {
    std::uniform_real_distribution<double> gentle(0.35, 0.75);
    std::uniform_real_distribution<double> sharp(0.8, 1.0);
    switch (kind) {
        case SegmentKind::turn_left: return -gentle(rng);
        case SegmentKind::turn_right: return gentle(rng);
        case SegmentKind::u_turn:
            return (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.5 ? -1.0 : 1.0) * sharp(rng);
        default: return 0.0;
    }
}

} // namespace detail

// Deterministic in (spec, seed). Segments tile the requested duration exactly.
inline RoutePlan generate_route(const RouteSpec& spec, std::uint64_t seed) {
    RoutePlan plan;
    plan.map_id = spec.map_id;

    if (!spec.custom.empty()) {
        plan.segments = spec.custom;
        for (const auto& s : plan.segments)
            if (s.duration_s <= 0) throw std::runtime_error("custom route: non-positive segment duration");
        return plan;
    }

    const auto& pattern = detail::map_pattern(spec.map_id);
    if (spec.duration_s < 12.0)
        throw std::runtime_error("route duration too short to cover straight and turn segments");

    Rng rng = make_rng(seed, "route");
    double remaining = spec.duration_s;
    std::size_t step = 0;
    while (remaining > 1e-9) {
        const auto& st = pattern[step % pattern.size()];
        std::uniform_real_distribution<double> dur(st.dur_lo, st.dur_hi);
        double d = dur(rng);
        const double curvature = detail::draw_curvature(st.kind, rng);
        if (remaining - d < 1.5) d = remaining;  // last segment absorbs the remainder
        plan.segments.push_back({st.kind, d, curvature});
        remaining -= d;
        ++step;
    }

    bool has_straight = false, has_turn = false;
    for (const auto& s : plan.segments) {
        has_straight |= is_straight(s.kind);
        has_turn |= !is_straight(s.kind);
    }
    if (!has_straight || !has_turn)
        throw std::runtime_error("generated route lacks a straight or a turn segment");
    return plan;
}

} // namespace safed
