#pragma once

// Trajectory walker shared by run_trajectory and the census. The visitor
// sees every element that fits in 64 bits, in visiting order, excluding x0.

#include "permseq/dynamics.hpp"
#include "permseq/errors.hpp"

#include <algorithm>
#include <limits>

namespace permseq::detail {

/// Result of a walk before the cycle (if any) is classified.
struct WalkResult {
    enum class Kind { cycle, escaped, step_limit } kind = Kind::step_limit;
    std::uint64_t steps = 0;
    std::uint64_t maxima = 0;
    BigInt last;      ///< element at termination (threshold crossing for escapes)
    BigInt min_seen;
};

inline bool m_floor_met(const TrajectorySettings& s, std::uint64_t maxima) {
    return !s.m_floor || maxima > *s.m_floor;
}

template <typename Visitor>
WalkResult walk(const Mapping& map, const BigInt& x0, const TrajectorySettings& settings, Direction direction,
                Visitor&& visit) {
    if (sgn(x0) < 0) throw DomainError("run_trajectory: negative start " + x0.get_str());
    if (sgn(settings.escape_threshold) <= 0) throw ParameterError("run_trajectory: escape threshold must be positive");

    const bool fwd = direction == Direction::forward;
    WalkResult r;
    r.min_seen = x0;
    int last_dir = 0;
    auto record = [&](bool ascended) {
        const int dir = ascended ? 1 : -1;
        if (last_dir == 1 && dir == -1) ++r.maxima;
        last_dir = dir;
    };

    BigInt cur_big;
    bool big_phase = false;
    if (const auto small0 = to_u64(x0)) {
        const std::uint64_t start = *small0;
        const std::uint64_t threshold = fits_u64(settings.escape_threshold)
                                            ? *to_u64(settings.escape_threshold)
                                            : std::numeric_limits<std::uint64_t>::max();
        std::uint64_t cur = start;
        std::uint64_t lo = start;
        while (r.steps < settings.step_limit) {
            std::uint64_t next = 0;
            const bool ok = fwd ? map.apply_fast(cur, next) : map.apply_inv_fast(cur, next);
            if (!ok) {
                big_phase = true;
                cur_big = to_big(cur);
                break;
            }
            ++r.steps;
            if (next == start) {
                r.kind = WalkResult::Kind::cycle;
                r.last = x0;
                r.min_seen = to_big(lo);
                return r;
            }
            visit(next);
            record(next > cur);
            cur = next;
            lo = std::min(lo, cur);
            if (cur > threshold && m_floor_met(settings, r.maxima)) {
                r.kind = WalkResult::Kind::escaped;
                r.last = to_big(cur);
                r.min_seen = to_big(lo);
                return r;
            }
        }
        r.min_seen = to_big(lo);
        if (!big_phase) {
            r.last = to_big(cur);
            return r;
        }
    } else {
        cur_big = x0;
    }

    while (r.steps < settings.step_limit) {
        BigInt next = fwd ? map.apply(cur_big) : map.apply_inv(cur_big);
        ++r.steps;
        if (next == x0) {
            r.kind = WalkResult::Kind::cycle;
            r.last = x0;
            return r;
        }
        record(next > cur_big);
        cur_big = std::move(next);
        if (cur_big < r.min_seen) r.min_seen = cur_big;
        if (cur_big > settings.escape_threshold && m_floor_met(settings, r.maxima)) {
            r.kind = WalkResult::Kind::escaped;
            r.last = cur_big;
            return r;
        }
    }
    r.last = cur_big;
    return r;
}

}  // namespace permseq::detail
