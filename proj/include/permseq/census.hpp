#pragma once

#include "permseq/dynamics.hpp"
#include "permseq/perm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permseq {

struct CensusSettings {
    TrajectorySettings trajectory{BigInt(100'000'000), 20, 10'000'000, true};
    /// Explore escaped seeds backwards as well, to key divergent classes by
    /// the minimum of the forward and backward segment.
    bool explore_backward = true;
};

struct CensusReport {
    std::string label;
    std::optional<PabcdParams> params;
    std::uint64_t x0 = 0;       ///< seeds are [domain_start, x0)
    std::uint64_t first_seed = 0;
    std::vector<CycleRecord> cycles;  ///< sorted by min, including the trivial fixed point (0)
    std::uint64_t divergent_min_count = 0;
    std::uint64_t divergent_seed_count = 0;
    std::uint64_t seeds_in_cycles = 0;
    std::uint64_t seeds_step_limited = 0;
    /// Escaped forward but not backward within the same thresholds.
    std::uint64_t one_sided_escapes = 0;
    std::vector<BigInt> divergent_minima;  ///< sorted class keys
    TrajectorySettings settings;

    /// Cycles other than the fixed point (0).
    std::vector<CycleRecord> nontrivial_cycles() const;
};

inline bool is_trivial_zero_cycle(const CycleRecord& c) { return c.length == 1 && sgn(c.min) == 0; }

/// Classifies every seed below x0 as in a cycle, escaped, or step-limited.
///
/// Seeds are processed in ascending order. Every element below x0 met on a
/// walk is tagged with its outcome, so later seeds already tagged are
/// accounted without iterating. Escaped walks are grouped into classes that
/// merge whenever two walks meet below x0; each class is keyed by the
/// smallest element witnessed.
CensusReport cycle_census(const Mapping& map, std::uint64_t x0, const CensusSettings& settings = {});

struct GeneralizationSummary {
    std::uint64_t rank = 0;
    std::size_t cycles = 0;  ///< excluding the fixed point (0)
    std::uint64_t max_cycle_length = 0;
    BigInt max_element;
    std::uint64_t divergent_min_count = 0;
};

/// Census of the first `first_n` proper generalizations (ranks 1..first_n).
/// Ranks run on `threads` workers; results come back in rank order.
std::vector<GeneralizationSummary> sweep_generalizations(const PabcdParams& base, GeneralizationMode mode,
                                                         std::uint64_t first_n, std::uint64_t x0,
                                                         const CensusSettings& settings, unsigned threads = 0);

struct DivergenceRatio {
    std::uint64_t classes = 0;
    std::uint64_t x0 = 0;
    BigRational ratio;
    double value() const { return ratio.get_d(); }
};

/// Distinct apparent divergent trajectories (keyed by minimum) per seed.
DivergenceRatio divergence_ratio(const Mapping& map, std::uint64_t x0, const CensusSettings& settings = {});

}  // namespace permseq
