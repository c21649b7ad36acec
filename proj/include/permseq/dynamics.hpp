#pragma once

#include "permseq/bigint.hpp"
#include "permseq/perm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace permseq {

/// One period of a cycle, rotated to start at its minimum.
struct CycleRecord {
    BigInt min;
    BigInt max;
    std::uint64_t length = 0;
    std::uint64_t K = 0;  ///< elements not divisible by the class modulus
    std::uint64_t L = 0;  ///< elements divisible by the class modulus
    std::uint64_t m = 0;  ///< local maxima in cyclic order
    std::optional<std::vector<BigInt>> elements;
};

struct CycleFound {
    CycleRecord cycle;
    std::uint64_t entry_steps = 0;
};

struct Escaped {
    BigInt threshold_crossed;  ///< first element above the threshold once the m-floor was met
    std::uint64_t steps_taken = 0;
    std::uint64_t maxima_seen = 0;
    BigInt min_seen;  ///< smallest element visited
};

struct StepLimit {
    std::uint64_t steps = 0;
};

using TrajectoryOutcome = std::variant<CycleFound, Escaped, StepLimit>;

enum class Direction { forward, backward };

struct TrajectorySettings {
    BigInt escape_threshold{100'000'000};
    /// Escape additionally requires more than this many local maxima; unset = no requirement.
    std::optional<std::uint64_t> m_floor = 10;
    std::uint64_t step_limit = 10'000'000;
    bool keep_elements = true;
};

/// Iterates the map from x0 until the orbit closes, escapes, or hits the step limit.
///
/// Cycle closure is detected by return to x0: for a bijection the first
/// repeated element of an orbit is always its start, so no visited set is needed.
TrajectoryOutcome run_trajectory(const Mapping& map, const BigInt& x0, const TrajectorySettings& settings,
                                 Direction direction = Direction::forward);

/// Classifies one period of a cycle. Throws IntegrityError on repeated
/// elements and ParameterError on an empty list or zero modulus.
CycleRecord classify_cycle(std::span<const BigInt> elements, std::uint64_t modulus);

/// Number of positions i with x[i-1] < x[i] > x[i+1], indices taken cyclically.
std::uint64_t count_local_maxima(std::span<const BigInt> cyclic);
/// Positions i with x[i-1] > x[i] < x[i+1], indices taken cyclically.
std::vector<std::size_t> local_minima_positions(std::span<const BigInt> cyclic);

struct MultiplicationFactors {
    double left_right = 0;  ///< f1 = (d/b)^p (cd/ab)^(1-p)
    double right_left = 0;  ///< f2 = (b/d)^q (ab/cd)^(1-q)
    double product() const { return left_right * right_left; }
};

/// Average step factors when a fraction p of elements is 0 (mod b) and a
/// fraction q is 0 (mod d).
MultiplicationFactors multiplication_factors(const PabcdParams& params, double frac_zero_mod_b,
                                             double frac_zero_mod_d);

struct BranchStats {
    double frac_zero_mod_b = 0;
    double frac_zero_mod_d = 0;
    MultiplicationFactors factors;
};

BranchStats branch_stats(std::span<const BigInt> elements, const PabcdParams& params);

/// Iterates the map `steps` times from x0 and returns the visited elements (x0 included).
std::vector<BigInt> orbit_segment(const Mapping& map, const BigInt& x0, std::uint64_t steps,
                                  Direction direction = Direction::forward);

}  // namespace permseq
