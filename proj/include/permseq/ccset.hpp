#pragma once

#include "permseq/bigint.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace permseq {

/// The residue class { modulus * n + residue : n >= 0 }.
struct ResidueClass {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;

    bool contains(std::uint64_t x) const { return x % modulus == residue; }
    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

enum class CoverDefect { none, empty, uncovered, double_covered };

struct CCSetReport {
    bool valid = false;
    BigRational density_sum;  ///< sum of 1/modulus, exact
    std::uint64_t lcm = 0;
    CoverDefect defect = CoverDefect::empty;
    /// Smallest residue mod lcm exhibiting the defect.
    std::optional<std::uint64_t> witness;

    std::string describe() const;
};

inline constexpr std::uint64_t kDefaultLcmCeiling = 1'000'000'000'000ULL;

/// Checks that the classes cover every non-negative integer exactly once.
///
/// Disjoint classes whose densities sum to exactly 1 are an exact cover, so
/// the check is pairwise disjointness plus the rational sum; a witness is only
/// searched for when the cover fails. Throws ParameterError for a zero modulus
/// or unreduced residue and ResourceError when the lcm exceeds `lcm_ceiling`.
CCSetReport ccset_validate(std::span<const ResidueClass> classes,
                           std::uint64_t lcm_ceiling = kDefaultLcmCeiling);

}  // namespace permseq
