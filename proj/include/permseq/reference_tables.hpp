#pragma once

#include "permseq/perm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permseq::reference {

/// A published number as printed: "126" or "2.3201e5".
struct Printed {
    std::string_view text;

    double value() const;
    /// One unit in the last printed digit (1 for plain integers).
    double unit() const;
    /// |x - value| <= unit.
    bool within_unit(double x) const;
    bool within_relative(double x, double rel) const;
};

struct FloorRow {
    int log10_x0;
    std::uint64_t p1322;
    std::uint64_t p2433;
};

struct CrossoverRef {
    std::uint64_t m;
    Printed x3;
    std::optional<Printed> l1, l2;
};

struct CycleRef {
    std::uint64_t min, max, length, m;
};

struct ConvergentRef {
    std::uint64_t p, q;
};

/// A published entry that recomputation does not reproduce.
///
/// erratum: the printed value is inconsistent with the surrounding data and
/// `computed` is taken as the corrected value. deviation: the printed value is
/// not reproduced and no correction is claimed. convention: the difference
/// comes from a definition that the published tables leave open.
struct Discrepancy {
    enum class Kind { erratum, deviation, convention };
    Kind kind;
    std::string_view table;
    std::string_view entry;  ///< lookup key, e.g. "P(2,4,3,3) m=20 L2"
    std::string_view published;
    std::string_view computed;
    std::string_view reason;
};

std::string_view kind_name(Discrepancy::Kind kind);

std::span<const FloorRow> floor_table();
/// Rows for P(1,3,2,2) or P(2,4,3,3); empty span for other parameters.
std::span<const CrossoverRef> crossover_table(const PabcdParams& p);
std::span<const ConvergentRef> convergents(const PabcdParams& p);
std::uint64_t max_partial_quotient();

std::span<const CycleRef> cycles_2433();
std::span<const CycleRef> cycles_collatz_simple();
/// The four extended generalizations of the Collatz permutation (rows 3-6).
std::vector<std::vector<CycleRef>> cycles_collatz_extended();
/// Cycles of the Collatz permutation itself (row 1), without the fixed point 0.
std::span<const CycleRef> cycles_collatz();

/// The nine short prime/composite cycles, written from their minimum.
std::vector<std::vector<std::uint64_t>> primecomp_short_cycles();
struct LengthRef {
    std::uint64_t through, length;
};
std::span<const LengthRef> primecomp_cycle_lengths();

std::span<const Discrepancy> discrepancies();
const Discrepancy* find_discrepancy(std::string_view table, std::string_view entry);

}  // namespace permseq::reference
