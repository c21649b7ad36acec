#pragma once

#include "permseq/bounds.hpp"
#include "permseq/census.hpp"
#include "permseq/perm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permseq::tables {

/// A rounded cross-over: plain digits below 1e5, otherwise the exact root with
/// 5 significant digits ("2.3201e5").
std::string display(const BigInt& rounded, const PrecReal& exact);
/// All digits.
std::string display(const BigInt& value);

/// A rendered table with optional check results.
struct Table {
    std::string id;
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    bool checked = false;
    std::size_t mismatches = 0;
    std::size_t discrepancies = 0;  ///< documented errata/deviations/conventions hit
};

enum class Format { text, csv, json };

Format parse_format(const std::string& name);
std::string render(const Table& t, Format fmt);

struct Options {
    std::optional<PabcdParams> perm;   ///< restricts floor/x3/l1l2 to one permutation
    std::optional<BigInt> x0;          ///< census bound or numerical cycle floor
    std::vector<std::uint64_t> ms;     ///< m values for x3 / l1l2
    bool check = false;
    unsigned threads = 0;
};

/// Known ids: floor, x3, l1l2, cycles-2433, cycles-collatz-simple, cycles-collatz-ext.
const std::vector<std::string>& table_ids();
/// Throws ParseError for an unknown id.
Table build(const std::string& id, const Options& opts);

/// Census settings used for the published cycle tables: escape above 1e8
/// after more than 20 local maxima, 1e7 steps.
CensusSettings paper_census_settings();

/// (min, max, length) of the nontrivial cycles, sorted.
struct CycleKey {
    BigInt min, max;
    std::uint64_t length = 0;
    friend bool operator==(const CycleKey&, const CycleKey&) = default;
    friend bool operator<(const CycleKey& x, const CycleKey& y) {
        if (x.min != y.min) return x.min < y.min;
        if (x.max != y.max) return x.max < y.max;
        return x.length < y.length;
    }
};
std::vector<CycleKey> cycle_keys(const std::vector<CycleRecord>& cycles);

}  // namespace permseq::tables
