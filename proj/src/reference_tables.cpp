#include "permseq/reference_tables.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace permseq::reference {

double Printed::value() const { return std::strtod(std::string(text).c_str(), nullptr); }

double Printed::unit() const {
    const auto e = text.find('e');
    if (e == std::string_view::npos) return 1.0;
    const auto dot = text.find('.');
    const long decimals = dot == std::string_view::npos || dot > e ? 0 : static_cast<long>(e - dot - 1);
    const long exponent = std::strtol(std::string(text.substr(e + 1)).c_str(), nullptr, 10);
    return std::pow(10.0, static_cast<double>(exponent - decimals));
}

bool Printed::within_unit(double x) const { return std::fabs(x - value()) <= unit() * (1 + 1e-9); }

bool Printed::within_relative(double x, double rel) const { return std::fabs(x - value()) <= rel * std::fabs(value()); }

namespace {

constexpr std::array<FloorRow, 8> kFloor{{
    {3, 5, 2},
    {4, 17, 2},
    {5, 22, 9},
    {6, 127, 52},
    {7, 276, 52},
    {8, 276, 113},
    {9, 6475, 113},
    {10, 13226, 2651},
}};

const std::array<CrossoverRef, 9> kCross1322{{
    {1, {"126"}, Printed{"10"}, Printed{"16"}},
    {2, {"1241"}, Printed{"122"}, Printed{"162"}},
    {3, {"8171"}, Printed{"875"}, Printed{"1085"}},
    {4, {"45588"}, Printed{"5120"}, Printed{"6103"}},
    {5, {"2.3201e5"}, Printed{"26893"}, Printed{"31240"}},
    {10, {"4.2643e8"}, Printed{"5.3270e7"}, Printed{"5.8249e7"}},
    {20, {"4.9668e14"}, Printed{"6.5093e13"}, Printed{"6.8249e13"}},
    {50, {"1.1449e32"}, std::nullopt, std::nullopt},
    {100, {"2.2665e60"}, std::nullopt, std::nullopt},
}};

// L2 for m = 20 is printed as 7.034e13 (see discrepancies).
const std::array<CrossoverRef, 9> kCross2433{{
    {1, {"88"}, Printed{"9"}, Printed{"12"}},
    {2, {"754"}, Printed{"84"}, Printed{"107"}},
    {3, {"4422"}, Printed{"517"}, Printed{"625"}},
    {4, {"22142"}, Printed{"2661"}, Printed{"3124"}},
    {5, {"1.0150e5"}, Printed{"12437"}, Printed{"14307"}},
    {10, {"1.1314e8"}, Printed{"1.4561e7"}, Printed{"1.5903e7"}},
    {20, {"5.0142e13"}, Printed{"6.676e12"}, Printed{"7.034e13"}},
    {50, {"6.6686e29"}, std::nullopt, std::nullopt},
    {100, {"1.1640e56"}, std::nullopt, std::nullopt},
}};

constexpr std::array<ConvergentRef, 9> kConv1322{{
    {3, 2}, {7, 5}, {24, 17}, {31, 22}, {179, 127}, {389, 276}, {9126, 6475}, {18641, 13226}, {46408, 32927},
}};

constexpr std::array<ConvergentRef, 8> kConv2433{{
    {5, 2}, {17, 7}, {22, 9}, {127, 52}, {276, 113}, {6475, 2651}, {13226, 5415}, {32927, 13481},
}};

constexpr std::array<CycleRef, 12> kCycles2433{{
    {1, 1, 1, 0},
    {2, 2, 1, 0},
    {3, 4, 2, 1},
    {5, 5, 1, 0},
    {6, 8, 3, 1},
    {9, 16, 7, 1},
    {15, 32, 14, 3},
    {27, 176, 51, 10},
    {33, 52, 7, 2},
    {90, 1972, 93, 19},
    {213, 700, 31, 7},
    {645, 1612, 31, 8},
}};

constexpr std::array<CycleRef, 8> kCollatzSimple{{
    {1, 3, 3, 1},
    {4, 27, 11, 2},
    {5, 5, 1, 0},
    {10, 15, 2, 1},
    {14, 21, 3, 1},
    {16, 261, 34, 8},
    {20, 45, 5, 1},
    {220, 555, 12, 4},
}};

constexpr std::array<CycleRef, 4> kCollatz{{
    {1, 1, 1, 0},
    {2, 3, 2, 1},
    {4, 9, 5, 2},
    {44, 111, 12, 4},
}};

constexpr std::array<LengthRef, 4> kPrimeLengths{{{18, 22}, {62, 3}, {84, 3}, {92, 6}}};

using Kind = Discrepancy::Kind;

constexpr std::array<Discrepancy, 6> kDiscrepancies{{
    {Kind::erratum, "floor", "P(2,4,3,3) X0=1e3", "2", "1",
     "q=2 needs (2+7)*2 = 18 <= T, but T = 9.19 at X0 = 1e3; keeping q=7 excluded at X0 = 1e4 (T = 91.9 < 112) "
     "rules out any T linear in X0 that admits q=2 at 1e3"},
    {Kind::erratum, "l1l2", "P(2,4,3,3) m=20 L2", "7.034e13", "7.034e12",
     "exponent misprint: L2 lies below x3(20) = 5.0142e13 and above L1(20) = 6.676e12"},
    {Kind::erratum, "cycles-collatz-ext", "(6,11,*)", "(6,11,1,1)", "(6,11,2,1)",
     "a cycle with distinct minimum 6 and maximum 11 has at least two elements; the cycle is (6,11)"},
    {Kind::convention, "cycles-collatz", "(4,9,5)", "m=2", "m=1",
     "(4,6,9,7,5) has one cyclic local maximum"},
    {Kind::convention, "rhin", "P(2,4,3,3) c_add", "1.77", "2.2330",
     "the printed x3 column is reproduced by ln(3*beta/(alpha-eps) + 2) = 2.2330 from H = 3K+2L; 1.77 does not "
     "reproduce it"},
    {Kind::deviation, "divergence", "P(2,4,3,3) ratio", "0.12", "0.0158",
     "minimum-keyed classes give 0.0158 at X0 = 1e5, stable across escape thresholds and merge rules and close to "
     "the mean log growth per step (0.0164); P(1,3,2,2) gives 0.0500 against 0.05"},
}};

}  // namespace

std::span<const FloorRow> floor_table() { return kFloor; }

std::span<const CrossoverRef> crossover_table(const PabcdParams& p) {
    if (p == PabcdParams{1, 3, 2, 2}) return kCross1322;
    if (p == PabcdParams{2, 4, 3, 3}) return kCross2433;
    return {};
}

std::span<const ConvergentRef> convergents(const PabcdParams& p) {
    if (p == PabcdParams{1, 3, 2, 2}) return kConv1322;
    if (p == PabcdParams{2, 4, 3, 3}) return kConv2433;
    return {};
}

std::uint64_t max_partial_quotient() { return 55; }

std::span<const CycleRef> cycles_2433() { return kCycles2433; }
std::span<const CycleRef> cycles_collatz_simple() { return kCollatzSimple; }
std::span<const CycleRef> cycles_collatz() { return kCollatz; }

std::vector<std::vector<CycleRef>> cycles_collatz_extended() {
    return {
        {{0, 1, 2, 1}, {2, 7, 5, 1}, {42, 109, 12, 4}},
        {{0, 5, 5, 1}, {40, 107, 12, 4}},
        {{0, 7, 6, 1}, {5, 5, 1, 0}, {12, 19, 2, 1}, {26, 61, 5, 1}, {140, 5215, 94, 26}, {306, 775, 12, 4}},
        // printed as (6,11,1,1)
        {{1, 1, 1, 0}, {0, 23, 11, 2}, {6, 11, 2, 1}, {10, 17, 3, 1}, {12, 257, 34, 8}, {16, 41, 5, 1},
         {216, 551, 12, 4}},
    };
}

std::vector<std::vector<std::uint64_t>> primecomp_short_cycles() {
    return {{1}, {2}, {3, 4}, {5, 6}, {7, 8}, {9}, {10, 11}, {12, 13}, {14, 17, 15}};
}

std::span<const LengthRef> primecomp_cycle_lengths() { return kPrimeLengths; }

std::span<const Discrepancy> discrepancies() { return kDiscrepancies; }

const Discrepancy* find_discrepancy(std::string_view table, std::string_view entry) {
    for (const auto& d : kDiscrepancies) {
        if (d.table == table && d.entry == entry) return &d;
    }
    return nullptr;
}

std::string_view kind_name(Discrepancy::Kind kind) {
    switch (kind) {
        case Kind::erratum:
            return "erratum";
        case Kind::deviation:
            return "deviation";
        case Kind::convention:
            return "convention";
    }
    return "?";
}

}  // namespace permseq::reference
