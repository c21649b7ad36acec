#include "permseq/ccset.hpp"

#include "permseq/errors.hpp"

#include <numeric>

namespace permseq {

std::string CCSetReport::describe() const {
    std::string s = valid ? "valid" : "invalid";
    s += ", sum 1/a_i = " + density_sum.get_str();
    switch (defect) {
        case CoverDefect::none:
            break;
        case CoverDefect::empty:
            s += ", empty set";
            break;
        case CoverDefect::uncovered:
            s += ", uncovered residue " + std::to_string(*witness) + " (mod " + std::to_string(lcm) + ")";
            break;
        case CoverDefect::double_covered:
            s += ", double-covered residue " + std::to_string(*witness) + " (mod " + std::to_string(lcm) + ")";
            break;
    }
    return s;
}

namespace {

// Smallest x >= 0 with x = r1 (mod m1) and x = r2 (mod m2), given that a solution exists.
std::uint64_t crt_pair(std::uint64_t m1, std::uint64_t r1, std::uint64_t m2, std::uint64_t r2) {
    // x = r1 + m1 * t, m1 * t = r2 - r1 (mod m2)
    BigInt g, s, t;
    const BigInt M1 = to_big(m1), M2 = to_big(m2);
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), M1.get_mpz_t(), M2.get_mpz_t());
    const BigInt mod = M2 / g;
    BigInt k = (to_big(r2) - to_big(r1)) / g * s;
    mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), mod.get_mpz_t());
    return *to_u64(to_big(r1) + M1 * k);
}

}  // namespace

CCSetReport ccset_validate(std::span<const ResidueClass> classes, std::uint64_t lcm_ceiling) {
    CCSetReport report;
    report.density_sum = 0;
    if (classes.empty()) return report;

    std::uint64_t lcm = 1;
    for (const auto& c : classes) {
        if (c.modulus == 0) throw ParameterError("ccset_validate: modulus must be >= 1");
        if (c.residue >= c.modulus) {
            throw ParameterError("ccset_validate: residue " + std::to_string(c.residue) + " not reduced mod " +
                                 std::to_string(c.modulus));
        }
        report.density_sum += BigRational(1, c.modulus);
        const std::uint64_t g = std::gcd(lcm, c.modulus);
        const unsigned __int128 next = static_cast<unsigned __int128>(lcm / g) * c.modulus;
        if (next > lcm_ceiling) {
            throw ResourceError("ccset_validate: lcm of moduli exceeds ceiling " + std::to_string(lcm_ceiling));
        }
        lcm = static_cast<std::uint64_t>(next);
    }
    report.density_sum.canonicalize();
    report.lcm = lcm;

    std::optional<std::uint64_t> overlap;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            const auto& a = classes[i];
            const auto& b = classes[j];
            const std::uint64_t g = std::gcd(a.modulus, b.modulus);
            if (a.residue % g != b.residue % g) continue;
            const std::uint64_t x = crt_pair(a.modulus, a.residue, b.modulus, b.residue);
            if (!overlap || x < *overlap) overlap = x;
        }
    }
    if (overlap) {
        report.defect = CoverDefect::double_covered;
        report.witness = overlap;
        return report;
    }
    if (report.density_sum == 1) {
        report.valid = true;
        report.defect = CoverDefect::none;
        return report;
    }
    // Disjoint with density < 1: some residue below lcm is missed.
    report.defect = CoverDefect::uncovered;
    for (std::uint64_t x = 0; x < lcm; ++x) {
        bool hit = false;
        for (const auto& c : classes) {
            if (c.contains(x)) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            report.witness = x;
            break;
        }
    }
    return report;
}

}  // namespace permseq
