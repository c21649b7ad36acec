#pragma once

#include "permseq/bigint.hpp"
#include "permseq/ccset.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace permseq {

/// Affine rule src_mod*n + src_res  ->  dst_mod*n + dst_res.
struct ResidueRule {
    std::uint64_t src_mod = 1;
    std::uint64_t src_res = 0;
    std::uint64_t dst_mod = 1;
    std::uint64_t dst_res = 0;

    ResidueClass source() const { return {src_mod, src_res}; }
    ResidueClass target() const { return {dst_mod, dst_res}; }
    ResidueRule inverted() const { return {dst_mod, dst_res, src_mod, src_res}; }

    friend bool operator==(const ResidueRule&, const ResidueRule&) = default;
};

/// Parameters of P(a,b,c,d).
struct PabcdParams {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    friend bool operator==(const PabcdParams&, const PabcdParams&) = default;
};

/// A finite rule list meant to define a bijection of the non-negative integers.
struct PermSpec {
    std::vector<ResidueRule> rules;
    std::string label;
    std::optional<PabcdParams> params;

    std::vector<ResidueClass> sources() const;
    std::vector<ResidueClass> targets() const;
};

struct BijectionReport {
    CCSetReport sources;
    CCSetReport targets;
    bool valid() const { return sources.valid && targets.valid; }
    std::string describe() const;
};

BijectionReport verify_bijection(const PermSpec& spec);

/// P(a,b,c,d): bn -> dn, then the ascending residues r != 0 (mod b) below ab
/// paired with the ascending residues s != 0 (mod d) below cd.
PermSpec make_pabcd(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

/// Rule list with sources and targets swapped.
PermSpec inverse(const PermSpec& spec);

enum class GeneralizationMode { simple, extended };

/// Reassigns the target classes of a P(a,b,c,d) spec.
///
/// In simple mode `order` has N = a(b-1) entries and source class r_i goes to
/// target s_{order[i]}; bn -> dn stays. In extended mode `order` has N + 1
/// entries over [dn, s_1, ..., s_N] and the source list is [bn, r_1, ..., r_N].
/// With `proper`, the identity (simple) or any order fixing bn -> dn
/// (extended) is rejected.
PermSpec generalize(const PermSpec& base, std::span<const std::size_t> order, GeneralizationMode mode,
                    bool proper = false);

/// Number of proper generalizations: N! - 1 (simple) or (N+1)! - N! (extended).
BigInt generalization_count(std::size_t n_residues, GeneralizationMode mode);

/// Target order for a generalization rank; rank 0 is the identity and ranks
/// 1..count follow lexicographic order of the proper orders.
std::vector<std::size_t> generalization_order(std::size_t n_residues, GeneralizationMode mode,
                                              std::uint64_t rank);

/// Convenience: make_pabcd followed by generalize with the ranked order.
PermSpec make_generalization(const PabcdParams& p, GeneralizationMode mode, std::uint64_t rank);

/// The extended class with f_a | a and f_c | c: f_a*b*n + j*b (j < f_a) and
/// ab*n + r (r != 0 mod b) on the source side, f_c*d*n + j*d (j < f_c) and
/// cd*n + s (s != 0 mod d) on the target side, paired in ascending order of
/// their smallest element.
PermSpec make_fafc(std::uint64_t a, std::uint64_t b, std::uint64_t f_a, std::uint64_t c, std::uint64_t d,
                   std::uint64_t f_c);

/// A bijection of (a subset of) the non-negative integers that the dynamics
/// and census code can iterate.
class Mapping {
public:
    virtual ~Mapping() = default;

    virtual BigInt apply(const BigInt& x) const = 0;
    virtual BigInt apply_inv(const BigInt& x) const = 0;

    /// 64-bit fast path; false means the result does not fit (or x is outside
    /// the fast range) and the caller must use the BigInt overload.
    virtual bool apply_fast(std::uint64_t x, std::uint64_t& out) const = 0;
    virtual bool apply_inv_fast(std::uint64_t x, std::uint64_t& out) const = 0;

    /// Modulus splitting elements into the K (not divisible) and L (divisible) counts.
    virtual std::uint64_t class_modulus() const = 0;
    /// Smallest element of the domain (0 for rule-based maps).
    virtual std::uint64_t domain_start() const { return 0; }
    virtual std::string label() const = 0;
};

/// Compiled, immutable residue-rule permutation.
class ResidueMap final : public Mapping {
public:
    /// Throws IntegrityError if the spec does not define a bijection.
    explicit ResidueMap(PermSpec spec);

    BigInt apply(const BigInt& x) const override;
    BigInt apply_inv(const BigInt& x) const override;
    bool apply_fast(std::uint64_t x, std::uint64_t& out) const override;
    bool apply_inv_fast(std::uint64_t x, std::uint64_t& out) const override;
    std::uint64_t class_modulus() const override { return class_modulus_; }
    std::string label() const override { return spec_.label; }

    const PermSpec& spec() const noexcept { return spec_; }

private:
    struct Side {
        std::vector<ResidueRule> rules;   // oriented so that src is the lookup side
        std::uint64_t lcm = 1;
        std::vector<std::uint32_t> table;  // residue mod lcm -> rule index (empty: linear scan)

        void build();
        const ResidueRule& find(std::uint64_t x) const;
        const ResidueRule& find(const BigInt& x) const;
    };

    static BigInt step(const Side& side, const BigInt& x);
    static bool step_fast(const Side& side, std::uint64_t x, std::uint64_t& out);

    PermSpec spec_;
    Side forward_;
    Side backward_;
    std::uint64_t class_modulus_ = 2;
};

/// Forward image of x under the spec (compiles the spec on every call).
BigInt apply(const PermSpec& spec, const BigInt& x);
BigInt apply_inv(const PermSpec& spec, const BigInt& x);

}  // namespace permseq
