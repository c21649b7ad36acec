#pragma once

#include "permseq/perm.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace permseq {

/// A permutation chosen by a textual selector:
///
///   pabcd:a,b,c,d            pabcd:a,b,c,d/simple:rank    pabcd:a,b,c,d/ext:rank
///   fafc:a,b,fa,c,d,fc       primecomp                    file:path.json
struct Selection {
    std::string text;
    std::shared_ptr<const Mapping> map;
    std::optional<PermSpec> spec;         ///< empty for primecomp
    std::optional<PabcdParams> params;    ///< parameters of the (possibly inverted) base
    std::optional<GeneralizationMode> mode;
    bool inverted = false;
};

/// Throws ParseError (with the offending character position) on bad syntax;
/// ParameterError and IntegrityError from construction pass through. With
/// `compile` false, rule-based selections leave `map` empty, so rule lists
/// that are not bijections can still be inspected.
Selection parse_selector(std::string_view text, bool inverse = false, bool compile = true);

/// Mapping with forward and backward directions swapped.
class InverseMapping final : public Mapping {
public:
    explicit InverseMapping(std::shared_ptr<const Mapping> base) : base_(std::move(base)) {}
    BigInt apply(const BigInt& x) const override { return base_->apply_inv(x); }
    BigInt apply_inv(const BigInt& x) const override { return base_->apply(x); }
    bool apply_fast(std::uint64_t x, std::uint64_t& out) const override { return base_->apply_inv_fast(x, out); }
    bool apply_inv_fast(std::uint64_t x, std::uint64_t& out) const override { return base_->apply_fast(x, out); }
    std::uint64_t class_modulus() const override { return base_->class_modulus(); }
    std::uint64_t domain_start() const override { return base_->domain_start(); }
    std::string label() const override { return "inv(" + base_->label() + ")"; }

private:
    std::shared_ptr<const Mapping> base_;
};

/// Escape m-floor used when none is given: 10 for P(1,3,2,2) and its inverse,
/// 20 for P(2,4,3,3), its inverse and every generalization, unset otherwise.
std::optional<std::uint64_t> default_m_floor(const Selection& sel);

}  // namespace permseq
