#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace permseq {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt to_big(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
    if (!fits_u64(v)) return std::nullopt;
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const BigRational& v) { return v.get_str(); }

/// Parses a decimal integer, also accepting scientific forms such as "1e8" or "2.5e3"
/// when they denote an integer.
BigInt parse_integer(const std::string& text);

}  // namespace permseq
