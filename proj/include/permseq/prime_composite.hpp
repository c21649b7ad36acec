#pragma once

#include "permseq/perm.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace permseq {

/// Sieve of Eratosthenes up to `limit` with prime-count prefix sums.
class PrimeSieve {
public:
    explicit PrimeSieve(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    bool is_prime(std::uint64_t x) const;
    /// Number of primes <= x.
    std::uint64_t pi(std::uint64_t x) const;
    /// n-th prime (P(1) = 2); ResourceError if beyond the sieve.
    std::uint64_t nth_prime(std::uint64_t n) const;
    /// n-th composite (C(1) = 4); ResourceError if beyond the sieve.
    std::uint64_t nth_composite(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> bits_;    // bit x set <=> x prime
    std::vector<std::uint32_t> counts_;  // primes below 64*i
};

/// 1 <-> 1, 2n <-> P(n), 2n+1 <-> C(n) on the positive integers.
///
/// The sieve grows geometrically when an evaluation runs past it, up to
/// `max_limit`; evaluations beyond that throw ResourceError. Growth replaces
/// the snapshot under a mutex, so concurrent readers always see a complete sieve.
class PrimeCompositeMap final : public Mapping {
public:
    explicit PrimeCompositeMap(std::uint64_t initial_limit = 1u << 16, std::uint64_t max_limit = 1ULL << 32);

    BigInt apply(const BigInt& x) const override;
    BigInt apply_inv(const BigInt& x) const override;
    bool apply_fast(std::uint64_t x, std::uint64_t& out) const override;
    bool apply_inv_fast(std::uint64_t x, std::uint64_t& out) const override;
    std::uint64_t class_modulus() const override { return 2; }
    std::uint64_t domain_start() const override { return 1; }
    std::string label() const override { return "primecomp"; }

    std::uint64_t forward(std::uint64_t x) const;
    std::uint64_t backward(std::uint64_t x) const;
    std::uint64_t sieve_limit() const;

private:
    std::shared_ptr<const PrimeSieve> snapshot() const;
    void grow(std::uint64_t needed) const;

    template <typename Fn>
    std::uint64_t with_growth(Fn fn) const;

    std::uint64_t max_limit_;
    mutable std::mutex mutex_;
    mutable std::shared_ptr<const PrimeSieve> sieve_;
};

/// Builds the prime/composite permutation with a sieve covering `limit`.
std::shared_ptr<PrimeCompositeMap> prime_composite_perm(std::uint64_t limit = 1u << 16);

}  // namespace permseq
