#include "permseq/prime_composite.hpp"

#include "permseq/errors.hpp"

#include <algorithm>
#include <bit>

namespace permseq {

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(std::max<std::uint64_t>(limit, 16)) {
    const std::uint64_t words = limit_ / 64 + 1;
    bits_.assign(words, ~std::uint64_t{0});
    bits_[0] &= ~std::uint64_t{3};  // 0 and 1
    for (std::uint64_t p = 2; p * p <= limit_; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint64_t m = p * p; m <= limit_; m += p) bits_[m / 64] &= ~(std::uint64_t{1} << (m % 64));
    }
    // Clear bits past the limit so counts stay exact.
    const std::uint64_t tail = (limit_ % 64) + 1;
    if (tail < 64) bits_.back() &= (std::uint64_t{1} << tail) - 1;
    counts_.assign(words + 1, 0);
    for (std::uint64_t i = 0; i < words; ++i) {
        counts_[i + 1] = counts_[i] + static_cast<std::uint32_t>(std::popcount(bits_[i]));
    }
}

bool PrimeSieve::is_prime(std::uint64_t x) const {
    if (x > limit_) throw ResourceError("prime sieve: " + std::to_string(x) + " beyond limit " + std::to_string(limit_));
    return (bits_[x / 64] >> (x % 64)) & 1;
}

std::uint64_t PrimeSieve::pi(std::uint64_t x) const {
    if (x > limit_) throw ResourceError("prime sieve: " + std::to_string(x) + " beyond limit " + std::to_string(limit_));
    const std::uint64_t w = x / 64;
    const std::uint64_t b = x % 64;
    const std::uint64_t mask = b == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (b + 1)) - 1);
    return counts_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
}

std::uint64_t PrimeSieve::nth_prime(std::uint64_t n) const {
    if (n == 0) throw DomainError("nth_prime: index starts at 1");
    if (n > counts_.back()) throw ResourceError("prime sieve: prime #" + std::to_string(n) + " beyond limit");
    // Word containing the n-th set bit, then scan inside it.
    auto it = std::lower_bound(counts_.begin(), counts_.end(), static_cast<std::uint32_t>(n));
    const std::uint64_t w = static_cast<std::uint64_t>(it - counts_.begin()) - 1;
    std::uint64_t need = n - counts_[w];
    std::uint64_t word = bits_[w];
    for (;;) {
        const int bit = std::countr_zero(word);
        if (--need == 0) return w * 64 + static_cast<std::uint64_t>(bit);
        word &= word - 1;
    }
}

std::uint64_t PrimeSieve::nth_composite(std::uint64_t n) const {
    if (n == 0) throw DomainError("nth_composite: index starts at 1");
    // Composites <= x number x - pi(x) - 1; find the smallest x with count n.
    std::uint64_t lo = 4, hi = limit_;
    if (hi - pi(hi) - 1 < n) throw ResourceError("prime sieve: composite #" + std::to_string(n) + " beyond limit");
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (mid - pi(mid) - 1 >= n) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

PrimeCompositeMap::PrimeCompositeMap(std::uint64_t initial_limit, std::uint64_t max_limit)
    : max_limit_(max_limit), sieve_(std::make_shared<const PrimeSieve>(std::min(initial_limit, max_limit))) {}

std::shared_ptr<const PrimeSieve> PrimeCompositeMap::snapshot() const {
    std::lock_guard lock(mutex_);
    return sieve_;
}

std::uint64_t PrimeCompositeMap::sieve_limit() const { return snapshot()->limit(); }

void PrimeCompositeMap::grow(std::uint64_t needed) const {
    std::lock_guard lock(mutex_);
    if (sieve_->limit() >= needed) return;
    if (sieve_->limit() >= max_limit_) {
        throw ResourceError("prime/composite map: sieve would exceed max limit " + std::to_string(max_limit_));
    }
    std::uint64_t next = sieve_->limit();
    while (next < needed) next *= 2;
    sieve_ = std::make_shared<const PrimeSieve>(std::min(next, max_limit_));
}

template <typename Fn>
std::uint64_t PrimeCompositeMap::with_growth(Fn fn) const {
    for (;;) {
        auto s = snapshot();
        try {
            return fn(*s);
        } catch (const ResourceError&) {
            grow(s->limit() * 2);
        }
    }
}

std::uint64_t PrimeCompositeMap::forward(std::uint64_t x) const {
    if (x == 0) throw DomainError("prime/composite map is defined on positive integers");
    if (x == 1) return 1;
    return with_growth([x](const PrimeSieve& s) { return x % 2 == 0 ? s.nth_prime(x / 2) : s.nth_composite(x / 2); });
}

std::uint64_t PrimeCompositeMap::backward(std::uint64_t x) const {
    if (x == 0) throw DomainError("prime/composite map is defined on positive integers");
    if (x == 1) return 1;
    return with_growth([x](const PrimeSieve& s) {
        const std::uint64_t p = s.pi(x);
        return s.is_prime(x) ? 2 * p : 2 * (x - p - 1) + 1;
    });
}

BigInt PrimeCompositeMap::apply(const BigInt& x) const {
    const auto v = to_u64(x);
    if (!v) throw ResourceError("prime/composite map: " + x.get_str() + " beyond 64-bit range");
    return to_big(forward(*v));
}

BigInt PrimeCompositeMap::apply_inv(const BigInt& x) const {
    const auto v = to_u64(x);
    if (!v) throw ResourceError("prime/composite map: " + x.get_str() + " beyond 64-bit range");
    return to_big(backward(*v));
}

bool PrimeCompositeMap::apply_fast(std::uint64_t x, std::uint64_t& out) const {
    out = forward(x);
    return true;
}

bool PrimeCompositeMap::apply_inv_fast(std::uint64_t x, std::uint64_t& out) const {
    out = backward(x);
    return true;
}

std::shared_ptr<PrimeCompositeMap> prime_composite_perm(std::uint64_t limit) {
    return std::make_shared<PrimeCompositeMap>(limit, std::max<std::uint64_t>(limit, 1ULL << 32));
}

}  // namespace permseq
