#pragma once

#include "permseq/bigint.hpp"

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace permseq {

inline constexpr unsigned kDefaultPrecision = 256;

/// Real number carried at an explicit binary precision, backed by MPFR.
///
/// Results of binary operations take the larger operand precision. All
/// elementary functions are correctly rounded (round-to-nearest) by MPFR.
class PrecReal {
public:
    explicit PrecReal(unsigned precision = kDefaultPrecision);
    PrecReal(double v, unsigned precision = kDefaultPrecision);
    PrecReal(long v, unsigned precision = kDefaultPrecision);
    PrecReal(int v, unsigned precision = kDefaultPrecision) : PrecReal(static_cast<long>(v), precision) {}
    PrecReal(const BigInt& v, unsigned precision = kDefaultPrecision);
    PrecReal(const BigRational& v, unsigned precision = kDefaultPrecision);
    PrecReal(const std::string& decimal, unsigned precision = kDefaultPrecision);

    PrecReal(const PrecReal& other);
    PrecReal(PrecReal&& other) noexcept;
    PrecReal& operator=(const PrecReal& other);
    PrecReal& operator=(PrecReal&& other) noexcept;
    ~PrecReal();

    unsigned precision() const noexcept { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    /// Same value rounded to a new precision.
    PrecReal with_precision(unsigned bits) const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits.
    std::string str(int digits = 20) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent e with 0.5 <= |x| / 2^e < 1; 0 for zero.
    long exponent() const;

    BigInt floor() const;
    BigInt ceil() const;
    /// Exact rational value of the binary float.
    BigRational to_rational() const;

    PrecReal& operator+=(const PrecReal& o);
    PrecReal& operator-=(const PrecReal& o);
    PrecReal& operator*=(const PrecReal& o);
    PrecReal& operator/=(const PrecReal& o);

    friend PrecReal operator+(PrecReal a, const PrecReal& b) { return a += b; }
    friend PrecReal operator-(PrecReal a, const PrecReal& b) { return a -= b; }
    friend PrecReal operator*(PrecReal a, const PrecReal& b) { return a *= b; }
    friend PrecReal operator/(PrecReal a, const PrecReal& b) { return a /= b; }
    PrecReal operator-() const;

    friend bool operator==(const PrecReal& a, const PrecReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const PrecReal& a, const PrecReal& b);

    mpfr_srcptr raw() const noexcept { return v_; }
    mpfr_ptr raw() noexcept { return v_; }

private:
    mpfr_t v_;
};

PrecReal abs(const PrecReal& x);
PrecReal exp(const PrecReal& x);
PrecReal log(const PrecReal& x);
PrecReal pow(const PrecReal& base, const PrecReal& exponent);
PrecReal sqrt(const PrecReal& x);
PrecReal max(const PrecReal& a, const PrecReal& b);
PrecReal min(const PrecReal& a, const PrecReal& b);

/// Natural logarithm of a positive rational, within 1 ulp at `precision` bits.
/// Throws DomainError for x <= 0.
PrecReal hp_log(const BigRational& x, unsigned precision = kDefaultPrecision);

/// One continued-fraction convergent p/q with partial quotient a.
struct Convergent {
    std::size_t index = 0;
    BigInt p;
    BigInt q;
    BigInt a;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Convergents of an exact rational: stops when the expansion terminates or
/// after the first convergent with q > q_limit.
std::vector<Convergent> cf_expand(const BigRational& rho, const BigInt& q_limit);

/// Convergents of a real known to within `ulp_radius` ulps of its stored value.
///
/// Every partial quotient returned is shared by all reals in the enclosure
/// [rho - r, rho + r]; if a floor becomes ambiguous before the list reaches
/// the first q > q_limit, a PrecisionError is thrown. ulp_radius = 0 treats
/// rho as exact.
std::vector<Convergent> cf_expand(const PrecReal& rho, const BigInt& q_limit, unsigned ulp_radius = 16);

/// Largest a_n over the convergents with q_n <= q_limit.
BigInt max_partial_quotient(const PrecReal& rho, const BigInt& q_limit, unsigned ulp_radius = 16);

using RealFunction = std::function<PrecReal(const PrecReal&)>;

struct CrossoverOptions {
    PrecReal scan_ceiling{PrecReal(1e300)};
    double rel_tol = 1e-12;
    int max_bisections = 200;
};

/// Largest x >= x_min where two decaying functions cross.
///
/// Both callables return the natural logarithm of the function they stand
/// for. The scan doubles x from x_min up to `scan_ceiling` and keeps the last
/// bracket with a sign change of ln_lhs - ln_rhs, then bisects it. Throws
/// NoCrossingError when no sign change is seen.
PrecReal solve_crossover(const RealFunction& ln_lhs, const RealFunction& ln_rhs, const PrecReal& x_min,
                         const CrossoverOptions& options = {});

}  // namespace permseq
