#include "permseq/numerics.hpp"

#include "permseq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>

namespace permseq {

BigInt parse_integer(const std::string& text) {
    std::string t;
    for (char ch : text) {
        if (ch != '_' && ch != '\'') t.push_back(ch);
    }
    if (t.empty()) throw ParseError("empty integer", 0);
    auto epos = t.find_first_of("eE");
    if (epos == std::string::npos && t.find('.') == std::string::npos) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i])) && !(i == 0 && (t[i] == '-' || t[i] == '+'))) {
                throw ParseError("invalid integer '" + text + "'", i);
            }
        }
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    }
    // Scientific form: mantissa digits with an optional point, times 10^exp.
    std::string mant = t.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
        const std::string e = t.substr(epos + 1);
        char* end = nullptr;
        exp10 = std::strtol(e.c_str(), &end, 10);
        if (e.empty() || *end != '\0') throw ParseError("invalid exponent in '" + text + "'", epos + 1);
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        negative = mant[0] == '-';
        mant.erase(0, 1);
    }
    std::string digits;
    long frac = 0;
    bool seen_point = false;
    for (std::size_t i = 0; i < mant.size(); ++i) {
        char ch = mant[i];
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            if (seen_point) ++frac;
        } else {
            throw ParseError("invalid number '" + text + "'", i);
        }
    }
    if (digits.empty()) throw ParseError("invalid number '" + text + "'", 0);
    BigRational value{BigInt(digits)};
    long shift = exp10 - frac;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0) {
        value *= scale;
    } else {
        value /= scale;
    }
    value.canonicalize();
    if (value.get_den() != 1) throw ParseError("'" + text + "' is not an integer", 0);
    BigInt out = value.get_num();
    return negative ? BigInt(-out) : out;
}

// ---------------------------------------------------------------------------
// PrecReal

PrecReal::PrecReal(unsigned precision) {
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
}

PrecReal::PrecReal(double v, unsigned precision) {
    mpfr_init2(v_, precision);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

PrecReal::PrecReal(long v, unsigned precision) {
    mpfr_init2(v_, precision);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

PrecReal::PrecReal(const BigInt& v, unsigned precision) {
    mpfr_init2(v_, precision);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

PrecReal::PrecReal(const BigRational& v, unsigned precision) {
    mpfr_init2(v_, precision);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

PrecReal::PrecReal(const std::string& decimal, unsigned precision) {
    mpfr_init2(v_, precision);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw ParseError("invalid real '" + decimal + "'", 0);
    }
}

PrecReal::PrecReal(const PrecReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

PrecReal::PrecReal(PrecReal&& other) noexcept {
    // Leave `other` valid (tiny precision) so its destructor stays safe.
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

PrecReal& PrecReal::operator=(const PrecReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

PrecReal& PrecReal::operator=(PrecReal&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

PrecReal::~PrecReal() { mpfr_clear(v_); }

PrecReal PrecReal::with_precision(unsigned bits) const {
    PrecReal r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string PrecReal::str(int digits) const {
    if (!is_finite()) {
        if (mpfr_nan_p(v_)) return "nan";
        return sign() < 0 ? "-inf" : "inf";
    }
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::unique_ptr<char, void (*)(char*)> guard(buf, [](char* p) { mpfr_free_str(p); });
    return std::string(buf);
}

long PrecReal::exponent() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

BigInt PrecReal::floor() const {
    if (!is_finite()) throw DomainError("floor of a non-finite value");
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDD);
    return r;
}

BigInt PrecReal::ceil() const {
    if (!is_finite()) throw DomainError("ceil of a non-finite value");
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDU);
    return r;
}

BigRational PrecReal::to_rational() const {
    if (!is_finite()) throw DomainError("rational value of a non-finite value");
    BigRational r;
    mpfr_get_q(r.get_mpq_t(), v_);
    return r;
}

namespace {

unsigned joint_precision(mpfr_srcptr a, mpfr_srcptr b) {
    return static_cast<unsigned>(std::max(mpfr_get_prec(a), mpfr_get_prec(b)));
}

template <typename Op>
PrecReal& apply_binary(PrecReal& self, const PrecReal& o, Op op) {
    const unsigned prec = joint_precision(self.raw(), o.raw());
    if (prec != self.precision()) {
        PrecReal widened = self.with_precision(prec);
        op(widened.raw(), widened.raw(), o.raw(), MPFR_RNDN);
        self = std::move(widened);
    } else {
        op(self.raw(), self.raw(), o.raw(), MPFR_RNDN);
    }
    return self;
}

}  // namespace

PrecReal& PrecReal::operator+=(const PrecReal& o) { return apply_binary(*this, o, mpfr_add); }
PrecReal& PrecReal::operator-=(const PrecReal& o) { return apply_binary(*this, o, mpfr_sub); }
PrecReal& PrecReal::operator*=(const PrecReal& o) { return apply_binary(*this, o, mpfr_mul); }
PrecReal& PrecReal::operator/=(const PrecReal& o) { return apply_binary(*this, o, mpfr_div); }

PrecReal PrecReal::operator-() const {
    PrecReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const PrecReal& a, const PrecReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

namespace {

template <typename Fn>
PrecReal unary(const PrecReal& x, Fn fn) {
    PrecReal r(x.precision());
    fn(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

PrecReal abs(const PrecReal& x) { return unary(x, mpfr_abs); }
PrecReal exp(const PrecReal& x) { return unary(x, mpfr_exp); }
PrecReal sqrt(const PrecReal& x) { return unary(x, mpfr_sqrt); }

PrecReal log(const PrecReal& x) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive value");
    return unary(x, mpfr_log);
}

PrecReal pow(const PrecReal& base, const PrecReal& exponent) {
    PrecReal r(joint_precision(base.raw(), exponent.raw()));
    mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
    return r;
}

PrecReal max(const PrecReal& a, const PrecReal& b) { return a < b ? b : a; }
PrecReal min(const PrecReal& a, const PrecReal& b) { return b < a ? b : a; }

// ---------------------------------------------------------------------------
// hp_log

PrecReal hp_log(const BigRational& x, unsigned precision) {
    BigRational v = x;
    v.canonicalize();
    if (sgn(v) <= 0) throw DomainError("hp_log: argument must be positive, got " + v.get_str());
    if (v == 1) return PrecReal(0L, precision);
    // Guard bits absorb the single rounding of x; the log itself is correctly rounded.
    constexpr unsigned kGuard = 64;
    PrecReal wide(v, precision + kGuard);
    return log(wide).with_precision(precision);
}

// ---------------------------------------------------------------------------
// continued fractions

namespace {

struct Recurrence {
    BigInt p_prev{0}, p{1}, q_prev{1}, q{0};

    void push(const BigInt& a) {
        BigInt np = a * p + p_prev;
        BigInt nq = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(np);
        q = std::move(nq);
    }
};

// Euclid step on an exact fraction num/den: returns floor, leaves the
// reciprocal of the fractional part in (num, den). den == 0 afterwards means
// the expansion has terminated.
BigInt euclid_step(BigInt& num, BigInt& den) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt rem = num - a * den;
    num = den;
    den = rem;
    return a;
}

}  // namespace

std::vector<Convergent> cf_expand(const BigRational& rho, const BigInt& q_limit) {
    BigRational v = rho;
    v.canonicalize();
    BigInt num = v.get_num();
    BigInt den = v.get_den();
    std::vector<Convergent> out;
    Recurrence rec;
    while (sgn(den) != 0) {
        BigInt a = euclid_step(num, den);
        rec.push(a);
        out.push_back({out.size(), rec.p, rec.q, a});
        if (rec.q > q_limit) break;
    }
    return out;
}

std::vector<Convergent> cf_expand(const PrecReal& rho, const BigInt& q_limit, unsigned ulp_radius) {
    if (!rho.is_finite()) throw DomainError("cf_expand: non-finite input");
    if (ulp_radius == 0) return cf_expand(rho.to_rational(), q_limit);

    // Enclosure [lo, hi] as exact rationals.
    const BigRational mid = rho.to_rational();
    BigRational radius{BigInt(ulp_radius)};
    if (!rho.is_zero()) {
        const long e = rho.exponent() - static_cast<long>(rho.precision());
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
        if (e >= 0) {
            radius *= scale;
        } else {
            radius /= scale;
        }
    }
    BigRational lo = mid - radius;
    BigRational hi = mid + radius;
    lo.canonicalize();
    hi.canonicalize();

    BigInt lo_num = lo.get_num(), lo_den = lo.get_den();
    BigInt hi_num = hi.get_num(), hi_den = hi.get_den();
    std::vector<Convergent> out;
    Recurrence rec;
    while (true) {
        if (sgn(lo_den) == 0 || sgn(hi_den) == 0) {
            throw PrecisionError("cf_expand: enclosure too wide to continue past q = " + rec.q.get_str() +
                                 " at " + std::to_string(rho.precision()) + " bits");
        }
        BigInt a_lo = euclid_step(lo_num, lo_den);
        BigInt a_hi = euclid_step(hi_num, hi_den);
        if (a_lo != a_hi) {
            throw PrecisionError("cf_expand: ambiguous partial quotient after q = " + rec.q.get_str() + " at " +
                                 std::to_string(rho.precision()) + " bits");
        }
        rec.push(a_lo);
        out.push_back({out.size(), rec.p, rec.q, a_lo});
        if (rec.q > q_limit) break;
    }
    return out;
}

BigInt max_partial_quotient(const PrecReal& rho, const BigInt& q_limit, unsigned ulp_radius) {
    const auto convergents = cf_expand(rho, q_limit, ulp_radius);
    BigInt best = 0;
    for (const auto& c : convergents) {
        if (c.q > q_limit) break;
        if (c.a > best) best = c.a;
    }
    return best;
}

// ---------------------------------------------------------------------------
// cross-over root finding

PrecReal solve_crossover(const RealFunction& ln_lhs, const RealFunction& ln_rhs, const PrecReal& x_min,
                         const CrossoverOptions& options) {
    if (x_min.sign() <= 0) throw ParameterError("solve_crossover: x_min must be positive");
    auto gap_sign = [&](const PrecReal& x) { return (ln_lhs(x) - ln_rhs(x)).sign(); };

    PrecReal x = x_min;
    int s = gap_sign(x);
    bool found = false;
    PrecReal lo, hi;
    int s_lo = 0;
    const PrecReal two(2L, x_min.precision());
    while (x < options.scan_ceiling) {
        PrecReal next = x * two;
        const int s_next = gap_sign(next);
        if (s_next != s) {
            lo = x;
            hi = next;
            s_lo = s;
            found = true;
        }
        x = std::move(next);
        s = s_next;
    }
    if (!found) throw NoCrossingError("solve_crossover: no sign change up to " + options.scan_ceiling.str(6));
    if (s_lo == 0) return lo;

    const PrecReal half(0.5, lo.precision());
    const PrecReal tol(options.rel_tol, lo.precision());
    for (int i = 0; i < options.max_bisections; ++i) {
        PrecReal mid = (lo + hi) * half;
        const int sm = gap_sign(mid);
        if (sm == 0) return mid;
        if (sm == s_lo) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
        if ((hi - lo) / hi < tol) break;
    }
    return (lo + hi) * half;
}

}  // namespace permseq
