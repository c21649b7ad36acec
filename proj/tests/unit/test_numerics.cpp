#include "permseq/errors.hpp"
#include "permseq/numerics.hpp"

#include <doctest.h>

#include <cmath>

using namespace permseq;

namespace {

PrecReal ln(long num, long den, unsigned bits = kDefaultPrecision) { return hp_log(BigRational(num, den), bits); }

std::vector<std::pair<long, long>> pq(const std::vector<Convergent>& cs) {
    std::vector<std::pair<long, long>> out;
    for (const auto& c : cs) out.emplace_back(c.p.get_si(), c.q.get_si());
    return out;
}

bool contains(const std::vector<Convergent>& cs, long p, long q) {
    for (const auto& c : cs) {
        if (c.p == p && c.q == q) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("parse_integer accepts scientific forms") {
        CHECK(parse_integer("1e8") == 100000000);
        CHECK(parse_integer("2.5e3") == 2500);
        CHECK(parse_integer("123456789012345678901234567890").get_str() == "123456789012345678901234567890");
        CHECK_THROWS_AS(parse_integer("1.5"), ParseError);
        CHECK_THROWS_AS(parse_integer("abc"), ParseError);
    }

    TEST_CASE("u64 conversions") {
        const BigInt big = to_big(UINT64_MAX);
        CHECK(fits_u64(big));
        CHECK(*to_u64(big) == UINT64_MAX);
        CHECK_FALSE(to_u64(big + 1).has_value());
        CHECK_FALSE(to_u64(BigInt(-1)).has_value());
    }

    TEST_CASE("hp_log") {
        CHECK(hp_log(BigRational(1)).is_zero());
        CHECK(ln(4, 3).str(15) == "2.87682072451781e-01");
        const PrecReal identity = ln(9, 8) + PrecReal(3) * ln(2, 1) - PrecReal(2) * ln(3, 1);
        CHECK(abs(identity) < PrecReal(std::ldexp(1.0, -245)));
        CHECK_THROWS_AS(hp_log(BigRational(0)), DomainError);
        CHECK_THROWS_AS(hp_log(BigRational(-2, 3)), DomainError);
    }

    TEST_CASE("hp_log is self-consistent at double precision") {
        const PrecReal lo = ln(1000003, 999983, 256), hi = ln(1000003, 999983, 512);
        CHECK(abs(lo - hi.with_precision(256)) / hi < PrecReal(std::ldexp(1.0, -128)));
    }

    TEST_CASE("cf_expand of a rational terminates") {
        const auto cs = cf_expand(BigRational(1, 2), BigInt(10));
        CHECK(pq(cs) == std::vector<std::pair<long, long>>{{0, 1}, {1, 2}});
        const auto ts = cf_expand(BigRational(415, 93), BigInt(1000));
        CHECK(ts.back().p == 415);
        CHECK(ts.back().q == 93);
    }

    TEST_CASE("cf_expand of rho(1,3,2,2) and rho(2,4,3,3)") {
        const PrecReal rho1 = ln(3, 2) / ln(4, 3);
        const auto c1 = cf_expand(rho1, BigInt(40000));
        for (auto [p, q] : std::vector<std::pair<long, long>>{
                 {3, 2}, {7, 5}, {24, 17}, {31, 22}, {179, 127}, {389, 276}, {9126, 6475}, {18641, 13226}, {46408, 32927}}) {
            CHECK(contains(c1, p, q));
        }
        const PrecReal rho2 = ln(4, 3) / ln(9, 8);
        const auto c2 = cf_expand(rho2, BigInt(14000));
        for (auto [p, q] : std::vector<std::pair<long, long>>{
                 {5, 2}, {17, 7}, {22, 9}, {127, 52}, {276, 113}, {6475, 2651}, {13226, 5415}, {32927, 13481}}) {
            CHECK(contains(c2, p, q));
        }
    }

    TEST_CASE("convergent invariants") {
        const PrecReal rho = ln(3, 2) / ln(4, 3);
        const auto cs = cf_expand(rho, BigInt("1000000000000000"));
        REQUIRE(cs.size() > 10);
        CHECK(cs.back().q > BigInt("1000000000000000"));
        PrecReal prev_err(1e9);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), cs[i].p.get_mpz_t(), cs[i].q.get_mpz_t());
            CHECK(g == 1);
            if (i >= 2) {
                CHECK(cs[i].p == cs[i].a * cs[i - 1].p + cs[i - 2].p);
                CHECK(cs[i].q == cs[i].a * cs[i - 1].q + cs[i - 2].q);
                CHECK(cs[i].q > cs[i - 1].q);
            }
            const PrecReal err = abs(PrecReal(cs[i].p) - PrecReal(cs[i].q) * rho);
            CHECK(err < prev_err);
            prev_err = err;
        }
        // The same list at 512 bits.
        const PrecReal rho512 = ln(3, 2, 512) / ln(4, 3, 512);
        CHECK(cf_expand(rho512, BigInt("1000000000000000")) == cs);
    }

    TEST_CASE("cf_expand detects exhausted precision") {
        const PrecReal coarse = (ln(3, 2) / ln(4, 3)).with_precision(40);
        CHECK_THROWS_AS(cf_expand(coarse, BigInt("1000000000000000000000")), PrecisionError);
    }

    TEST_CASE("max_partial_quotient") {
        const PrecReal phi = (PrecReal(1) + sqrt(PrecReal(5))) / PrecReal(2);
        CHECK(max_partial_quotient(phi, BigInt(1000000)) == 1);
        CHECK(max_partial_quotient(ln(3, 2) / ln(4, 3), BigInt("500000000000000")) == 55);
    }

    TEST_CASE("solve_crossover") {
        // ln(1/x^2) against ln(1e6 * 2^-x / x): a single crossing.
        const RealFunction poly = [](const PrecReal& x) { return -PrecReal(2) * log(x); };
        const RealFunction expo = [](const PrecReal& x) {
            return PrecReal(13.815510557964274) - x * log(PrecReal(2)) - log(x);
        };
        const PrecReal x = solve_crossover(poly, expo, PrecReal(2));
        CHECK(abs(poly(x) - expo(x)) < PrecReal(1e-6));

        const RealFunction two = [](const PrecReal& x) { return log(PrecReal(2) / x); };
        const RealFunction one = [](const PrecReal& x) { return log(PrecReal(1) / x); };
        CHECK_THROWS_AS(solve_crossover(two, one, PrecReal(2)), NoCrossingError);
    }

    TEST_CASE("PrecReal basics") {
        const PrecReal a(BigRational(1, 3));
        CHECK(abs(a * PrecReal(3) - PrecReal(1)) < PrecReal(std::ldexp(1.0, -250)));
        CHECK(PrecReal(7.5).floor() == 7);
        CHECK(PrecReal(7.5).ceil() == 8);
        CHECK(PrecReal(-7.5).floor() == -8);
        CHECK(PrecReal(std::string("2.5")).to_double() == 2.5);
        CHECK(PrecReal(0.75).to_rational() == BigRational(3, 4));
    }
}
