// Randomized round trips over every constructed permutation family.

#include "permseq/perm.hpp"

#include <doctest.h>

#include <random>

using namespace permseq;

namespace {

constexpr int kSamples = 10000;

void check_spec(const PermSpec& spec, std::mt19937_64& rng) {
    CAPTURE(spec.label);
    const auto rep = verify_bijection(spec);
    REQUIRE(rep.valid());
    CHECK(rep.sources.density_sum == 1);
    CHECK(rep.targets.density_sum == 1);

    const ResidueMap map(spec);
    std::uniform_int_distribution<std::uint64_t> small(0, 1'000'000'000'000ULL);
    for (int i = 0; i < kSamples; ++i) {
        const BigInt x = to_big(small(rng));
        CHECK(map.apply_inv(map.apply(x)) == x);
        CHECK(map.apply(map.apply_inv(x)) == x);
    }
    // A few values far beyond 64 bits.
    BigInt big("987654321987654321987654321987654321");
    for (int i = 0; i < 100; ++i, big += to_big(rng())) CHECK(map.apply_inv(map.apply(big)) == big);
}

}  // namespace

TEST_SUITE("properties") {
    TEST_CASE("both example permutations") {
        std::mt19937_64 rng(1);
        check_spec(make_pabcd(1, 3, 2, 2), rng);
        check_spec(make_pabcd(2, 4, 3, 3), rng);
        check_spec(inverse(make_pabcd(1, 3, 2, 2)), rng);
    }

    TEST_CASE("twenty random simple generalizations") {
        std::mt19937_64 rng(2);
        const PabcdParams p{2, 4, 3, 3};
        std::uniform_int_distribution<std::uint64_t> rank(1, 719);
        for (int i = 0; i < 20; ++i) check_spec(make_generalization(p, GeneralizationMode::simple, rank(rng)), rng);
    }

    TEST_CASE("extended generalizations") {
        std::mt19937_64 rng(3);
        for (std::uint64_t r = 1; r <= 4; ++r) check_spec(make_generalization({2, 2, 1, 3}, GeneralizationMode::extended, r), rng);
    }

    TEST_CASE("fafc example and P(2,6,5,3)") {
        std::mt19937_64 rng(4);
        check_spec(make_fafc(10, 8, 5, 9, 9, 3), rng);
        check_spec(make_pabcd(2, 6, 5, 3), rng);
    }

    TEST_CASE("injective on an initial segment") {
        for (const auto& spec : {make_pabcd(1, 3, 2, 2), make_pabcd(2, 4, 3, 3), make_fafc(10, 8, 5, 9, 9, 3)}) {
            const ResidueMap map(spec);
            std::vector<bool> hit(2'000'000, false);
            bool injective = true;
            for (std::uint64_t x = 0; x < 100000; ++x) {
                std::uint64_t y = 0;
                REQUIRE(map.apply_fast(x, y));
                if (y < hit.size()) {
                    injective = injective && !hit[y];
                    hit[y] = true;
                }
            }
            CHECK(injective);
        }
    }
}
