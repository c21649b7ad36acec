#include "permseq/dynamics.hpp"
#include "permseq/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace permseq;

namespace {

std::vector<BigInt> bigs(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

const ResidueMap& collatz() {
    static const ResidueMap m(inverse(make_pabcd(1, 3, 2, 2)));
    return m;
}

TrajectorySettings settings(std::optional<std::uint64_t> m_floor = 10) {
    TrajectorySettings s;
    s.m_floor = m_floor;
    return s;
}

}  // namespace

TEST_SUITE("dynamics") {
    TEST_CASE("Collatz permutation 5-cycle") {
        const auto out = run_trajectory(collatz(), BigInt(4), settings());
        REQUIRE(std::holds_alternative<CycleFound>(out));
        const auto& c = std::get<CycleFound>(out).cycle;
        CHECK(c.min == 4);
        CHECK(c.max == 9);
        CHECK(c.length == 5);
        REQUIRE(c.elements);
        CHECK(*c.elements == bigs({4, 6, 9, 7, 5}));
        CHECK(c.m == 1);
    }

    TEST_CASE("Collatz permutation 12-cycle through 44") {
        const auto out = run_trajectory(collatz(), BigInt(44), settings());
        REQUIRE(std::holds_alternative<CycleFound>(out));
        const auto& c = std::get<CycleFound>(out).cycle;
        CHECK(c.length == 12);
        CHECK(c.max == 111);
        CHECK(*c.elements == bigs({44, 66, 99, 74, 111, 83, 62, 93, 70, 105, 79, 59}));
        CHECK(c.K + c.L == c.length);
    }

    TEST_CASE("a bijection has no pre-periodic part") {
        const auto out = run_trajectory(collatz(), BigInt(7), settings());
        REQUIRE(std::holds_alternative<CycleFound>(out));
        CHECK(std::get<CycleFound>(out).cycle.min == 4);
        CHECK(std::get<CycleFound>(out).entry_steps == 0);
    }

    TEST_CASE("apparent divergence from 8") {
        const auto out = run_trajectory(collatz(), BigInt(8), settings());
        REQUIRE(std::holds_alternative<Escaped>(out));
        const auto& e = std::get<Escaped>(out);
        CHECK(e.threshold_crossed > 100000000);
        CHECK(e.maxima_seen > 10);
        CHECK(e.min_seen == 8);
        // Backward escape from the same seed.
        CHECK(std::holds_alternative<Escaped>(run_trajectory(collatz(), BigInt(8), settings(), Direction::backward)));
    }

    TEST_CASE("m-floor gates the escape verdict") {
        const ResidueMap p2653(make_pabcd(2, 6, 5, 3));
        TrajectorySettings s = settings(std::nullopt);
        s.escape_threshold = 1000000;
        CHECK(std::holds_alternative<Escaped>(run_trajectory(p2653, BigInt(3), s)));
        // Strictly increasing orbits never produce a local maximum, so any m-floor blocks escape.
        s.m_floor = 0;
        s.step_limit = 2000;
        const auto out = run_trajectory(p2653, BigInt(3), s);
        REQUIRE(std::holds_alternative<StepLimit>(out));
        CHECK(std::get<StepLimit>(out).steps == 2000);
    }

    TEST_CASE("fixed points") {
        const ResidueMap p(make_pabcd(2, 4, 3, 3));
        for (long x : {0, 1, 2, 5}) {
            const auto out = run_trajectory(p, BigInt(x), settings(20));
            REQUIRE(std::holds_alternative<CycleFound>(out));
            CHECK(std::get<CycleFound>(out).cycle.length == 1);
            CHECK(std::get<CycleFound>(out).cycle.m == 0);
        }
    }

    TEST_CASE("classify_cycle") {
        const auto two = bigs({3, 4});
        const auto r2 = classify_cycle(two, 4);
        CHECK(r2.length == 2);
        CHECK(r2.m == 1);
        CHECK(r2.L == 1);
        CHECK(r2.K == 1);

        const auto fourteen = bigs({15, 17, 19, 22, 25, 28, 21, 23, 26, 29, 32, 24, 18, 20});
        const auto r14 = classify_cycle(fourteen, 4);
        CHECK(r14.min == 15);
        CHECK(r14.max == 32);
        CHECK(r14.length == 14);
        CHECK(r14.m == 3);
        CHECK((*r14.elements)[0] == 15);

        const auto fixed = bigs({5});
        CHECK(classify_cycle(fixed, 4).m == 0);

        const auto repeated = bigs({3, 4, 3});
        CHECK_THROWS_AS(classify_cycle(repeated, 4), IntegrityError);
        CHECK_THROWS_AS(classify_cycle(std::vector<BigInt>{}, 4), ParameterError);
        CHECK_THROWS_AS(classify_cycle(two, 0), ParameterError);
    }

    TEST_CASE("classification is invariant under rotation") {
        auto xs = bigs({15, 17, 19, 22, 25, 28, 21, 23, 26, 29, 32, 24, 18, 20});
        const auto ref = classify_cycle(xs, 4);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::rotate(xs.begin(), xs.begin() + 1, xs.end());
            const auto r = classify_cycle(xs, 4);
            CHECK(r.m == ref.m);
            CHECK(r.K == ref.K);
            CHECK(*r.elements == *ref.elements);
        }
    }

    TEST_CASE("local maxima and minima balance") {
        const auto xs = bigs({44, 66, 99, 74, 111, 83, 62, 93, 70, 105, 79, 59});
        CHECK(count_local_maxima(xs) == 4);
        CHECK(local_minima_positions(xs).size() == 4);
    }

    TEST_CASE("multiplication factors") {
        const PabcdParams collatz_params{2, 2, 1, 3};
        const auto f = multiplication_factors(collatz_params, 0.5, 1.0 / 3.0);
        CHECK(f.left_right == doctest::Approx(std::sqrt(1.5 * 0.75)).epsilon(1e-12));
        CHECK(f.left_right == doctest::Approx(1.06066).epsilon(1e-5));
        CHECK(f.right_left == doctest::Approx(1.05827).epsilon(1e-5));
    }

    TEST_CASE("degenerate branch statistics") {
        const PabcdParams p{1, 3, 2, 2};
        const auto st = branch_stats(bigs({3, 6, 9, 12}), p);
        CHECK(st.frac_zero_mod_b == 1.0);
        CHECK(st.factors.left_right == doctest::Approx(2.0 / 3.0));
    }

    TEST_CASE("escaped branch of P(1,3,2,2) balances the factors") {
        const ResidueMap p(make_pabcd(1, 3, 2, 2));
        const auto seg = orbit_segment(p, BigInt(8), 10000);
        CHECK(seg.size() == 10001);
        const auto st = branch_stats(seg, {1, 3, 2, 2});
        CHECK(std::abs(st.factors.product() - 1.0) < 0.05);
    }

    TEST_CASE("orbit_segment backward inverts forward") {
        const ResidueMap p(make_pabcd(2, 4, 3, 3));
        const auto f = orbit_segment(p, BigInt(1000), 50);
        const auto b = orbit_segment(p, f.back(), 50, Direction::backward);
        CHECK(b.back() == 1000);
    }
}
