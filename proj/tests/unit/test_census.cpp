#include "permseq/census.hpp"
#include "permseq/json_io.hpp"
#include "permseq/prime_composite.hpp"

#include <doctest.h>

#include <algorithm>
#include <tuple>

using namespace permseq;

namespace {

using Key = std::tuple<long, long, std::uint64_t>;

std::vector<Key> keys(const CensusReport& r) {
    std::vector<Key> out;
    for (const auto& c : r.cycles) out.emplace_back(c.min.get_si(), c.max.get_si(), c.length);
    return out;
}

CensusSettings paper_settings() {
    CensusSettings cs;
    cs.trajectory.keep_elements = false;
    return cs;
}

}  // namespace

TEST_SUITE("census") {
    TEST_CASE("Collatz permutation below 10") {
        const ResidueMap map(make_pabcd(2, 2, 1, 3));
        CensusSettings cs = paper_settings();
        cs.trajectory.m_floor = 10;
        const auto rep = cycle_census(map, 10, cs);
        CHECK(keys(rep) == std::vector<Key>{{0, 0, 1}, {1, 1, 1}, {2, 3, 2}, {4, 9, 5}});
        CHECK(rep.divergent_seed_count == 1);
        CHECK(rep.divergent_minima == std::vector<BigInt>{BigInt(8)});
        CHECK(is_trivial_zero_cycle(rep.cycles.front()));
        CHECK(rep.nontrivial_cycles().size() == 3);
    }

    TEST_CASE("P(2,4,3,3) below 1e5") {
        const ResidueMap map(make_pabcd(2, 4, 3, 3));
        const auto rep = cycle_census(map, 100000, paper_settings());
        const std::vector<Key> expected{{0, 0, 1},     {1, 1, 1},     {2, 2, 1},       {3, 4, 2},   {5, 5, 1},
                                        {6, 8, 3},     {9, 16, 7},    {15, 32, 14},    {27, 176, 51}, {33, 52, 7},
                                        {90, 1972, 93}, {213, 700, 31}, {645, 1612, 31}};
        CHECK(keys(rep) == expected);
    }

    TEST_CASE("partition of seeds") {
        for (auto p : {PabcdParams{1, 3, 2, 2}, PabcdParams{2, 4, 3, 3}, PabcdParams{2, 6, 5, 3}}) {
            const ResidueMap map(make_pabcd(p.a, p.b, p.c, p.d));
            CensusSettings cs = paper_settings();
            if (p.b == 6) cs.trajectory.m_floor.reset();  // its escapes have no local maxima
            const auto rep = cycle_census(map, 20000, cs);
            CHECK(rep.seeds_in_cycles + rep.divergent_seed_count + rep.seeds_step_limited == rep.x0 - rep.first_seed);
            for (const auto& c : rep.cycles) CHECK(c.min < 20000);
        }
    }

    TEST_CASE("cycles are disjoint and sorted") {
        const ResidueMap map(make_generalization({2, 4, 3, 3}, GeneralizationMode::simple, 17));
        CensusSettings cs = paper_settings();
        cs.trajectory.keep_elements = true;
        const auto rep = cycle_census(map, 20000, cs);
        std::vector<BigInt> all;
        for (const auto& c : rep.cycles) all.insert(all.end(), c.elements->begin(), c.elements->end());
        const auto n = all.size();
        std::sort(all.begin(), all.end());
        CHECK(std::unique(all.begin(), all.end()) == all.end());
        CHECK(all.size() == n);
        CHECK(std::is_sorted(rep.cycles.begin(), rep.cycles.end(),
                             [](const CycleRecord& x, const CycleRecord& y) { return x.min < y.min; }));
    }

    TEST_CASE("monotone in X0") {
        const ResidueMap map(make_pabcd(2, 4, 3, 3));
        const auto small = keys(cycle_census(map, 1000, paper_settings()));
        const auto large = keys(cycle_census(map, 100000, paper_settings()));
        for (const auto& k : small) CHECK(std::find(large.begin(), large.end(), k) != large.end());
    }

    TEST_CASE("deterministic serialization") {
        const ResidueMap map(make_pabcd(1, 3, 2, 2));
        const auto a = to_json(cycle_census(map, 30000, paper_settings())).dump();
        const auto b = to_json(cycle_census(map, 30000, paper_settings())).dump();
        CHECK(a == b);
    }

    TEST_CASE("sweep over generalizations") {
        const PabcdParams base{2, 4, 3, 3};
        CHECK(sweep_generalizations(base, GeneralizationMode::simple, 0, 1000, paper_settings()).empty());
        const auto one = sweep_generalizations(base, GeneralizationMode::simple, 12, 20000, paper_settings(), 1);
        const auto many = sweep_generalizations(base, GeneralizationMode::simple, 12, 20000, paper_settings(), 4);
        REQUIRE(one.size() == 12);
        REQUIRE(many.size() == 12);
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i].rank == i + 1);
            CHECK(many[i].rank == one[i].rank);
            CHECK(many[i].cycles == one[i].cycles);
            CHECK(many[i].max_element == one[i].max_element);
            CHECK(many[i].divergent_min_count == one[i].divergent_min_count);
        }
    }

    TEST_CASE("extended generalizations of the Collatz permutation") {
        const auto rows = sweep_generalizations({2, 2, 1, 3}, GeneralizationMode::extended, 4, 100000, paper_settings());
        REQUIRE(rows.size() == 4);
        std::vector<std::size_t> counts;
        for (const auto& r : rows) counts.push_back(r.cycles);
        CHECK(counts == std::vector<std::size_t>{3, 6, 2, 7});
        CHECK(rows[1].max_element == 5215);
    }

    TEST_CASE("divergence ratios") {
        const ResidueMap p1322(make_pabcd(1, 3, 2, 2));
        CensusSettings cs = paper_settings();
        cs.trajectory.m_floor = 10;
        const auto r1 = divergence_ratio(p1322, 100000, cs);
        CHECK(r1.value() == doctest::Approx(0.05).epsilon(0.4));
        CHECK(r1.ratio * 100000 == r1.classes);

        const ResidueMap p2653(make_pabcd(2, 6, 5, 3));
        CensusSettings loose = paper_settings();
        loose.trajectory.m_floor.reset();
        const auto rep = cycle_census(p2653, 100, loose);
        CHECK(rep.seeds_in_cycles == 3);
        CHECK(rep.divergent_seed_count == 97);
        CHECK(rep.divergent_minima.front() == 3);
    }

    TEST_CASE("prime/composite census") {
        const auto pc = prime_composite_perm();
        CensusSettings cs = paper_settings();
        cs.trajectory.m_floor.reset();
        cs.trajectory.escape_threshold = 1000000;
        const auto rep = cycle_census(*pc, 200, cs);
        CHECK(rep.first_seed == 1);
        CHECK(rep.cycles.front().min == 1);
        const auto has = [&](long min, std::uint64_t len) {
            return std::any_of(rep.cycles.begin(), rep.cycles.end(),
                               [&](const CycleRecord& c) { return c.min == min && c.length == len; });
        };
        CHECK(has(3, 2));
        CHECK(has(14, 3));
        CHECK(has(18, 22));
    }
}
