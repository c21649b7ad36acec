#include "permseq/errors.hpp"
#include "permseq/json_io.hpp"
#include "permseq/reference_tables.hpp"
#include "permseq/selector.hpp"
#include "permseq/tables.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace permseq;

TEST_SUITE("json") {
    TEST_CASE("big integers") {
        CHECK(big_to_json(BigInt(42)).is_number_unsigned());
        const BigInt huge("340282366920938463463374607431768211456");
        CHECK(big_to_json(huge).is_string());
        CHECK(big_from_json(big_to_json(huge)) == huge);
        CHECK(big_from_json(Json(17)) == 17);
        CHECK_THROWS_AS(big_from_json(Json("x1")), ParseError);
    }

    TEST_CASE("PermSpec round trip") {
        for (const auto& spec : {make_pabcd(2, 4, 3, 3), make_fafc(10, 8, 5, 9, 9, 3),
                                 make_generalization({1, 3, 2, 2}, GeneralizationMode::extended, 3)}) {
            const Json j = to_json(spec);
            const PermSpec back = perm_spec_from_json(Json::parse(j.dump()));
            CHECK(back.rules == spec.rules);
            CHECK(back.label == spec.label);
            CHECK(back.params == spec.params);
        }
        CHECK(to_json(make_fafc(10, 8, 5, 9, 9, 3))["params"]["d"] == 9);
    }

    TEST_CASE("malformed PermSpec documents") {
        CHECK_THROWS_AS(perm_spec_from_json(Json::parse(R"({"label":"x"})")), ParseError);
        CHECK_THROWS_AS(perm_spec_from_json(Json::parse(R"({"label":"x","rules":[{"src_mod":2}]})")), ParseError);
        CHECK_THROWS_AS(perm_spec_from_json(Json::parse("[1,2]")), ParseError);
    }

    TEST_CASE("CycleRecord round trip") {
        const ResidueMap map(make_pabcd(2, 4, 3, 3));
        const auto out = run_trajectory(map, BigInt(15), TrajectorySettings{});
        const auto& c = std::get<CycleFound>(out).cycle;
        const auto back = cycle_from_json(Json::parse(to_json(c).dump()));
        CHECK(back.min == c.min);
        CHECK(back.max == c.max);
        CHECK(back.length == c.length);
        CHECK(back.K == c.K);
        CHECK(back.L == c.L);
        CHECK(back.m == c.m);
        CHECK(back.elements == c.elements);
    }

    TEST_CASE("outcome and census serialization") {
        const ResidueMap map(make_pabcd(2, 2, 1, 3));
        CHECK(to_json(run_trajectory(map, BigInt(4), TrajectorySettings{}))["outcome"] == "cycle");
        CHECK(to_json(run_trajectory(map, BigInt(8), TrajectorySettings{}))["outcome"] == "escaped");
        CensusSettings cs;
        cs.trajectory.m_floor = 10;
        const auto rep = cycle_census(map, 10, cs);
        CHECK(census_csv(rep) == "nr,x_min,x_max,length,m\n1,0,0,1,0\n2,1,1,1,0\n3,2,3,2,1\n4,4,9,5,1\n");
        const Json j = to_json(rep);
        CHECK(j["cycles"].size() == 4);
        CHECK(j["divergent_seed_count"] == 1);
    }
}

TEST_SUITE("selector") {
    TEST_CASE("plain and generalized selectors") {
        const auto p = parse_selector("pabcd:2,4,3,3");
        CHECK(p.map->label() == "P(2,4,3,3)");
        CHECK(*p.params == PabcdParams{2, 4, 3, 3});
        CHECK(default_m_floor(p) == 20);

        const auto inv = parse_selector("pabcd:1,3,2,2", true);
        CHECK(inv.map->apply(BigInt(27)) == 20);
        CHECK(default_m_floor(inv) == 10);

        const auto g = parse_selector("pabcd:2,2,1,3/ext:4");
        CHECK(g.mode == GeneralizationMode::extended);
        CHECK(default_m_floor(g) == 20);

        CHECK(parse_selector("fafc:10,8,5,9,9,3").map->label() == "F(10,8,5,9,9,3)");
        CHECK_FALSE(default_m_floor(parse_selector("pabcd:2,6,5,3")).has_value());
    }

    TEST_CASE("prime/composite selector") {
        const auto pc = parse_selector("primecomp");
        CHECK(pc.map->apply(BigInt(14)) == 17);
        CHECK_FALSE(pc.spec.has_value());
        const auto ipc = parse_selector("primecomp", true);
        CHECK(ipc.map->apply(BigInt(17)) == 14);
        CHECK(ipc.map->domain_start() == 1);
    }

    TEST_CASE("parse errors carry positions") {
        const auto position_of = [](const char* text) -> std::size_t {
            try {
                parse_selector(text);
            } catch (const ParseError& e) {
                return e.position();
            }
            return std::size_t(-1);
        };
        CHECK(position_of("pabcd:1,3,2") == 11);
        CHECK(position_of("pabcd:1,3,x,2") == 10);
        CHECK(position_of("nope") == 0);
        CHECK(position_of("pabcd:1,3,2,2/weird:1") == 13);
        CHECK_THROWS_AS(parse_selector("pabcd:2,3,2,2"), ParameterError);
        CHECK_THROWS_AS(parse_selector("file:/nonexistent/x.json"), Error);
    }

    TEST_CASE("file selector and invalid rule lists") {
        auto spec = make_pabcd(1, 3, 2, 2);
        const std::string good = "/tmp/permseq_selector_good.json", bad = "/tmp/permseq_selector_bad.json";
        std::ofstream(good) << to_json(spec).dump();
        CHECK(parse_selector("file:" + good).map->apply(BigInt(1)) == 1);
        spec.rules[2].dst_res = 1;
        std::ofstream(bad) << to_json(spec).dump();
        CHECK_THROWS_AS(parse_selector("file:" + bad), IntegrityError);
        const auto raw = parse_selector("file:" + bad, false, false);
        CHECK(raw.map == nullptr);
        CHECK_FALSE(verify_bijection(*raw.spec).valid());
        std::remove(good.c_str());
        std::remove(bad.c_str());
    }
}

TEST_SUITE("tables") {
    TEST_CASE("display rule") {
        CHECK(tables::display(BigInt(126), PrecReal(125.3)) == "126");
        CHECK(tables::display(BigInt(99999), PrecReal(99998.2)) == "99999");
        CHECK(tables::display(BigInt(232010), PrecReal(232009.7)) == "2.3201e5");
        const PrecReal big(std::string("2.26647e60"));
        CHECK(tables::display(big.ceil(), big) == "2.2665e60");
        CHECK(tables::display(BigInt(232010)) == "232010");
    }

    TEST_CASE("printed references") {
        const reference::Printed p{"2.3201e5"};
        CHECK(p.value() == 232010.0);
        CHECK(p.unit() == doctest::Approx(10.0));
        CHECK(p.within_unit(232019.0));
        CHECK_FALSE(p.within_unit(232021.0));
        CHECK(reference::Printed{"126"}.within_unit(127.0));
        CHECK(reference::Printed{"1.1449e32"}.within_relative(1.1449e32 * 1.004, 0.005));
    }

    TEST_CASE("documented discrepancies are findable") {
        CHECK(reference::find_discrepancy("floor", "P(2,4,3,3) X0=1e3") != nullptr);
        CHECK(reference::find_discrepancy("floor", "P(1,3,2,2) X0=1e3") == nullptr);
        for (const auto& d : reference::discrepancies()) CHECK_FALSE(d.reason.empty());
    }

    TEST_CASE("floor table check") {
        tables::Options o;
        o.check = true;
        const auto t = tables::build("floor", o);
        CHECK(t.checked);
        CHECK(t.mismatches == 0);
        CHECK(t.discrepancies == 1);
        CHECK(t.rows.size() == 8);
    }

    TEST_CASE("render formats") {
        tables::Table t;
        t.id = "demo";
        t.title = "Demo";
        t.header = {"a", "b"};
        t.rows = {{"1", "x,y"}, {"22", "z"}};
        CHECK(tables::render(t, tables::Format::csv) == "a,b\n1,\"x,y\"\n22,z\n");
        const auto j = Json::parse(tables::render(t, tables::Format::json));
        CHECK(j["rows"].size() == 2);
        CHECK(tables::render(t, tables::Format::text).find("Demo") != std::string::npos);
        CHECK_THROWS_AS(tables::parse_format("xml"), ParseError);
        CHECK_THROWS_AS(tables::build("nope", {}), ParseError);
    }
}
