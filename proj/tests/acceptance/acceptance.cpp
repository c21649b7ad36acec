// Prints one status line per acceptance criterion.
//
// PASS and FAIL are literal. DEVIATION marks a criterion where some published
// figure is not reproduced but is listed, with its evidence, among the
// documented discrepancies; it does not fail the run.

#include "permseq/bounds.hpp"
#include "permseq/census.hpp"
#include "permseq/prime_composite.hpp"
#include "permseq/reference_tables.hpp"
#include "permseq/selector.hpp"
#include "permseq/tables.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace permseq;

namespace {

enum class Status { pass, deviation, fail };

struct Outcome {
    Status status = Status::fail;
    std::string detail;
};

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::deviation: return "DEVIATION";
        case Status::fail: return "FAIL";
    }
    return "?";
}

Outcome verdict(bool ok, std::string detail) { return {ok ? Status::pass : Status::fail, std::move(detail)}; }

CensusReport census(const std::string& selector, std::uint64_t x0, std::optional<std::uint64_t> m_floor) {
    const Selection sel = parse_selector(selector);
    CensusSettings cs = tables::paper_census_settings();
    cs.trajectory.m_floor = m_floor;
    return cycle_census(*sel.map, x0, cs);
}

// Matches census cycles against a published list on (min, max, length) and
// counts rows whose m also agrees.
Outcome match_cycles(const CensusReport& rep, std::span<const reference::CycleRef> published, std::size_t m_needed) {
    const auto found = rep.nontrivial_cycles();
    std::size_t exact = 0, m_ok = 0;
    for (const auto& ref : published) {
        for (const auto& c : found) {
            if (c.min == to_big(ref.min) && c.max == to_big(ref.max) && c.length == ref.length) {
                ++exact;
                if (c.m == ref.m) ++m_ok;
            }
        }
    }
    std::ostringstream s;
    s << exact << "/" << published.size() << " cycles on (min,max,length), " << found.size() << " found, m agrees on "
      << m_ok << "/" << published.size();
    return verdict(exact == published.size() && found.size() == published.size() && m_ok >= m_needed, s.str());
}

// Exact agreement is PASS. Agreement except for entries listed as documented
// discrepancies is DEVIATION, since the criterion compares against the
// printed values.
Outcome table_check(const std::string& id) {
    tables::Options opts;
    opts.check = true;
    const auto t = tables::build(id, opts);
    std::ostringstream s;
    s << "table " << id << ": " << t.mismatches << " mismatches, " << t.discrepancies << " documented discrepancies";
    for (const auto& d : reference::discrepancies()) {
        if (d.table == id && d.kind == reference::Discrepancy::Kind::erratum) {
            s << " [" << d.entry << ": printed " << d.published << ", computed " << d.computed << "]";
        }
    }
    if (t.mismatches) return {Status::fail, s.str()};
    return {t.discrepancies ? Status::deviation : Status::pass, s.str()};
}

// -- criteria ---------------------------------------------------------------

Outcome c1() {
    const auto rep = census("pabcd:2,4,3,3", 1000000, 20);
    return match_cycles(rep, reference::cycles_2433(), 10);
}

Outcome c2() {
    const auto rep = census("pabcd:2,2,1,3/simple:1", 1000000, 20);
    return match_cycles(rep, reference::cycles_collatz_simple(), 0);
}

Outcome c3() { return table_check("cycles-collatz-ext"); }

Outcome c4() {
    bool ok = true;
    std::ostringstream s;
    for (const PabcdParams p : {PabcdParams{1, 3, 2, 2}, PabcdParams{2, 4, 3, 3}}) {
        const auto ctx = BoundContext::make(p, BigInt(1000000));
        const auto refs = reference::convergents(p);
        const auto cs = rho_convergents(ctx, to_big(refs.back().q));
        // The published lists start after the q = 1 convergent.
        std::size_t start = 0;
        while (start < cs.size() && cs[start].q < to_big(refs.front().q)) ++start;
        std::size_t matched = 0;
        for (std::size_t i = 0; i < refs.size() && start + i < cs.size(); ++i) {
            if (cs[start + i].p == to_big(refs[i].p) && cs[start + i].q == to_big(refs[i].q)) ++matched;
        }
        const BigInt amax = reduction_partial_quotient(ctx, *rhin_params_for(ctx), 20);
        ok = ok && matched == refs.size() && amax == reference::max_partial_quotient();
        s << "P(" << p.a << "," << p.b << "," << p.c << "," << p.d << ") " << matched << "/" << refs.size()
          << " pairs, max a_n " << amax << "; ";
    }
    return verdict(ok, s.str());
}

Outcome c5() { return table_check("floor"); }

Outcome c6() {
    const auto x3 = table_check("x3");
    const auto l = table_check("l1l2");
    return {std::max(x3.status, l.status), x3.detail + "; " + l.detail};
}

Outcome c7() {
    const auto ctx = BoundContext::make({1, 3, 2, 2}, BigInt(1000000));
    const auto pairs = candidate_scan(ctx, 1, 31240);
    const std::vector<std::pair<long, std::uint64_t>> want{{389, 276}, {778, 552}, {957, 679}, {1167, 828}};
    bool ok = pairs.size() >= want.size();
    std::ostringstream s;
    s << pairs.size() << " pairs; first four";
    for (std::size_t i = 0; i < want.size() && i < pairs.size(); ++i) {
        ok = ok && pairs[i].K == want[i].first && pairs[i].L == want[i].second;
        s << " (" << pairs[i].K << "," << pairs[i].L << ")";
    }
    return verdict(ok, s.str());
}

Outcome c8() {
    std::vector<PermSpec> specs{make_pabcd(1, 3, 2, 2), make_pabcd(2, 4, 3, 3), make_fafc(10, 8, 5, 9, 9, 3),
                                make_pabcd(2, 6, 5, 3)};
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> rank(1, 719);
    for (int i = 0; i < 20; ++i) specs.push_back(make_generalization({2, 4, 3, 3}, GeneralizationMode::simple, rank(rng)));
    std::uniform_int_distribution<std::uint64_t> value(0, 1'000'000'000'000ULL);
    std::size_t failures = 0, samples = 0;
    for (const auto& spec : specs) {
        const auto rep = verify_bijection(spec);
        if (!rep.valid() || rep.sources.density_sum != 1 || rep.targets.density_sum != 1) ++failures;
        const ResidueMap map(spec);
        for (int i = 0; i < 10000; ++i, ++samples) {
            const BigInt x = to_big(value(rng));
            if (map.apply_inv(map.apply(x)) != x) ++failures;
        }
    }
    std::ostringstream s;
    s << specs.size() << " specs, " << samples << " round trips, CC-set sums exact; " << failures << " failures";
    return verdict(failures == 0, s.str());
}

Outcome c9() {
    CensusSettings cs = tables::paper_census_settings();
    cs.trajectory.m_floor = 10;
    const double r1 = divergence_ratio(*parse_selector("pabcd:1,3,2,2").map, 100000, cs).value();
    cs.trajectory.m_floor = 20;
    const double r2 = divergence_ratio(*parse_selector("pabcd:2,4,3,3").map, 100000, cs).value();
    const bool ok1 = std::abs(r1 - 0.05) <= 0.02, ok2 = std::abs(r2 - 0.12) <= 0.03;
    char buf[200];
    std::snprintf(buf, sizeof buf, "P(1,3,2,2) %.4f (0.05 +- 0.02 %s), P(2,4,3,3) %.4f (0.12 +- 0.03 %s)", r1,
                  ok1 ? "ok" : "missed", r2, ok2 ? "ok" : "missed");
    std::string detail = buf;
    if (!ok1) return {Status::fail, detail};
    if (ok2) return {Status::pass, detail};
    const auto* d = reference::find_discrepancy("divergence", "P(2,4,3,3) ratio");
    if (!d) return {Status::fail, detail};
    return {Status::deviation, detail + "; documented: " + std::string(d->reason)};
}

Outcome c10() {
    const auto pc = prime_composite_perm();
    TrajectorySettings ts;
    ts.m_floor.reset();
    ts.escape_threshold = 1000000;
    std::size_t short_ok = 0, len_ok = 0;
    const auto shorts = reference::primecomp_short_cycles();
    for (const auto& cyc : shorts) {
        const auto out = run_trajectory(*pc, to_big(cyc.front()), ts);
        if (const auto* c = std::get_if<CycleFound>(&out)) {
            std::vector<BigInt> want;
            for (auto x : cyc) want.push_back(to_big(x));
            if (c->cycle.elements && *c->cycle.elements == want) ++short_ok;
        }
    }
    std::ostringstream s;
    const auto lengths = reference::primecomp_cycle_lengths();
    for (const auto& ref : lengths) {
        const auto out = run_trajectory(*pc, to_big(ref.through), ts);
        const auto* c = std::get_if<CycleFound>(&out);
        const std::uint64_t got = c ? c->cycle.length : 0;
        if (got == ref.length) ++len_ok;
        s << " " << ref.through << ":" << got;
    }
    std::ostringstream d;
    d << short_ok << "/" << shorts.size() << " short cycles verbatim; lengths through" << s.str();
    return verdict(short_ok == shorts.size() && len_ok == lengths.size(), d.str());
}

Outcome c11() {
    CensusSettings cs = tables::paper_census_settings();
    cs.trajectory.m_floor.reset();
    cs.trajectory.escape_threshold = 1000000;
    const ResidueMap map(make_pabcd(2, 6, 5, 3));
    const auto rep = cycle_census(map, 6, cs);
    bool ok = rep.cycles.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i) ok = rep.cycles[i].length == 1 && rep.cycles[i].min == long(i);
    std::ostringstream s;
    s << "cycles below 6:";
    for (const auto& c : rep.cycles) s << " (" << c.min << ")";
    for (long seed : {3, 9, 15}) {
        const auto seg = orbit_segment(map, BigInt(seed), 10000);
        bool increasing = true;
        for (std::size_t i = 1; i < seg.size() && increasing; ++i) increasing = seg[i] > seg[i - 1];
        ok = ok && increasing;
        s << "; " << seed << (increasing ? " increasing" : " NOT increasing") << " for 1e4 steps";
    }
    return verdict(ok, s.str());
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"P(2,4,3,3) census, X0=1e6", c1},
        {"Collatz simple generalization census, X0=1e6", c2},
        {"Collatz extended generalizations", c3},
        {"convergent lists and max partial quotient", c4},
        {"L-floor table", c5},
        {"cross-over tables x3, L1, L2", c6},
        {"(K,L) candidate scan", c7},
        {"property suite", c8},
        {"divergence ratios, X0=1e5", c9},
        {"prime/composite cycles", c10},
        {"P(2,6,5,3) structural divergence", c11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Status::fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.status == Status::fail) ++failures;
        std::printf("criterion %2zu %-9s %s: %s [%.2fs]\n", i + 1, status_name(o.status), criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
