// permseq: permutation sequences, cycle censuses and cycle bounds.

#include "permseq/bounds.hpp"
#include "permseq/census.hpp"
#include "permseq/errors.hpp"
#include "permseq/json_io.hpp"
#include "permseq/selector.hpp"
#include "permseq/tables.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace permseq;

namespace {

constexpr int kExitParse = 64;

// Numeric flags are kept as strings so "1e8" and "10_000" work.
struct TrajectoryFlags {
    std::string escape = "1e8";
    std::string m_floor;  // empty: per-permutation default
    std::string step_limit = "1e7";

    void add(CLI::App* cmd) {
        cmd->add_option("--escape", escape, "Escape threshold")->capture_default_str();
        cmd->add_option("--m-floor", m_floor,
                        "Escape needs more than this many local maxima; 'none' disables (default depends on --perm)");
        cmd->add_option("--step-limit", step_limit, "Maximum steps per trajectory")->capture_default_str();
    }

    TrajectorySettings settings(const Selection& sel) const {
        TrajectorySettings s;
        s.escape_threshold = parse_integer(escape);
        if (m_floor.empty()) {
            s.m_floor = default_m_floor(sel);
        } else if (m_floor == "none") {
            s.m_floor.reset();
        } else {
            s.m_floor = u64(m_floor, "--m-floor");
        }
        s.step_limit = u64(step_limit, "--step-limit");
        return s;
    }

    static std::uint64_t u64(const std::string& text, const char* flag) {
        const auto v = to_u64(parse_integer(text));
        if (!v) throw ParseError(std::string(flag) + " out of range", 0);
        return *v;
    }
};

std::uint64_t flag_u64(const std::string& text, const char* flag) { return TrajectoryFlags::u64(text, flag); }

// "1..5", "1,2,10" or "1..5,10,20".
std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(flag_u64(part, "list"));
            continue;
        }
        const auto lo = flag_u64(part.substr(0, dots), "list"), hi = flag_u64(part.substr(dots + 2), "list");
        if (lo > hi) throw ParseError("empty range '" + part + "'", 0);
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw ParseError("empty list", 0);
    return out;
}

// "1e3..1e10" runs over powers of ten; anything else is a list of integers.
std::vector<BigInt> parse_x0_list(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos || text.find(',') != std::string::npos) {
        std::vector<BigInt> out;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(parse_integer(part));
        return out;
    }
    BigInt lo = parse_integer(text.substr(0, dots)), hi = parse_integer(text.substr(dots + 2));
    std::vector<BigInt> out;
    for (BigInt x = lo; x <= hi; x *= 10) out.push_back(x);
    return out;
}

struct PermFlags {
    std::string perm;
    bool inverse = false;

    void add(CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--perm", perm,
                                    "pabcd:a,b,c,d[/simple:r|/ext:r], fafc:a,b,fa,c,d,fc, primecomp or file:path.json");
        if (required) opt->required();
        cmd->add_flag("--inverse", inverse, "Use the inverse permutation");
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write '" + path + "'");
    out << content;
}

std::string join_elements(const std::vector<BigInt>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + x.get_str();
    return s;
}

// Bounds need b > d; P(2,2,1,3)-style parameters are analysed through their
// inverse, which has the same trajectories read backwards.
PabcdParams bounds_params(const std::string& text) {
    const Selection sel = parse_selector(text, false, false);
    if (!sel.params || sel.mode) throw ParseError("bounds need a plain pabcd:a,b,c,d selector", 0);
    PabcdParams p = *sel.params;
    if (p.b < p.d) {
        std::cerr << "note: analysing P(" << p.c << ',' << p.d << ',' << p.a << ',' << p.b << "), the inverse\n";
        p = {p.c, p.d, p.a, p.b};
    }
    return p;
}

// ---------------------------------------------------------------------------

int cmd_run(const PermFlags& pf, const TrajectoryFlags& tf, const std::string& x0_text, bool backward, bool json) {
    const Selection sel = parse_selector(pf.perm, pf.inverse);
    const BigInt x0 = parse_integer(x0_text);
    const TrajectoryOutcome out =
        run_trajectory(*sel.map, x0, tf.settings(sel), backward ? Direction::backward : Direction::forward);
    if (json) {
        Json j = to_json(out);
        j["perm"] = sel.map->label();
        j["x0"] = big_to_json(x0);
        std::cout << j.dump(2) << '\n';
    } else if (const auto* c = std::get_if<CycleFound>(&out)) {
        const auto& r = c->cycle;
        std::cout << "cycle: min " << r.min << ", max " << r.max << ", length " << r.length << ", K " << r.K << ", L "
                  << r.L << ", m " << r.m << '\n';
        if (r.elements) std::cout << "elements: " << join_elements(*r.elements) << '\n';
    } else if (const auto* e = std::get_if<Escaped>(&out)) {
        std::cout << "escaped: " << e->threshold_crossed << " after " << e->steps_taken << " steps, "
                  << e->maxima_seen << " local maxima, minimum seen " << e->min_seen << '\n';
    } else {
        std::cout << "step limit: " << std::get<StepLimit>(out).steps << " steps without closing or escaping\n";
    }
    if (std::holds_alternative<CycleFound>(out)) return 0;
    return std::holds_alternative<Escaped>(out) ? 2 : 3;
}

int cmd_census(const PermFlags& pf, const TrajectoryFlags& tf, const std::string& x0_text, bool no_backward,
               const std::string& out_path, const std::string& format) {
    const Selection sel = parse_selector(pf.perm, pf.inverse);
    CensusSettings cs;
    cs.trajectory = tf.settings(sel);
    cs.trajectory.keep_elements = false;
    cs.explore_backward = !no_backward;
    const CensusReport rep = cycle_census(*sel.map, flag_u64(x0_text, "--x0"), cs);
    if (!out_path.empty()) {
        const bool csv = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv";
        write_file(out_path, csv ? census_csv(rep) : to_json(rep).dump(2) + "\n");
    }
    const auto fmt = tables::parse_format(format);
    if (fmt == tables::Format::json) {
        std::cout << to_json(rep).dump(2) << '\n';
        return 0;
    }
    if (fmt == tables::Format::csv) {
        std::cout << census_csv(rep);
        return 0;
    }
    std::cout << "census of " << rep.label << ", seeds " << rep.first_seed << " .. " << rep.x0 - 1 << '\n';
    std::cout << "escape above " << rep.settings.escape_threshold << " after "
              << (rep.settings.m_floor ? "more than " + std::to_string(*rep.settings.m_floor) + " local maxima"
                                       : "any number of local maxima")
              << ", step limit " << rep.settings.step_limit << "\n\n";
    std::cout << census_csv(rep) << '\n';
    std::cout << "seeds in cycles: " << rep.seeds_in_cycles << '\n'
              << "seeds escaped: " << rep.divergent_seed_count << " in " << rep.divergent_min_count
              << " apparent divergent classes\n"
              << "seeds step-limited: " << rep.seeds_step_limited << '\n';
    return 0;
}

int cmd_sweep(const std::string& perm, const std::string& mode_text, const std::string& first_text,
              const std::string& x0_text, const TrajectoryFlags& tf, unsigned threads, const std::string& format) {
    const Selection sel = parse_selector(perm, false, false);
    if (!sel.params || sel.mode) throw ParseError("sweep needs a plain pabcd:a,b,c,d base", 0);
    GeneralizationMode mode;
    if (mode_text == "simple") {
        mode = GeneralizationMode::simple;
    } else if (mode_text == "ext" || mode_text == "extended") {
        mode = GeneralizationMode::extended;
    } else {
        throw ParseError("--mode must be simple or ext", 0);
    }
    Selection gen_sel = sel;
    gen_sel.mode = mode;
    CensusSettings cs;
    cs.trajectory = tf.settings(gen_sel);
    const auto rows = sweep_generalizations(*sel.params, mode, flag_u64(first_text, "--first"),
                                            flag_u64(x0_text, "--x0"), cs, threads);
    tables::Table t;
    t.id = "sweep";
    t.title = "Generalizations of " + sel.spec->label + " (" + mode_text + "), seeds < " + x0_text;
    t.header = {"rank", "cycles", "max_cycle_length", "max_element", "divergent_classes"};
    std::uint64_t lo_c = UINT64_MAX, hi_c = 0, lo_len = UINT64_MAX, hi_len = 0;
    BigInt lo_el, hi_el;
    bool first = true;
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.rank), std::to_string(r.cycles), std::to_string(r.max_cycle_length),
                          r.max_element.get_str(), std::to_string(r.divergent_min_count)});
        lo_c = std::min<std::uint64_t>(lo_c, r.cycles);
        hi_c = std::max<std::uint64_t>(hi_c, r.cycles);
        lo_len = std::min(lo_len, r.max_cycle_length);
        hi_len = std::max(hi_len, r.max_cycle_length);
        if (first || r.max_element < lo_el) lo_el = r.max_element;
        if (first || r.max_element > hi_el) hi_el = r.max_element;
        first = false;
    }
    if (!rows.empty()) {
        t.notes.push_back("cycles " + std::to_string(lo_c) + " .. " + std::to_string(hi_c) + ", max cycle length " +
                          std::to_string(lo_len) + " .. " + std::to_string(hi_len) + ", max element " +
                          lo_el.get_str() + " .. " + hi_el.get_str() + " (fixed point 0 excluded)");
    }
    std::cout << tables::render(t, tables::parse_format(format));
    return 0;
}

int cmd_bounds_table(const std::string& perm, const std::string& x0_text, const std::string& ms_text,
                     const std::string& format) {
    const PabcdParams p = bounds_params(perm);
    const auto ctx = BoundContext::make(p, parse_integer(x0_text));
    const auto rhin = rhin_params_for(ctx);
    if (!rhin) throw ParameterError("no Rhin constant for these parameters (general Baker regime)");
    const BigInt amax = reduction_partial_quotient(ctx, *rhin, 20);
    tables::Table t;
    t.id = "bounds";
    t.title = "Cross-overs for P(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," + std::to_string(p.c) +
              "," + std::to_string(p.d) + "), X0 = " + x0_text;
    t.header = {"m", "x3", "L<=ceil(x3)", "x1", "L1=ceil(x1)", "x2", "L2=floor(x2)", "amax"};
    for (auto m : parse_list(ms_text)) {
        const auto row = crossover_tables(ctx, *rhin, m, m <= 20 ? std::optional<BigInt>(amax) : std::nullopt);
        t.rows.push_back({std::to_string(m), row.x3.str(8), tables::display(row.l_max, row.x3), row.x1.str(8),
                          tables::display(row.l1, row.x1), row.x2.str(8), tables::display(row.l2, row.x2),
                          row.amax.get_str()});
    }
    t.notes.push_back("c_add = " + rhin->c_add.str(6) + ", eps = " + ctx.eps.str(6) +
                      "; amax is measured over q <= x3(max(m, 20))");
    std::cout << tables::render(t, tables::parse_format(format));
    return 0;
}

int cmd_bounds_convergents(const std::string& perm, const std::string& qmax_text, const std::string& format) {
    const PabcdParams p = bounds_params(perm);
    const auto ctx = BoundContext::make(p, BigInt(1000000), kDefaultPrecision, false);
    const BigInt qmax = parse_integer(qmax_text);
    tables::Table t;
    t.id = "convergents";
    t.title = "Convergents K/L of rho = log(b/d) / log(cd/ab) = " + ctx.rho.str(20);
    t.header = {"n", "K=p_n", "L=q_n", "a_n"};
    BigInt amax = 0;
    for (const auto& c : rho_convergents(ctx, qmax)) {
        if (c.q > qmax) break;
        t.rows.push_back({std::to_string(c.index), c.p.get_str(), c.q.get_str(), c.a.get_str()});
        if (c.index > 0 && c.a > amax) amax = c.a;
    }
    t.notes.push_back("largest partial quotient a_n (n >= 1) with q_n <= " + qmax.get_str() + ": " + amax.get_str());
    std::cout << tables::render(t, tables::parse_format(format));
    return 0;
}

int cmd_bounds_candidates(const std::string& perm, const std::string& x0_text, const std::string& lmin_text,
                          const std::string& lmax_text, const std::string& format) {
    const PabcdParams p = bounds_params(perm);
    const auto ctx = BoundContext::make(p, parse_integer(x0_text));
    const auto pairs = candidate_scan(ctx, flag_u64(lmin_text, "--lmin"), flag_u64(lmax_text, "--lmax"));
    tables::Table t;
    t.id = "candidates";
    t.title = "(K,L) with 0 < Lambda < eps*beta/(alpha-eps)*L or 0 < -Lambda < eps*beta/alpha*L, X0 = " + x0_text;
    t.header = {"K", "L", "Lambda"};
    for (const auto& c : pairs) {
        t.rows.push_back({c.K.get_str(), std::to_string(c.L), lambda_form(ctx, c.K, to_big(c.L)).str(6)});
    }
    t.notes.push_back(std::to_string(pairs.size()) + " pairs");
    std::cout << tables::render(t, tables::parse_format(format));
    return 0;
}

int cmd_bounds_floor(const std::string& perm, const std::string& x0_text, const std::string& format) {
    const PabcdParams p = bounds_params(perm);
    tables::Table t;
    t.id = "floor";
    t.title = "Lower bound for L of cycles with all elements >= X0";
    t.header = {"X0", "L >"};
    for (const auto& x0 : parse_x0_list(x0_text)) {
        const auto ctx = BoundContext::make(p, x0, kDefaultPrecision, false);
        t.rows.push_back({x0.get_str(), min_cycle_length_lower_bound(ctx).get_str()});
    }
    std::cout << tables::render(t, tables::parse_format(format));
    return 0;
}

int cmd_bounds_report(const std::string& perm, const std::string& x0_text, const std::string& ms_text,
                      const std::string& census_text) {
    const PabcdParams p = bounds_params(perm);
    const auto ctx = BoundContext::make(p, parse_integer(x0_text));
    const auto rhin = rhin_params_for(ctx);
    if (!rhin) throw ParameterError("no Rhin constant for these parameters (general Baker regime)");
    const BigInt amax = reduction_partial_quotient(ctx, *rhin, 20);

    std::vector<CycleRecord> cycles;
    const std::string census_bound = census_text.empty() ? x0_text : census_text;
    if (census_bound != "0") {
        const ResidueMap map(make_pabcd(p.a, p.b, p.c, p.d));
        CensusSettings cs = tables::paper_census_settings();
        cs.trajectory.keep_elements = false;
        cycles = cycle_census(map, flag_u64(census_bound, "--census-x0"), cs).nontrivial_cycles();
    }
    for (auto m : parse_list(ms_text)) {
        const auto r = mcycle_exclusion_report(ctx, *rhin, m, cycles, m <= 20 ? std::optional<BigInt>(amax) : std::nullopt);
        std::cout << "m=" << m << ": L > " << r.l_floor << ", L1 = " << r.row.l1 << ", L2 = " << r.row.l2
                  << ", L <= " << r.row.l_max << '\n';
        std::cout << "  " << r.conclusion << '\n';
    }
    return 0;
}

int cmd_table(const std::string& id, const std::string& perm, const std::string& x0_text, const std::string& ms_text,
              bool check, const std::string& format) {
    tables::Options opts;
    if (!perm.empty()) opts.perm = bounds_params(perm);
    if (!x0_text.empty()) opts.x0 = parse_integer(x0_text);
    if (!ms_text.empty()) opts.ms = parse_list(ms_text);
    opts.check = check;
    const auto t = tables::build(id, opts);
    std::cout << tables::render(t, tables::parse_format(format));
    return check && t.mismatches ? 1 : 0;
}

std::string describe_rule(const ResidueRule& r) {
    std::ostringstream s;
    s << r.src_mod << "n+" << r.src_res << " -> " << r.dst_mod << "n+" << r.dst_res;
    return s.str();
}

int cmd_perm_show(const PermFlags& pf, bool json) {
    const Selection sel = parse_selector(pf.perm, pf.inverse, false);
    if (!sel.spec) {
        std::cout << "primecomp: 1 <-> 1, 2n <-> P(n), 2n+1 <-> C(n) (P(1) = 2, C(1) = 4)\n";
        return 0;
    }
    if (json) {
        std::cout << to_json(*sel.spec).dump(2) << '\n';
        return 0;
    }
    std::cout << sel.spec->label << '\n';
    for (const auto& r : sel.spec->rules) std::cout << "  " << describe_rule(r) << '\n';
    return 0;
}

int cmd_perm_validate(const PermFlags& pf) {
    const Selection sel = parse_selector(pf.perm, pf.inverse, false);
    if (!sel.spec) {
        std::cout << "primecomp is a bijection of the positive integers by construction\n";
        return 0;
    }
    const auto rep = verify_bijection(*sel.spec);
    std::cout << rep.describe() << '\n';
    return rep.valid() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permutation sequences of residue-class bijections: cycles, censuses and cycle bounds"};
    app.require_subcommand(1);
    std::string format = "text";

    // run
    auto* run = app.add_subcommand("run", "Iterate one trajectory (exit 0 cycle, 2 escaped, 3 step limit)");
    PermFlags run_perm;
    TrajectoryFlags run_traj;
    std::string run_x0;
    bool run_json = false, run_backward = false;
    run_perm.add(run);
    run_traj.add(run);
    run->add_option("--x0", run_x0, "Starting value")->required();
    run->add_flag("--backward", run_backward, "Iterate the inverse map");
    run->add_flag("--json", run_json, "Print the outcome as JSON");

    // census
    auto* census = app.add_subcommand("census", "Classify every seed below X0");
    PermFlags census_perm;
    TrajectoryFlags census_traj;
    std::string census_x0, census_out;
    bool census_no_backward = false;
    census_perm.add(census);
    census_traj.add(census);
    census->add_option("--x0", census_x0, "Seeds are taken below X0")->required();
    census->add_flag("--no-backward", census_no_backward, "Do not explore escaped seeds backwards");
    census->add_option("--out", census_out, "Write the report (.json, or .csv for the cycle table)");
    census->add_option("--format", format, "text, csv or json")->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Census every generalization rank 1..N");
    std::string sweep_perm, sweep_mode = "simple", sweep_first, sweep_x0;
    TrajectoryFlags sweep_traj;
    unsigned sweep_threads = 0;
    sweep->add_option("--perm", sweep_perm, "Base pabcd:a,b,c,d")->required();
    sweep->add_option("--mode", sweep_mode, "simple or ext")->capture_default_str();
    sweep->add_option("--first", sweep_first, "Number of ranks")->required();
    sweep->add_option("--x0", sweep_x0, "Census bound")->required();
    sweep->add_option("--threads", sweep_threads, "Worker threads (0 = hardware)");
    sweep->add_option("--format", format, "text, csv or json")->capture_default_str();
    sweep_traj.add(sweep);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Diophantine cycle bounds for P(a,b,c,d)");
    bounds->require_subcommand(1);
    std::string b_perm, b_x0 = "1e6", b_ms = "1..5", b_qmax = "1e5", b_lmin = "1", b_lmax, b_census;
    auto* b_table = bounds->add_subcommand("table", "Cross-overs x3, x1, x2 per m");
    auto* b_conv = bounds->add_subcommand("convergents", "Convergents of rho");
    auto* b_cand = bounds->add_subcommand("candidates", "(K,L) pairs passing the L-form bound");
    auto* b_floor = bounds->add_subcommand("floor", "Lower bound for L as a function of X0");
    auto* b_report = bounds->add_subcommand("report", "Per-m cycle exclusion report");
    for (auto* c : {b_table, b_conv, b_cand, b_floor, b_report}) {
        c->add_option("--perm", b_perm, "pabcd:a,b,c,d")->required();
        if (c != b_report) c->add_option("--format", format, "text, csv or json")->capture_default_str();
    }
    for (auto* c : {b_table, b_cand, b_report}) c->add_option("--x0", b_x0, "Numerical cycle floor")->capture_default_str();
    b_floor->add_option("--x0", b_x0, "X0 values: 1e3..1e10 (decades) or a list")->capture_default_str();
    for (auto* c : {b_table, b_report}) c->add_option("--m", b_ms, "m values: 1..5 or 1,2,10")->capture_default_str();
    b_conv->add_option("--qmax", b_qmax, "Largest denominator")->capture_default_str();
    b_cand->add_option("--lmin", b_lmin, "Smallest L")->capture_default_str();
    b_cand->add_option("--lmax", b_lmax, "Largest L")->required();
    b_report->add_option("--census-x0", b_census, "Census bound for found cycles (default X0, 0 to skip)");

    // table
    auto* table = app.add_subcommand("table", "Reproduce a published table");
    std::string t_id, t_perm, t_x0, t_ms;
    bool t_check = false;
    table->add_option("id", t_id, "floor, x3, l1l2, cycles-2433, cycles-collatz-simple, cycles-collatz-ext")->required();
    table->add_option("--perm", t_perm, "Restrict floor/x3/l1l2 to pabcd:a,b,c,d");
    table->add_option("--x0", t_x0, "Numerical cycle floor or census bound (default 1e6)");
    table->add_option("--m", t_ms, "m values");
    table->add_flag("--check", t_check, "Compare with the published values; exit 1 on mismatch");
    table->add_option("--format", format, "text, csv or json")->capture_default_str();

    // perm
    auto* perm = app.add_subcommand("perm", "Inspect a permutation");
    perm->require_subcommand(1);
    PermFlags p_flags;
    bool p_json = false;
    auto* p_show = perm->add_subcommand("show", "Print the rule list");
    auto* p_validate = perm->add_subcommand("validate", "Check that the rules define a bijection");
    p_flags.add(p_show);
    p_flags.add(p_validate);
    p_show->add_flag("--json", p_json, "Print as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*run) return cmd_run(run_perm, run_traj, run_x0, run_backward, run_json);
        if (*census) {
            return cmd_census(census_perm, census_traj, census_x0, census_no_backward, census_out, format);
        }
        if (*sweep) return cmd_sweep(sweep_perm, sweep_mode, sweep_first, sweep_x0, sweep_traj, sweep_threads, format);
        if (*b_table) return cmd_bounds_table(b_perm, b_x0, b_ms, format);
        if (*b_conv) return cmd_bounds_convergents(b_perm, b_qmax, format);
        if (*b_cand) return cmd_bounds_candidates(b_perm, b_x0, b_lmin, b_lmax, format);
        if (*b_floor) return cmd_bounds_floor(b_perm, b_x0, format);
        if (*b_report) return cmd_bounds_report(b_perm, b_x0, b_ms, b_census);
        if (*table) return cmd_table(t_id, t_perm, t_x0, t_ms, t_check, format);
        if (*p_show) return cmd_perm_show(p_flags, p_json);
        if (*p_validate) return cmd_perm_validate(p_flags);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
