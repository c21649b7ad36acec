#include "permseq/tables.hpp"

#include "permseq/errors.hpp"
#include "permseq/json_io.hpp"
#include "permseq/reference_tables.hpp"
#include "permseq/selector.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

namespace permseq::tables {

namespace ref = permseq::reference;

namespace {

constexpr PabcdParams k1322{1, 3, 2, 2};
constexpr PabcdParams k2433{2, 4, 3, 3};

std::string perm_name(const PabcdParams& p) {
    std::ostringstream s;
    s << "P(" << p.a << ',' << p.b << ',' << p.c << ',' << p.d << ')';
    return s.str();
}

std::vector<PabcdParams> perms_for(const Options& opts) {
    if (opts.perm) return {*opts.perm};
    return {k1322, k2433};
}

// Outcome of comparing one computed entry against its printed value.
struct Verdict {
    std::string text;
    bool mismatch = false;
    bool discrepancy = false;
};

Verdict judge(std::string_view table, const std::string& entry, bool ok, std::string_view printed,
              const std::function<bool(const ref::Printed&)>& matches) {
    if (ok) return {"ok"};
    if (const auto* d = ref::find_discrepancy(table, entry)) {
        if (matches(ref::Printed{d->computed})) {
            return {std::string(ref::kind_name(d->kind)) + " (printed " + std::string(printed) + ")", false, true};
        }
    }
    return {"MISMATCH (printed " + std::string(printed) + ")", true, false};
}

void tally(Table& t, const Verdict& v) {
    t.mismatches += v.mismatch ? 1 : 0;
    t.discrepancies += v.discrepancy ? 1 : 0;
}

BigInt x0_or(const Options& opts, long fallback) { return opts.x0 ? *opts.x0 : BigInt(fallback); }

Table floor_table(const Options& opts) {
    Table t;
    t.id = "floor";
    t.title = "Lower bound for L of cycles with all elements >= X0 (largest admissible convergent denominator)";
    t.header = {"log10 X0"};
    const auto perms = perms_for(opts);
    for (const auto& p : perms) {
        t.header.push_back("L " + perm_name(p) + " >");
        if (opts.check) t.header.push_back("check");
    }
    t.checked = opts.check;
    for (const auto& row : ref::floor_table()) {
        BigInt x0 = 1;
        for (int i = 0; i < row.log10_x0; ++i) x0 *= 10;
        std::vector<std::string> cells{std::to_string(row.log10_x0)};
        for (const auto& p : perms) {
            const BigInt q = min_cycle_length_lower_bound(BoundContext::make(p, x0, kDefaultPrecision, false));
            cells.push_back(display(q));
            if (!opts.check) continue;
            std::optional<std::uint64_t> printed;
            if (p == k1322) printed = row.p1322;
            if (p == k2433) printed = row.p2433;
            if (!printed) {
                cells.push_back("-");
                continue;
            }
            const std::string shown = std::to_string(*printed);
            const std::string entry = perm_name(p) + " X0=1e" + std::to_string(row.log10_x0);
            const Verdict v = judge("floor", entry, q == to_big(*printed), shown,
                                    [&](const ref::Printed& c) { return c.within_unit(q.get_d()); });
            tally(t, v);
            cells.push_back(v.text);
        }
        t.rows.push_back(std::move(cells));
    }
    t.notes.push_back("L > q_n for the largest q_n with q_n + q_{n+1} <= alpha(alpha-eps)/beta * (X0-ab+a+1)/(ab-a-1) / q_n");
    return t;
}

std::vector<std::uint64_t> ms_or(const Options& opts, std::vector<std::uint64_t> fallback) {
    return opts.ms.empty() ? fallback : opts.ms;
}

const ref::CrossoverRef* find_ref_row(const PabcdParams& p, std::uint64_t m) {
    for (const auto& r : ref::crossover_table(p)) {
        if (r.m == m) return &r;
    }
    return nullptr;
}

// Integer-shown values compare within one unit, scientific ones within 0.5%
// for m >= 10 and within one unit of the last printed digit otherwise.
bool close_to(const ref::Printed& printed, std::uint64_t m, const BigInt& rounded, const PrecReal& exact) {
    const double x = rounded < BigInt(100000) ? rounded.get_d() : exact.to_double();
    if (m >= 10) return printed.within_relative(x, 0.005);
    return printed.within_unit(x);
}

Table x3_table(const Options& opts) {
    Table t;
    t.id = "x3";
    const BigInt x0 = x0_or(opts, 1000000);
    t.title = "Cross-over x3(m): Rhin lower bound = UbLm upper bound, L <= ceil(x3), X0 = " + display(x0);
    t.header = {"m"};
    const auto perms = perms_for(opts);
    std::vector<BoundContext> ctxs;
    std::vector<std::optional<RhinParams>> rhins;
    for (const auto& p : perms) {
        ctxs.push_back(BoundContext::make(p, x0));
        rhins.push_back(rhin_params_for(ctxs.back()));
        t.header.push_back("L " + perm_name(p) + " <=");
        if (opts.check) t.header.push_back("check");
        if (rhins.back()) {
            t.notes.push_back(perm_name(p) + ": |Lambda| > exp(-13.3 (" + rhins.back()->c_add.str(5) + " + ln L))");
        } else {
            t.notes.push_back(perm_name(p) + ": not a {2,3}-form; no Rhin constant (general Baker regime)");
        }
    }
    t.checked = opts.check;
    for (auto m : ms_or(opts, {1, 2, 3, 4, 5, 10, 20, 50, 100})) {
        std::vector<std::string> cells{std::to_string(m)};
        for (std::size_t i = 0; i < perms.size(); ++i) {
            if (!rhins[i]) {
                cells.push_back("n/a");
                if (opts.check) cells.push_back("-");
                continue;
            }
            const PrecReal x3 = crossover_x3(ctxs[i], *rhins[i], m);
            const BigInt up = x3.ceil();
            cells.push_back(display(up, x3));
            if (!opts.check) continue;
            const auto* r = find_ref_row(perms[i], m);
            if (!r) {
                cells.push_back("-");
                continue;
            }
            const Verdict v =
                judge("x3", perm_name(perms[i]) + " m=" + std::to_string(m), close_to(r->x3, m, up, x3), r->x3.text,
                      [&](const ref::Printed& c) { return close_to(c, m, up, x3); });
            tally(t, v);
            cells.push_back(v.text);
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table l1l2_table(const Options& opts) {
    Table t;
    t.id = "l1l2";
    const BigInt x0 = x0_or(opts, 1000000);
    t.title = "Convergent window: L >= ceil(x1(m)) forces K/L to be a convergent; L <= floor(x2(m)), X0 = " +
              display(x0);
    t.header = {"m"};
    const auto perms = perms_for(opts);
    std::vector<BoundContext> ctxs;
    std::vector<std::optional<BigInt>> amaxes;
    for (const auto& p : perms) {
        ctxs.push_back(BoundContext::make(p, x0));
        const auto rhin = rhin_params_for(ctxs.back());
        t.header.push_back("L1 " + perm_name(p));
        t.header.push_back("L2 " + perm_name(p));
        if (opts.check) t.header.push_back("check");
        if (rhin) {
            amaxes.push_back(reduction_partial_quotient(ctxs.back(), *rhin, 20));
            t.notes.push_back(perm_name(p) + ": max partial quotient over q <= x3(20) is " + amaxes.back()->get_str() +
                              "; x2 uses alpha/((amax+2) x)");
        } else {
            amaxes.push_back(std::nullopt);
            t.notes.push_back(perm_name(p) + ": no Rhin constant, so no q range for amax (general Baker regime)");
        }
    }
    t.checked = opts.check;
    for (auto m : ms_or(opts, {1, 2, 3, 4, 5, 10, 20})) {
        std::vector<std::string> cells{std::to_string(m)};
        for (std::size_t i = 0; i < perms.size(); ++i) {
            const PrecReal x1 = crossover_x1(ctxs[i], m);
            const BigInt l1 = x1.ceil();
            cells.push_back(display(l1, x1));
            if (!amaxes[i]) {
                cells.push_back("n/a");
                if (opts.check) cells.push_back("-");
                continue;
            }
            const PrecReal x2 = crossover_x2(ctxs[i], m, *amaxes[i]);
            const BigInt l2 = x2.floor();
            cells.push_back(display(l2, x2));
            if (!opts.check) continue;
            const auto* r = find_ref_row(perms[i], m);
            if (!r || !r->l1 || !r->l2) {
                cells.push_back("-");
                continue;
            }
            const std::string key = perm_name(perms[i]) + " m=" + std::to_string(m);
            const Verdict v1 = judge("l1l2", key + " L1", close_to(*r->l1, m, l1, x1), r->l1->text,
                                     [&](const ref::Printed& c) { return close_to(c, m, l1, x1); });
            const Verdict v2 = judge("l1l2", key + " L2", close_to(*r->l2, m, l2, x2), r->l2->text,
                                     [&](const ref::Printed& c) { return close_to(c, m, l2, x2); });
            tally(t, v1);
            tally(t, v2);
            cells.push_back(v1.text == "ok" ? v2.text : v2.text == "ok" ? "L1 " + v1.text : v1.text + "; " + v2.text);
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::string tuple_str(const CycleRecord& c) {
    return "(" + c.min.get_str() + "," + c.max.get_str() + "," + std::to_string(c.length) + "," +
           std::to_string(c.m) + ")";
}

std::vector<CycleKey> ref_keys(std::span<const ref::CycleRef> rows) {
    std::vector<CycleKey> out;
    for (const auto& r : rows) out.push_back({to_big(r.min), to_big(r.max), r.length});
    std::sort(out.begin(), out.end());
    return out;
}

CensusReport run_census(const std::string& selector, const BigInt& x0) {
    const auto x = to_u64(x0);
    if (!x) throw ResourceError("census bound too large");
    const Selection sel = parse_selector(selector);
    return cycle_census(*sel.map, *x, paper_census_settings());
}

// Listing table for one census compared row-by-row with a published list.
Table cycle_list_table(const std::string& id, const std::string& title, const std::string& selector,
                       std::span<const ref::CycleRef> published, const Options& opts) {
    Table t;
    t.id = id;
    const BigInt x0 = x0_or(opts, 1000000);
    const CensusReport rep = run_census(selector, x0);
    t.title = title + ", seeds < " + display(x0);
    t.header = {"nr", "x_min", "x_max", "length", "m"};
    if (opts.check) t.header.push_back("check");
    t.checked = opts.check;
    const auto cycles = rep.nontrivial_cycles();
    std::size_t nr = 0;
    for (const auto& c : cycles) {
        std::vector<std::string> row{std::to_string(++nr), c.min.get_str(), c.max.get_str(), std::to_string(c.length),
                                     std::to_string(c.m)};
        if (opts.check) {
            const auto it = std::find_if(published.begin(), published.end(), [&](const ref::CycleRef& r) {
                return to_big(r.min) == c.min && to_big(r.max) == c.max && r.length == c.length;
            });
            if (it == published.end()) {
                row.push_back("MISMATCH (not published)");
                ++t.mismatches;
            } else if (it->m != c.m) {
                row.push_back("m printed " + std::to_string(it->m));
                ++t.discrepancies;
            } else {
                row.push_back("ok");
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (opts.check) {
        const auto missing = ref_keys(published);
        const auto found = cycle_keys(cycles);
        for (const auto& k : missing) {
            if (!std::binary_search(found.begin(), found.end(), k)) {
                ++t.mismatches;
                t.notes.push_back("MISMATCH: published cycle (" + k.min.get_str() + "," + k.max.get_str() + "," +
                                  std::to_string(k.length) + ") not found");
            }
        }
    }
    t.notes.push_back("fixed point (0) omitted; m = cyclic local maxima; " + std::to_string(rep.divergent_min_count) +
                      " apparent divergent classes, " + std::to_string(rep.seeds_step_limited) + " step-limited seeds");
    return t;
}

Table collatz_ext_table(const Options& opts) {
    Table t;
    t.id = "cycles-collatz-ext";
    const BigInt x0 = x0_or(opts, 1000000);
    t.title = "Cycles of the Collatz permutation P(2,2,1,3), its simple and its extended generalizations, seeds < " +
              display(x0);
    t.header = {"f", "# of cycles", "(x_min,x_max,length,m)"};
    if (opts.check) t.header.push_back("check");
    t.checked = opts.check;

    std::vector<std::string> selectors{"pabcd:2,2,1,3", "pabcd:2,2,1,3/simple:1"};
    for (int k = 1; k <= 4; ++k) selectors.push_back("pabcd:2,2,1,3/ext:" + std::to_string(k));

    auto published_ext = ref::cycles_collatz_extended();
    std::vector<bool> used(published_ext.size(), false);
    for (const auto& s : selectors) {
        const auto cycles = run_census(s, x0).nontrivial_cycles();
        std::string list;
        for (const auto& c : cycles) list += (list.empty() ? "" : " ") + tuple_str(c);
        std::vector<std::string> row{s.substr(6), std::to_string(cycles.size()), list};
        if (opts.check) {
            const auto keys = cycle_keys(cycles);
            std::span<const ref::CycleRef> match;
            if (s == selectors[0]) {
                match = ref::cycles_collatz();
            } else if (s == selectors[1]) {
                match = ref::cycles_collatz_simple();
            } else {
                for (std::size_t i = 0; i < published_ext.size(); ++i) {
                    if (!used[i] && ref_keys(published_ext[i]) == keys) {
                        used[i] = true;
                        match = published_ext[i];
                        break;
                    }
                }
            }
            if (match.empty() || ref_keys(match) != keys) {
                row.push_back("MISMATCH");
                ++t.mismatches;
            } else {
                std::string m_notes;
                for (const auto& c : cycles) {
                    for (const auto& r : match) {
                        if (to_big(r.min) == c.min && to_big(r.max) == c.max && r.length == c.length && r.m != c.m) {
                            m_notes += (m_notes.empty() ? "" : ", ") + c.min.get_str() + ": m printed " +
                                       std::to_string(r.m);
                            ++t.discrepancies;
                        }
                    }
                }
                row.push_back(m_notes.empty() ? "ok" : "ok; " + m_notes);
            }
        }
        t.rows.push_back(std::move(row));
    }
    t.notes.push_back("ext:k is the k-th proper extended generalization in lexicographic order of target orders");
    t.notes.push_back("published row 6 prints (6,11,1,1); the cycle is (6,11) of length 2");
    return t;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string display(const BigInt& value) { return value.get_str(); }

std::string display(const BigInt& rounded, const PrecReal& exact) {
    if (rounded < BigInt(100000)) return rounded.get_str();
    mpfr_exp_t e10 = 0;
    char* digits = mpfr_get_str(nullptr, &e10, 10, 5, exact.raw(), MPFR_RNDN);
    std::string d(digits);
    mpfr_free_str(digits);
    std::string sign;
    if (!d.empty() && d[0] == '-') {
        sign = "-";
        d.erase(0, 1);
    }
    return sign + d.substr(0, 1) + "." + d.substr(1) + "e" + std::to_string(static_cast<long>(e10) - 1);
}

CensusSettings paper_census_settings() {
    CensusSettings s;
    s.trajectory.escape_threshold = BigInt(100'000'000);
    s.trajectory.m_floor = 20;
    s.trajectory.step_limit = 10'000'000;
    s.trajectory.keep_elements = false;
    return s;
}

std::vector<CycleKey> cycle_keys(const std::vector<CycleRecord>& cycles) {
    std::vector<CycleKey> out;
    for (const auto& c : cycles) out.push_back({c.min, c.max, c.length});
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<std::string>& table_ids() {
    static const std::vector<std::string> ids{"floor",       "x3", "l1l2", "cycles-2433", "cycles-collatz-simple",
                                              "cycles-collatz-ext"};
    return ids;
}

Table build(const std::string& id, const Options& opts) {
    if (id == "floor") return floor_table(opts);
    if (id == "x3") return x3_table(opts);
    if (id == "l1l2") return l1l2_table(opts);
    if (id == "cycles-2433") {
        return cycle_list_table(id, "Cycles of P(2,4,3,3)", "pabcd:2,4,3,3", ref::cycles_2433(), opts);
    }
    if (id == "cycles-collatz-simple") {
        return cycle_list_table(id, "Cycles of the simple generalization of the Collatz permutation",
                                "pabcd:2,2,1,3/simple:1", ref::cycles_collatz_simple(), opts);
    }
    if (id == "cycles-collatz-ext") return collatz_ext_table(opts);
    std::string known;
    for (const auto& k : table_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ParseError("unknown table '" + id + "' (known: " + known + ")", 0);
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ParseError("unknown format '" + name + "' (text, csv, json)", 0);
}

std::string render(const Table& t, Format fmt) {
    std::ostringstream out;
    if (fmt == Format::json) {
        Json j;
        j["id"] = t.id;
        j["title"] = t.title;
        j["header"] = t.header;
        j["rows"] = t.rows;
        j["notes"] = t.notes;
        if (t.checked) {
            j["check"] = {{"mismatches", t.mismatches}, {"discrepancies", t.discrepancies}};
        }
        out << j.dump(2) << '\n';
        return out.str();
    }
    if (fmt == Format::csv) {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
            out << '\n';
        };
        line(t.header);
        for (const auto& r : t.rows) line(r);
        return out.str();
    }
    std::vector<std::size_t> width(t.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(t.header);
    for (const auto& r : t.rows) measure(r);
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const bool last = i + 1 == cells.size();
            out << (i ? "  " : "");
            if (last) {
                out << cells[i];
            } else {
                out << std::string(width[i] - std::min(width[i], cells[i].size()), ' ') << cells[i];
            }
        }
        out << '\n';
    };
    out << t.title << "\n\n";
    line(t.header);
    for (const auto& r : t.rows) line(r);
    if (!t.notes.empty()) out << '\n';
    for (const auto& n : t.notes) out << "  " << n << '\n';
    if (t.checked) {
        out << "\ncheck: " << (t.mismatches ? "FAILED" : "passed") << " (" << t.mismatches << " mismatches, "
            << t.discrepancies << " documented discrepancies)\n";
    }
    return out.str();
}

}  // namespace permseq::tables
