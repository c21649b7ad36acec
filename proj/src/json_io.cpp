#include "permseq/json_io.hpp"

#include "permseq/errors.hpp"

#include <sstream>

namespace permseq {

Json big_to_json(const BigInt& x) {
    if (auto v = to_u64(x)) return *v;
    return x.get_str();
}

BigInt big_from_json(const Json& j) {
    if (j.is_number_unsigned()) return to_big(j.get<std::uint64_t>());
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw ParseError("integer must be non-negative", 0);
        return to_big(static_cast<std::uint64_t>(v));
    }
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw ParseError("expected an integer", 0);
}

Json to_json(const PermSpec& spec) {
    Json j;
    j["label"] = spec.label;
    if (spec.params) {
        j["params"] = {{"a", spec.params->a}, {"b", spec.params->b}, {"c", spec.params->c}, {"d", spec.params->d}};
    } else {
        j["params"] = nullptr;
    }
    Json rules = Json::array();
    for (const auto& r : spec.rules) {
        rules.push_back({{"src_mod", r.src_mod}, {"src_res", r.src_res}, {"dst_mod", r.dst_mod}, {"dst_res", r.dst_res}});
    }
    j["rules"] = std::move(rules);
    return j;
}

namespace {

std::uint64_t field_u64(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
    const Json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError(std::string("field '") + key + "' must be a non-negative integer", 0);
    }
    return v.get<std::uint64_t>();
}

}  // namespace

PermSpec perm_spec_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("permutation document must be an object", 0);
    PermSpec spec;
    if (j.contains("label") && j.at("label").is_string()) spec.label = j.at("label").get<std::string>();
    if (j.contains("params") && !j.at("params").is_null()) {
        const Json& p = j.at("params");
        spec.params = PabcdParams{field_u64(p, "a"), field_u64(p, "b"), field_u64(p, "c"), field_u64(p, "d")};
    }
    if (!j.contains("rules") || !j.at("rules").is_array()) throw ParseError("missing 'rules' array", 0);
    for (const Json& r : j.at("rules")) {
        spec.rules.push_back(
            {field_u64(r, "src_mod"), field_u64(r, "src_res"), field_u64(r, "dst_mod"), field_u64(r, "dst_res")});
    }
    if (spec.label.empty()) spec.label = "custom";
    return spec;
}

Json to_json(const CycleRecord& c) {
    Json j;
    j["min"] = big_to_json(c.min);
    j["max"] = big_to_json(c.max);
    j["length"] = c.length;
    j["K"] = c.K;
    j["L"] = c.L;
    j["m"] = c.m;
    if (c.elements) {
        Json e = Json::array();
        for (const auto& x : *c.elements) e.push_back(big_to_json(x));
        j["elements"] = std::move(e);
    }
    return j;
}

CycleRecord cycle_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("cycle record must be an object", 0);
    CycleRecord c;
    c.min = big_from_json(j.at("min"));
    c.max = big_from_json(j.at("max"));
    c.length = field_u64(j, "length");
    c.K = field_u64(j, "K");
    c.L = field_u64(j, "L");
    c.m = field_u64(j, "m");
    if (j.contains("elements")) {
        std::vector<BigInt> xs;
        for (const Json& x : j.at("elements")) xs.push_back(big_from_json(x));
        c.elements = std::move(xs);
    }
    return c;
}

Json to_json(const TrajectoryOutcome& outcome) {
    return std::visit(
        [](const auto& o) -> Json {
            using T = std::decay_t<decltype(o)>;
            Json j;
            if constexpr (std::is_same_v<T, CycleFound>) {
                j["outcome"] = "cycle";
                j["cycle"] = to_json(o.cycle);
            } else if constexpr (std::is_same_v<T, Escaped>) {
                j["outcome"] = "escaped";
                j["threshold_crossed"] = big_to_json(o.threshold_crossed);
                j["steps_taken"] = o.steps_taken;
                j["maxima_seen"] = o.maxima_seen;
                j["min_seen"] = big_to_json(o.min_seen);
            } else {
                j["outcome"] = "step_limit";
                j["steps"] = o.steps;
            }
            return j;
        },
        outcome);
}

Json to_json(const CensusReport& r) {
    Json j;
    j["label"] = r.label;
    if (r.params) {
        j["params"] = {{"a", r.params->a}, {"b", r.params->b}, {"c", r.params->c}, {"d", r.params->d}};
    } else {
        j["params"] = nullptr;
    }
    j["x0"] = r.x0;
    j["first_seed"] = r.first_seed;
    Json cycles = Json::array();
    for (const auto& c : r.cycles) cycles.push_back(to_json(c));
    j["cycles"] = std::move(cycles);
    j["divergent_min_count"] = r.divergent_min_count;
    j["divergent_seed_count"] = r.divergent_seed_count;
    j["seeds_in_cycles"] = r.seeds_in_cycles;
    j["seeds_step_limited"] = r.seeds_step_limited;
    j["one_sided_escapes"] = r.one_sided_escapes;
    Json minima = Json::array();
    for (const auto& x : r.divergent_minima) minima.push_back(big_to_json(x));
    j["divergent_minima"] = std::move(minima);
    Json s;
    s["escape_threshold"] = big_to_json(r.settings.escape_threshold);
    if (r.settings.m_floor) {
        s["m_floor"] = *r.settings.m_floor;
    } else {
        s["m_floor"] = nullptr;
    }
    s["step_limit"] = r.settings.step_limit;
    j["settings"] = std::move(s);
    return j;
}

std::string census_csv(const CensusReport& r) {
    std::ostringstream out;
    out << "nr,x_min,x_max,length,m\n";
    std::size_t nr = 0;
    for (const auto& c : r.cycles) {
        out << ++nr << ',' << c.min.get_str() << ',' << c.max.get_str() << ',' << c.length << ',' << c.m << '\n';
    }
    return out.str();
}

}  // namespace permseq
