// Python bindings. Integers cross the boundary as Python ints (converted
// through decimal strings); structured results come back as dicts.

#include "permseq/bounds.hpp"
#include "permseq/census.hpp"
#include "permseq/errors.hpp"
#include "permseq/json_io.hpp"
#include "permseq/selector.hpp"
#include "permseq/tables.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace permseq;

namespace {

BigInt from_py(const py::int_& x) { return BigInt(py::str(x).cast<std::string>()); }

py::int_ to_py(const BigInt& x) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::object json_to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

PabcdParams params_of(const std::vector<std::uint64_t>& p) {
    if (p.size() != 4) throw ParameterError("expected (a, b, c, d)");
    return {p[0], p[1], p[2], p[3]};
}

TrajectorySettings trajectory_settings(const Selection& sel, const py::int_& escape, const py::object& m_floor,
                                       std::uint64_t step_limit) {
    TrajectorySettings s;
    s.escape_threshold = from_py(escape);
    if (py::isinstance<py::str>(m_floor) && m_floor.cast<std::string>() == "default") {
        s.m_floor = default_m_floor(sel);
    } else if (m_floor.is_none()) {
        s.m_floor.reset();
    } else {
        s.m_floor = m_floor.cast<std::uint64_t>();
    }
    s.step_limit = step_limit;
    return s;
}

class Perm {
public:
    Perm(const std::string& selector, bool inverse) : sel_(parse_selector(selector, inverse)) {}

    py::int_ apply(const py::int_& x) const { return to_py(sel_.map->apply(from_py(x))); }
    py::int_ apply_inv(const py::int_& x) const { return to_py(sel_.map->apply_inv(from_py(x))); }
    std::string label() const { return sel_.map->label(); }
    py::object spec() const { return sel_.spec ? json_to_py(to_json(*sel_.spec)) : py::none(); }
    std::optional<std::uint64_t> default_m_floor() const { return permseq::default_m_floor(sel_); }

    py::object run(const py::int_& x0, const py::int_& escape, const py::object& m_floor, std::uint64_t step_limit,
                   bool backward) const {
        const auto s = trajectory_settings(sel_, escape, m_floor, step_limit);
        const BigInt start = from_py(x0);
        TrajectoryOutcome out;
        {
            py::gil_scoped_release release;
            out = run_trajectory(*sel_.map, start, s, backward ? Direction::backward : Direction::forward);
        }
        return json_to_py(to_json(out));
    }

    py::object census(std::uint64_t x0, const py::int_& escape, const py::object& m_floor, std::uint64_t step_limit,
                      bool explore_backward) const {
        CensusSettings cs;
        cs.trajectory = trajectory_settings(sel_, escape, m_floor, step_limit);
        cs.trajectory.keep_elements = false;
        cs.explore_backward = explore_backward;
        CensusReport rep;
        {
            py::gil_scoped_release release;
            rep = cycle_census(*sel_.map, x0, cs);
        }
        return json_to_py(to_json(rep));
    }

private:
    Selection sel_;
};

py::dict ccset_report(const CCSetReport& r) {
    py::dict d;
    d["valid"] = r.valid;
    d["density_sum"] = r.density_sum.get_str();
    d["lcm"] = r.lcm;
    d["witness"] = r.witness;
    d["description"] = r.describe();
    return d;
}

}  // namespace

PYBIND11_MODULE(_permseq, m) {
    m.doc() = "Residue-class permutations: cycles, censuses and diophantine cycle bounds";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<NoCrossingError>(m, "NoCrossingError", base.ptr());

    py::class_<Perm>(m, "Perm")
        .def(py::init<const std::string&, bool>(), py::arg("selector"), py::arg("inverse") = false)
        .def("__call__", &Perm::apply)
        .def("apply", &Perm::apply)
        .def("apply_inv", &Perm::apply_inv)
        .def_property_readonly("label", &Perm::label)
        .def_property_readonly("spec", &Perm::spec)
        .def_property_readonly("default_m_floor", &Perm::default_m_floor)
        .def("run", &Perm::run, py::arg("x0"), py::arg("escape") = 100'000'000, py::arg("m_floor") = "default",
             py::arg("step_limit") = 10'000'000, py::arg("backward") = false)
        .def("census", &Perm::census, py::arg("x0"), py::arg("escape") = 100'000'000,
             py::arg("m_floor") = "default", py::arg("step_limit") = 10'000'000, py::arg("explore_backward") = true)
        .def("__repr__", [](const Perm& p) { return "Perm(" + p.label() + ")"; });

    m.def("verify", [](const std::string& selector) {
        const auto sel = parse_selector(selector, false, false);
        if (!sel.spec) throw ParameterError("only rule-based permutations have CC-sets");
        const auto r = verify_bijection(*sel.spec);
        py::dict d;
        d["valid"] = r.valid();
        d["sources"] = ccset_report(r.sources);
        d["targets"] = ccset_report(r.targets);
        return d;
    }, py::arg("selector"));

    m.def("ccset_validate", [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
        std::vector<ResidueClass> cls;
        for (auto [mod, res] : pairs) cls.push_back({mod, res});
        return ccset_report(ccset_validate(cls));
    }, py::arg("pairs"), "Validate (modulus, residue) pairs as a complete coverage set.");

    m.def("l_floor", [](const std::vector<std::uint64_t>& p, const py::int_& x0) {
        return to_py(min_cycle_length_lower_bound(BoundContext::make(params_of(p), from_py(x0), kDefaultPrecision, false)));
    }, py::arg("params"), py::arg("x0"), "Largest q_n such that every cycle above X0 has L > q_n.");

    m.def("convergents", [](const std::vector<std::uint64_t>& p, const py::int_& q_max) {
        const auto ctx = BoundContext::make(params_of(p), BigInt(1000000), kDefaultPrecision, false);
        py::list out;
        for (const auto& c : rho_convergents(ctx, from_py(q_max))) {
            if (c.q > from_py(q_max)) break;
            out.append(py::make_tuple(to_py(c.p), to_py(c.q), to_py(c.a)));
        }
        return out;
    }, py::arg("params"), py::arg("q_max"));

    m.def("crossovers", [](const std::vector<std::uint64_t>& p, const py::int_& x0, std::uint64_t mm) {
        const auto ctx = BoundContext::make(params_of(p), from_py(x0));
        const auto rhin = rhin_params_for(ctx);
        if (!rhin) throw ParameterError("no Rhin constant for these parameters");
        const auto row = crossover_tables(ctx, *rhin, mm);
        py::dict d;
        d["m"] = row.m;
        d["x3"] = row.x3.to_double();
        d["x1"] = row.x1.to_double();
        d["x2"] = row.x2.to_double();
        d["l_max"] = to_py(row.l_max);
        d["l1"] = to_py(row.l1);
        d["l2"] = to_py(row.l2);
        d["amax"] = to_py(row.amax);
        return d;
    }, py::arg("params"), py::arg("x0"), py::arg("m"));

    m.def("candidates", [](const std::vector<std::uint64_t>& p, const py::int_& x0, std::uint64_t lmin, std::uint64_t lmax) {
        const auto ctx = BoundContext::make(params_of(p), from_py(x0));
        py::list out;
        for (const auto& c : candidate_scan(ctx, lmin, lmax)) out.append(py::make_tuple(to_py(c.K), c.L));
        return out;
    }, py::arg("params"), py::arg("x0"), py::arg("lmin"), py::arg("lmax"));

    m.def("table", [](const std::string& id, bool check, const std::string& format) {
        tables::Options o;
        o.check = check;
        const auto t = tables::build(id, o);
        py::dict d;
        d["text"] = tables::render(t, tables::parse_format(format));
        d["mismatches"] = t.mismatches;
        d["discrepancies"] = t.discrepancies;
        return d;
    }, py::arg("id"), py::arg("check") = false, py::arg("format") = "text");

    m.def("table_ids", &tables::table_ids);
}
