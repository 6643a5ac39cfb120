#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "mvfph/error.hpp"
#include "mvfph/io.hpp"
#include "mvfph/markov.hpp"
#include "mvfph/persistence.hpp"

namespace py = pybind11;
using namespace mvfph;

namespace {

// Structured results cross the boundary as JSON text and are decoded in __init__.py.
std::string dump(const io::Json& j) { return j.dump(); }

persistence::PersistenceDiagram as_diagram(const py::object& obj) {
    if (py::isinstance<markov::TransitionMatrix>(obj)) return persistence::diagram_of(obj.cast<markov::TransitionMatrix>());
    return io::diagram_from_json(obj.cast<std::string>());
}

harness::StabilityOptions stability_options(std::size_t multi, double delta, bool positive_only, bool allow_ties) {
    harness::StabilityOptions o;
    if (multi > 0) {
        o.mode = harness::StabilityMode::multi;
        o.entries = multi;
    }
    o.delta_max = delta;
    o.allow_negative = !positive_only;
    o.avoid_ties = !allow_ties;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Persistence of combinatorial multivector fields built from Markov chains";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

    py::class_<markov::TransitionMatrix>(m, "TransitionMatrix")
        .def(py::init<std::vector<std::string>, std::vector<std::vector<double>>>(), py::arg("states"),
             py::arg("rows"))
        .def(py::init([](std::vector<std::vector<double>> rows) {
                 return markov::TransitionMatrix({}, std::move(rows));
             }),
             py::arg("rows"))
        .def_property_readonly("size", &markov::TransitionMatrix::size)
        .def_property_readonly("states", &markov::TransitionMatrix::states)
        .def_property_readonly("rows", &markov::TransitionMatrix::rows)
        .def("__getitem__", [](const markov::TransitionMatrix& p, std::pair<std::size_t, std::size_t> ij) {
            if (ij.first >= p.size() || ij.second >= p.size()) throw py::index_error();
            return p(ij.first, ij.second);
        })
        .def("__len__", &markov::TransitionMatrix::size)
        .def(py::self == py::self)
        .def("to_json", [](const markov::TransitionMatrix& p) { return markov::to_json(p); })
        .def("to_csv", [](const markov::TransitionMatrix& p) { return markov::to_csv(p); })
        .def("__repr__", [](const markov::TransitionMatrix& p) { return "TransitionMatrix(" + markov::to_json(p) + ")"; });

    m.def("parse_matrix", [](const std::string& text, const std::string& format) {
        if (format == "auto") return markov::parse_matrix(text, markov::sniff_format(text));
        if (format == "csv") return markov::parse_matrix(text, markov::MatrixFormat::csv);
        if (format == "json") return markov::parse_matrix(text, markov::MatrixFormat::json);
        throw py::value_error("format must be auto, csv or json");
    }, py::arg("text"), py::arg("format") = "auto");

    m.def("random_chain", [](std::size_t n, double density, std::uint64_t seed) {
        return harness::random_chain({n, density, seed});
    }, py::arg("n"), py::arg("density") = 1.0, py::arg("seed") = 0);

    m.def("perturb", [](const markov::TransitionMatrix& p, std::size_t row, std::size_t col, double delta,
                        bool compensate) { return markov::perturb(p, {row, col, delta, compensate}); },
          py::arg("matrix"), py::arg("row"), py::arg("col"), py::arg("delta"), py::arg("compensate") = true);

    m.def("thresholds", [](const markov::TransitionMatrix& p) { return markov::threshold_grid(p).values; });

    m.def("_mvf", [](const markov::TransitionMatrix& p, double gamma) {
        const auto cx = complex::build_complex(p);
        return dump(io::field_to_json(mvf::build_mvf(cx, p, gamma), cx));
    });
    m.def("_morse", [](const markov::TransitionMatrix& p, double gamma) {
        const auto cx = complex::build_complex(p);
        return dump(io::morse_to_json(persistence::compute_stage(cx, p, gamma), cx));
    });
    m.def("_diagram", [](const markov::TransitionMatrix& p) { return dump(io::diagram_to_json(persistence::diagram_of(p))); });
    m.def("_diagram_svg", [](const py::object& obj) { return io::diagram_to_svg(as_diagram(obj)); });
    m.def("_bottleneck", [](const py::object& a, const py::object& b) {
        return dump(io::bottleneck_to_json(persistence::bottleneck(as_diagram(a), as_diagram(b))));
    });
    m.def("_stability_matrix", [](const markov::TransitionMatrix& p, std::size_t trials, std::size_t multi, double delta,
                                  bool positive_only, bool allow_ties, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(io::stability_to_json(harness::stability_trials(
            p, trials, stability_options(multi, delta, positive_only, allow_ties), seed)));
    });
    m.def("_stability_random", [](const std::string& spec, std::size_t trials, std::size_t multi, double delta,
                                  bool positive_only, bool allow_ties, std::optional<std::uint64_t> seed) {
        auto s = harness::parse_chain_spec(spec);
        if (seed) s.seed = *seed;
        py::gil_scoped_release release;
        return dump(io::stability_to_json(
            harness::stability_trials(s, trials, stability_options(multi, delta, positive_only, allow_ties))));
    });
    m.def("_properties", [](const std::string& spec, std::size_t trials, std::optional<std::uint64_t> seed) {
        auto s = harness::parse_chain_spec(spec);
        if (seed) s.seed = *seed;
        py::gil_scoped_release release;
        return dump(io::properties_to_json(harness::property_trials(s, trials)));
    });
}
