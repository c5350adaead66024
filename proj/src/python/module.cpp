// Python bindings. Documents cross the boundary as JSON text.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hptkit/documents.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/suite.hpp"

namespace py = pybind11;
using namespace hptkit;

namespace {

std::string dump(const Json& j) { return j.dump(); }

std::string verify(const std::string& name, std::size_t order, std::uint64_t seed, std::size_t instances,
                   unsigned threads) {
    SuiteConfig cfg;
    cfg.order = order ? order : default_order();
    cfg.seed = seed;
    cfg.instances = instances;
    cfg.hodge_instances = std::min<std::size_t>(instances, 100);
    cfg.threads = threads;
    py::gil_scoped_release release;
    return dump(criterion_to_json(run_criterion(name, cfg)));
}

std::string validate(const std::string& text) {
    return dump(report_to_json(validate_document(parse_json_text(text, "<string>"))));
}

std::string perturb(const std::string& structure, const std::string& perturbation, std::optional<std::size_t> cap) {
    const ParsedStructure s = structure_from_json(parse_json_text(structure, "<structure>"));
    const PerturbOutcome r = perturb_document(s, parse_json_text(perturbation, "<perturbation>"), cap);
    if (r.kit.is_null()) return dump(report_to_json(r.report));
    return dump(r.kit);
}

std::string transfer(const std::string& algebra, std::size_t bound, std::optional<std::size_t> cap) {
    const Algebra a = parse_algebra(algebra);
    py::gil_scoped_release release;
    return dump(transfer_to_json(run_transfer(a, bound, cap)));
}

std::string enumerate(std::size_t order) { return dump(a0_basis_to_json(enumerate_A0_basis(order), order)); }

std::string standard_example_json() {
    const StandardExample ex = standard_example();
    Json out = Json::object();
    out["structure"] = structure_to_json(ex.contraction);
    out["perturbation"] = perturbation_to_json(ex.perturbation);
    return dump(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact rational homological perturbation toolkit";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
    py::register_exception<NonNilpotentError>(m, "NonNilpotentError", error.ptr());

    m.def("criterion_names", &criterion_names);
    m.def("verify", &verify, py::arg("name"), py::arg("order") = 0, py::arg("seed") = 1,
          py::arg("instances") = 200, py::arg("threads") = 0);
    m.def("validate", &validate, py::arg("document"));
    m.def("perturb", &perturb, py::arg("structure"), py::arg("perturbation"), py::arg("cap") = py::none());
    m.def("transfer", &transfer, py::arg("algebra"), py::arg("bound") = 6, py::arg("cap") = py::none());
    m.def("enumerate", &enumerate, py::arg("order"));
    m.def("standard_example", &standard_example_json);
}
