#include "qtdelta/cli.hpp"
#include "qtdelta/groups.hpp"
#include "qtdelta/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using qtdelta::io::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw py::value_error(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Δ-set, local cone and symplectic base computations (JSON in, JSON out)";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "run",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = qtdelta::cli::run(args, in, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "",
        "Runs the command-line tool in memory; returns (exit_code, stdout, stderr).");

    m.def("subcommands", &qtdelta::cli::subcommands);

    m.def(
        "delta_set",
        [](const std::string& module) { return dump(qtdelta::io::to_json(qtdelta::delta_set(qtdelta::io::module_from(parse(module))))); },
        py::arg("module"));

    m.def(
        "local_cone",
        [](const std::string& fan, const std::string& point) {
            return dump(qtdelta::io::to_json(
                qtdelta::local_cone(qtdelta::io::fan_from(parse(fan)), qtdelta::io::rat_vector_from(parse(point)))));
        },
        py::arg("fan"), py::arg("point"));

    m.def(
        "fan_equal",
        [](const std::string& a, const std::string& b) {
            return qtdelta::fan_equal(qtdelta::io::fan_from(parse(a)), qtdelta::io::fan_from(parse(b)));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "symplectic_base",
        [](const std::string& form, std::uint64_t seed, std::size_t retries) {
            auto r = qtdelta::compute_symplectic_base(qtdelta::io::alternating_q_from(parse(form)), seed, retries);
            return std::visit([](const auto& v) { return dump(qtdelta::io::to_json(v)); }, r);
        },
        py::arg("form"), py::arg("seed") = 0, py::arg("retries") = 8);

    m.def(
        "structure_report",
        [](const std::string& presentation, std::uint64_t seed, std::size_t retries) {
            return dump(qtdelta::io::to_json(
                qtdelta::structure_report(qtdelta::io::presentation_from(parse(presentation)), seed, retries)));
        },
        py::arg("presentation"), py::arg("seed") = 0, py::arg("retries") = 8);
}
