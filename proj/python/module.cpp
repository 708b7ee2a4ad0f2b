#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfp/graphfn.hpp"
#include "gfp/numeric.hpp"
#include "gfp/parse.hpp"

namespace py = pybind11;
using namespace gfp;

namespace {

std::pair<double, double> to_pair(const num::Complex& z) { return {double(z.re), double(z.im)}; }

}  // namespace

PYBIND11_MODULE(_gfperiod, m) {
    m.doc() = "Single-valued polylogarithms, graphical functions and periods";
    py::register_exception<MathError>(m, "MathError", PyExc_ValueError);

    m.def("configure", &configure_reducer, py::arg("weight_cap") = 12, py::arg("cache_dir") = std::nullopt);
    m.def("reduce", [](const std::string& e) { return to_string(parse_expression(e).as_constant()); });
    m.def("parse", [](const std::string& e) { return print(parse_expression(e)); });
    m.def("mzv_eval", [](const std::string& e, int prec) {
        num::Context ctx(prec);
        return num::to_decimal(num::mzv_numeric(parse_expression(e).as_constant(), ctx), prec);
    }, py::arg("expr"), py::arg("prec") = 40);
    m.def("svmp_basis", [](const std::string& w) { return to_string(P(parse_word012(w))); });
    m.def("sv_eval", [](const std::string& e, std::complex<double> z, int prec) {
        num::Context ctx(prec);
        Parsed p = parse_expression(e);
        num::Complex at{num::Real(z.real()), num::Real(z.imag())};
        auto v = p.kind == Parsed::B ? num::eval_B(p.as_B(), at, ctx) : num::eval_A(p.as_A(), at, ctx);
        auto [re, im] = to_pair(v);
        return std::complex<double>(re, im);
    }, py::arg("expr"), py::arg("z"), py::arg("prec") = 30);
    m.def("gf_seq", [](const std::string& w) { return to_string(sequential_function(parse_word012(w))); });
    m.def("gf_graph", [](const std::string& json) { return to_string(construct_graphical_function(graph_from_json(json)).f); });
    m.def("period_seq", [](const std::string& w) { return to_string(sequential_period(parse_word012(w)).value); });
    m.def("period_zigzag", [](int n) { return to_string(sequential_period(zigzag_word(n)).value); });
    m.def("period_graph", [](const std::string& json) {
        GfGraph g = graph_from_json(json);
        if (!is_completed(g)) g = complete_period_graph(g);
        return to_string(period_of_graph(g).value);
    });
    m.def("integrate_plane", [](const std::string& e) {
        auto r = integrate_plane(parse_expression(e).as_A());
        return py::make_tuple(to_string(r.value), r.convergent);
    });
    m.def("classify_word", [](const std::string& w) { return classify_phi4_word(parse_word012(w)).str(); });
}
