#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spsys/classify.hpp"
#include "spsys/determinant.hpp"
#include "spsys/errors.hpp"
#include "spsys/json_io.hpp"
#include "spsys/system.hpp"

namespace py = pybind11;
using namespace spsys;

namespace
{

using json = io::json;

std::string dump(const json &j)
{
    return io::dump_canonical(j);
}

json rank_json(const classify::RankInfo &r)
{
    return {{"rank", r.rank},
            {"confident", r.confident},
            {"singular_values", json::array({r.singular_values[0], r.singular_values[1]})}};
}

std::string generate(const std::string &cls, std::optional<CScalar> lambda, int horizon,
                     std::optional<std::uint64_t> seed)
{
    const auto label = system::SystemLabel::make(system::label_from_string(cls), lambda);
    const auto sys = seed ? system::random_system(label, *seed, horizon) : system::canonical_system(label, horizon);
    return dump(io::to_json(sys));
}

std::string classify_doc(const std::string &text, double eps)
{
    const json doc = io::parse(text);
    switch (io::kind_of(doc)) {
        case io::DocKind::triple:
            return dump(io::report_to_json(classify::classify_triple(io::triple_from_json(doc, eps), eps)));
        case io::DocKind::subproduct_system:
            return dump(io::report_to_json(system::classify_system(io::system_from_json(doc), eps)));
        default:
            throw FormatError("classify takes a subproduct system or a triple; dualize graded algebras first");
    }
}

std::string check_doc(const std::string &text, double eps)
{
    const json doc = io::parse(text);
    switch (io::kind_of(doc)) {
        case io::DocKind::subproduct_system:
            return dump(io::report_to_json(system::check_axioms(io::system_from_json(doc), eps)));
        case io::DocKind::graded_algebra:
            return dump(io::report_to_json(system::check_axioms(system::dualize(io::graded_from_json(doc)), eps)));
        default:
            io::triple_from_json(doc, eps);
            return dump(json{{"ok", true}, {"worst_residual", 0.0}});
    }
}

std::string dualize_doc(const std::string &text)
{
    const json doc = io::parse(text);
    switch (io::kind_of(doc)) {
        case io::DocKind::subproduct_system:
            return dump(io::to_json(system::dualize(io::system_from_json(doc))));
        case io::DocKind::graded_algebra:
            return dump(io::to_json(system::dualize(io::graded_from_json(doc))));
        default:
            throw FormatError("only subproduct systems and graded algebras can be dualized");
    }
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Subproduct systems over two-dimensional fibers: classification and the determinant identity";

    auto base = py::register_exception<Error>(m, "SpsysError", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<NotSubproductTripleError>(m, "NotSubproductTripleError", base.ptr());
    py::register_exception<UnclassifiedChainError>(m, "UnclassifiedChainError", base.ptr());
    py::register_exception<NotExtendableError>(m, "NotExtendableError", base.ptr());
    py::register_exception<PipelineError>(m, "PipelineError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.attr("default_eps") = default_eps;
    m.attr("default_horizon") = system::default_horizon;

    m.def("verify_identity", [] { return poly::main_identity_residual().is_zero(); },
          "True when D8 + D4 expands to the zero polynomial.");
    m.def("identity_residual", [] { return poly::main_identity_residual().to_string(); });
    m.def("surviving_term_count", [] { return poly::surviving_laplace_terms(poly::det8_matrix()).size(); });

    m.def(
        "rank_of_plane",
        [](const CMat &basis, double eps) {
            return dump(rank_json(classify::rank_of_plane(tensor::Subspace::span(basis, eps), eps)));
        },
        py::arg("basis"), py::arg("eps") = default_eps);
    m.def(
        "product_in_intersection",
        [](const CMat &l12, const CMat &l23, double eps) -> std::optional<std::tuple<CVec, CVec, CVec>> {
            const auto t = classify::product_in_intersection(tensor::Subspace::span(l12, eps),
                                                             tensor::Subspace::span(l23, eps), eps);
            if (!t) {
                return std::nullopt;
            }
            return std::make_tuple(t->x1, t->x2, t->x3);
        },
        py::arg("l12"), py::arg("l23"), py::arg("eps") = default_eps);
    m.def(
        "classify_triple",
        [](const CMat &e2, const CMat &e3, double eps) {
            const auto t = classify::Triple::make(tensor::Subspace::span(e2, eps), tensor::Subspace::span(e3, eps), eps);
            return dump(io::report_to_json(classify::classify_triple(t, eps)));
        },
        py::arg("e2"), py::arg("e3"), py::arg("eps") = default_eps);

    m.def("generate", &generate, py::arg("cls"), py::arg("lam") = std::nullopt,
          py::arg("horizon") = system::default_horizon, py::arg("seed") = std::nullopt);
    m.def("classify", &classify_doc, py::arg("text"), py::arg("eps") = default_eps);
    m.def("check", &check_doc, py::arg("text"), py::arg("eps") = default_eps);
    m.def("dualize", &dualize_doc, py::arg("text"));
}
