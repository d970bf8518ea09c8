// Python bindings. Structured results cross the boundary as JSON text and are
// decoded on the Python side.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergman/lab.hpp"

namespace py = pybind11;
using namespace bergman;

namespace {

ComplexPoint to_point(const std::vector<cdouble>& v) {
    if (v.size() == 1) return make_point(v[0]);
    if (v.size() == 2) return make_point(v[0], v[1]);
    throw DimensionMismatch("points have 1 or 2 complex coordinates");
}

std::vector<cdouble> from_point(const ComplexPoint& p) { return {p.data(), p.data() + p.size()}; }

RunConfig config_from(const std::string& json_text) {
    return RunConfig::merge(RunConfig::defaults(), nlohmann::json::parse(json_text.empty() ? "{}" : json_text));
}

std::vector<std::vector<cdouble>> matrix_rows(const SmallMatrix& m) {
    std::vector<std::vector<cdouble>> rows(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i].push_back(m(i, j));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bergman kernel laboratory core";
    m.attr("__version__") = kVersion;

    // translators run last-registered first, so the base class goes in first
    auto base = py::register_exception<Error>(m, "BergmanError");
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
    py::register_exception<KernelNearZero>(m, "KernelNearZero", base);

    m.def("catalog_json", [] { return cmd_catalog().dump(); });
    m.def("membership", [](const std::string& id, const std::vector<cdouble>& z) {
        return membership(find_domain(id), to_point(z));
    });
    m.def("sample", [](const std::string& id, std::int64_t count, std::uint64_t seed) {
        const SampleCloud c = sample(find_domain(id), count, seed);
        std::vector<std::vector<cdouble>> pts;
        pts.reserve(c.points.size());
        for (const auto& p : c.points) pts.push_back(from_point(p));
        return py::make_tuple(pts, c.volume_estimate);
    }, py::arg("domain"), py::arg("count"), py::arg("seed") = 1);

    m.def("weights_json", [](const std::string& sub, std::int64_t m1, std::int64_t m2, int bound,
                             const std::string& which, int component) {
        return cmd_weights(sub, m1, m2, bound, which, component).dump();
    }, py::arg("sub"), py::arg("m1"), py::arg("m2"), py::arg("bound") = kDefaultEnumerationBound,
       py::arg("which") = "all", py::arg("component") = 0);

    py::class_<Kernel, std::shared_ptr<Kernel>>(m, "Kernel")
        .def_property_readonly("dimension", &Kernel::dimension)
        .def_property_readonly("name", &Kernel::name)
        .def("eval", [](const Kernel& k, const std::vector<cdouble>& z, const std::vector<cdouble>& w) {
            return k.eval(to_point(z), to_point(w));
        })
        .def("t_matrix", [](const Kernel& k, const std::vector<cdouble>& z, const std::vector<cdouble>& w,
                            double guard) { return matrix_rows(t_matrix(k, to_point(z), to_point(w), guard).entries); },
             py::arg("z"), py::arg("w"), py::arg("guard") = kKernelGuard)
        .def("sigma", [](std::shared_ptr<Kernel> k, const std::vector<cdouble>& p, const std::vector<cdouble>& z) {
            return from_point(BergmanMap(std::move(k), to_point(p))(to_point(z)));
        }, py::arg("center"), py::arg("z"))
        .def("provenance_json", [](const Kernel& k) { return k.provenance().dump(); });

    m.def("closed_kernel", [](const std::string& id, double r) -> std::shared_ptr<Kernel> {
        return std::make_shared<ClosedFormKernel>(id, r);
    }, py::arg("domain"), py::arg("inner_radius") = 0.5);
    m.def("build_kernel", [](const std::string& config_json) -> std::shared_ptr<Kernel> {
        const RunConfig c = config_from(config_json);
        auto built = build_kernel(find_domain(c.domains.front()), c.build_options());
        return std::const_pointer_cast<KernelModel>(built.model);
    }, py::arg("config_json") = "{}");
    m.def("kernel_model_json", [](const std::string& config_json) { return cmd_kernel_build(config_from(config_json)).dump(); });

    m.def("verify_json", [](const std::string& kind, const std::string& config_json) {
        return to_json(cmd_verify(kind, config_from(config_json))).dump();
    });
    m.def("suite_json", [](const std::string& config_json) {
        const RunConfig c = config_from(config_json);
        const SuiteResult r = cmd_suite(c);
        if (!c.out.empty()) write_suite(r, c.out);
        return r.summary.dump();
    }, py::arg("config_json") = "{}");
    m.def("grid_csv", [](const std::string& config_json, const std::string& quantity, int nx, int ny) {
        GridSlice s;
        s.nx = nx;
        s.ny = ny;
        return cmd_grid(config_from(config_json), s, quantity == "K" ? GridQuantity::kernel : GridQuantity::t_matrix);
    }, py::arg("config_json"), py::arg("quantity") = "T", py::arg("nx") = 41, py::arg("ny") = 41);
}
