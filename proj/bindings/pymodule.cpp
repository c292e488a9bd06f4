#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hmod/campaign.hpp"
#include "hmod/search.hpp"
#include "hmod/version.hpp"

namespace py = pybind11;
using namespace hmod;

namespace {

ModuleVector as_module_vector(const ComplexMatrix& mat) {
    return ModuleVector(ModuleSpec{static_cast<int>(mat.rows()), static_cast<int>(mat.cols())},
                        mat);
}

ToleranceConfig make_tol(double psd_rel_tol, double hermitian_tol, double equality_rel_tol) {
    ToleranceConfig tol{psd_rel_tol, hermitian_tol, equality_rel_tol};
    tol.validate();
    return tol;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Loewner-order verification of Bessel-type inequalities on matrix Hilbert modules";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ContractViolation>(m, "ContractViolation");
    py::register_exception<PreconditionViolation>(m, "PreconditionViolation");
    py::register_exception<NumericalFailure>(m, "NumericalFailure");
    py::register_exception<ValidationError>(m, "InstanceValidationError");

    py::class_<ToleranceConfig>(m, "ToleranceConfig")
        .def(py::init(&make_tol), py::arg("psd_rel_tol") = 1e-9,
             py::arg("hermitian_tol") = 1e-10, py::arg("equality_rel_tol") = 1e-7)
        .def_readonly("psd_rel_tol", &ToleranceConfig::psd_rel_tol)
        .def_readonly("hermitian_tol", &ToleranceConfig::hermitian_tol)
        .def_readonly("equality_rel_tol", &ToleranceConfig::equality_rel_tol);

    py::class_<OrderReport>(m, "OrderReport")
        .def_property_readonly("gap", [](const OrderReport& r) { return r.gap.mat(); })
        .def_readonly("min_eig_gap", &OrderReport::min_eig_gap)
        .def_readonly("rhs_scale", &OrderReport::rhs_scale)
        .def_readonly("holds", &OrderReport::holds)
        .def_readonly("relative_slack", &OrderReport::relative_slack)
        .def_readonly("near_equality", &OrderReport::near_equality)
        .def("__repr__", [](const OrderReport& r) {
            return "OrderReport(holds=" + std::string(r.holds ? "True" : "False") +
                   ", relative_slack=" + std::to_string(r.relative_slack) + ")";
        });

    // dense kernels
    m.def("op_norm", [](const ComplexMatrix& mat) { return op_norm(mat); },
          "Largest singular value", py::arg("mat"));
    m.def(
        "hermitian_eigen",
        [](const ComplexMatrix& mat, const ToleranceConfig& tol) {
            const EigenDecomposition eig = hermitian_eigen(HermitianMatrix(mat, tol.hermitian_tol));
            return py::make_tuple(eig.eigenvalues, eig.eigenvectors);
        },
        "Ascending eigenvalues and a unitary eigenbasis of a Hermitian matrix", py::arg("mat"),
        py::arg("tol") = ToleranceConfig{});
    m.def(
        "psd_sqrt",
        [](const ComplexMatrix& mat, const ToleranceConfig& tol) {
            return psd_sqrt(HermitianMatrix(mat, tol.hermitian_tol), tol).mat();
        },
        "Positive square root of a PSD matrix", py::arg("mat"), py::arg("tol") = ToleranceConfig{});
    m.def(
        "polar",
        [](const ComplexMatrix& mat) {
            const PolarDecomposition pd = polar(mat);
            return py::make_tuple(pd.partial_isometry, pd.positive_part.mat());
        },
        "Polar decomposition R = U P with a partial isometry U", py::arg("mat"));
    m.def(
        "loewner_leq",
        [](const ComplexMatrix& lhs, const ComplexMatrix& rhs, const ToleranceConfig& tol) {
            return loewner_leq(HermitianMatrix(lhs, tol.hermitian_tol),
                               HermitianMatrix(rhs, tol.hermitian_tol), tol);
        },
        "Loewner comparison lhs <= rhs", py::arg("lhs"), py::arg("rhs"),
        py::arg("tol") = ToleranceConfig{});

    // module operations on raw m x d matrices
    m.def(
        "inner", [](const ComplexMatrix& x, const ComplexMatrix& y) {
            return inner(as_module_vector(x), as_module_vector(y)).mat();
        },
        "<x, y> = x* y", py::arg("x"), py::arg("y"));
    m.def(
        "abs_sq", [](const ComplexMatrix& x) { return abs_sq(as_module_vector(x)).mat(); },
        "|x|^2 = <x, x>", py::arg("x"));
    m.def(
        "module_norm", [](const ComplexMatrix& x) { return module_norm(as_module_vector(x)); },
        "||x|| = ||<x,x>||^{1/2}", py::arg("x"));
    m.def(
        "cauchy_schwarz_gap",
        [](const ComplexMatrix& x, const ComplexMatrix& y, const ToleranceConfig& tol) {
            return cauchy_schwarz_gap(as_module_vector(x), as_module_vector(y), tol);
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = ToleranceConfig{});

    // deterministic generation
    m.def("mix_seed", [](std::uint64_t master, std::uint64_t index) {
        return mix_seed(master, index);
    });
    m.def("splitmix64_stream", [](std::uint64_t seed, int count) {
        SplitMix64 rng(seed);
        std::vector<std::uint64_t> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            out.push_back(rng.next());
        return out;
    });
    m.def("normal_pairs", [](std::uint64_t seed, int count) {
        SplitMix64 rng(seed);
        RealMatrix out(count, 2);
        for (int i = 0; i < count; ++i) {
            const auto [a, b] = rng.next_normal_pair();
            out(i, 0) = a;
            out(i, 1) = b;
        }
        return out;
    });
    m.def(
        "gen_module_vector",
        [](std::uint64_t seed, int rows, int cols, double magnitude) {
            return gen_module_vector(seed, rows, cols, magnitude).mat();
        },
        py::arg("seed"), py::arg("m"), py::arg("d"), py::arg("magnitude") = 1.0);
    m.def(
        "gen_unit_orthogonal_family",
        [](std::uint64_t seed, int rows, int cols, int n) {
            std::vector<ComplexMatrix> out;
            for (const auto& v : gen_unit_orthogonal_family(seed, rows, cols, n))
                out.push_back(v.mat());
            return out;
        },
        py::arg("seed"), py::arg("m"), py::arg("d"), py::arg("n"));
    m.def("gen_haar_unitary", &gen_haar_unitary, py::arg("seed"), py::arg("dim"));

    m.def("list_inequalities", [] {
        py::list out;
        for (const auto& info : inequality_registry()) {
            py::dict entry;
            entry["tag"] = std::string(info.tag);
            entry["citation"] = std::string(info.citation);
            entry["statement"] = std::string(info.statement);
            entry["fields"] = std::string(info.fields);
            entry["branches"] = info.has_branches;
            out.append(std::move(entry));
        }
        return out;
    });

    // JSON-string surface for the structured operations
    m.def(
        "gen_instance_json",
        [](const std::string& tag, std::uint64_t seed, int rows, int cols, int n,
           const std::string& family, const std::string& coeffs, double magnitude,
           const std::string& branch) {
            GenConfig cfg{seed, rows, cols, n, family_kind_from_string(family),
                          coeff_kind_from_string(coeffs), magnitude};
            InequalityInstance inst = gen_instance(cfg, id_from_tag(tag));
            if (!branch.empty())
                inst.meta["branch"] = branch;
            return dump_json(to_json(inst));
        },
        py::arg("tag"), py::arg("seed"), py::arg("m"), py::arg("d"), py::arg("n"),
        py::arg("family") = "generic", py::arg("coeffs") = "generic", py::arg("magnitude") = 1.0,
        py::arg("branch") = "");
    m.def(
        "evaluate_json",
        [](const std::string& instance_text, const ToleranceConfig& tol) {
            const InequalityInstance inst =
                instance_from_json(parse_json_text(instance_text, "instance"));
            return dump_json(to_json(evaluate(inst, tol)));
        },
        py::arg("instance_json"), py::arg("tol") = ToleranceConfig{});
    m.def(
        "verify_json",
        [](const std::vector<std::string>& tags, int rows, int cols, int n, long trials,
           std::uint64_t seed, int jobs, const ToleranceConfig& tol) {
            CampaignConfig cfg;
            for (const auto& tag : tags)
                cfg.ids.push_back(id_from_tag(tag));
            cfg.m = rows;
            cfg.d = cols;
            cfg.n = n;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.tol = tol;
            return dump_json(to_json(run_campaign(cfg)));
        },
        py::arg("tags") = std::vector<std::string>{}, py::arg("m") = 4, py::arg("d") = 2,
        py::arg("n") = 2, py::arg("trials") = 100, py::arg("seed") = 0, py::arg("jobs") = 0,
        py::arg("tol") = ToleranceConfig{});
    m.def(
        "search_json",
        [](const std::string& tag, int rows, int cols, int n, int restarts, int steps,
           std::uint64_t seed, const std::string& family, const std::string& coeffs,
           const std::string& branch, double magnitude, const ToleranceConfig& tol) {
            SearchConfig cfg;
            cfg.ineq = id_from_tag(tag);
            cfg.m = rows;
            cfg.d = cols;
            cfg.n = n;
            cfg.restarts = restarts;
            cfg.steps_per_restart = steps;
            cfg.seed = seed;
            cfg.family = family.empty() ? default_family_for(cfg.ineq)
                                        : family_kind_from_string(family);
            cfg.coeffs = coeff_kind_from_string(coeffs);
            if (!branch.empty())
                cfg.branch = branch_from_string(branch);
            cfg.magnitude = magnitude;
            return dump_json(to_json(search(cfg, tol)));
        },
        py::arg("tag"), py::arg("m") = 4, py::arg("d") = 2, py::arg("n") = 2,
        py::arg("restarts") = 32, py::arg("steps") = 500, py::arg("seed") = 0,
        py::arg("family") = "", py::arg("coeffs") = "generic", py::arg("branch") = "",
        py::arg("magnitude") = 1.0, py::arg("tol") = ToleranceConfig{});
    m.def(
        "slack_histogram_json",
        [](const std::string& tag, long trials, int rows, int cols, int n, std::uint64_t seed,
           const std::string& family, const ToleranceConfig& tol) {
            const InequalityId id = id_from_tag(tag);
            GenConfig cfg{seed, rows, cols, n,
                          family.empty() ? default_family_for(id)
                                         : family_kind_from_string(family),
                          CoeffKind::generic, 1.0};
            return dump_json(to_json(slack_histogram(cfg, id, trials, tol)));
        },
        py::arg("tag"), py::arg("trials"), py::arg("m") = 4, py::arg("d") = 2, py::arg("n") = 2,
        py::arg("seed") = 0, py::arg("family") = "", py::arg("tol") = ToleranceConfig{});
}
