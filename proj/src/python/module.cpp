#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>

#include "ribbonlim/errors.hpp"
#include "ribbonlim/quadratic_forms.hpp"
#include "ribbonlim/reduced_density.hpp"
#include "ribbonlim/relaxation.hpp"

namespace py = pybind11;
using namespace ribbonlim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Core operations of the one-dimensional anisotropic ribbon model";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<Rigidity>(m, "Rigidity")
        .def_static("isotropic", &Rigidity::isotropic, py::arg("k_mu"), py::arg("k_lambda"))
        .def_static("orthotropic", &Rigidity::orthotropic, py::arg("k11"), py::arg("k12"),
                    py::arg("k22"), py::arg("k33"))
        .def_static("from_voigt", &Rigidity::from_voigt, py::arg("c11"), py::arg("c12"),
                    py::arg("c13"), py::arg("c22"), py::arg("c23"), py::arg("c33"))
        .def_property_readonly("matrix", [](const Rigidity& c) -> Mat3 { return c.matrix(); });

    m.def(
        "alpha_constants",
        [](const Rigidity& c) {
            const AlphaPair a = alpha_constants(c);
            return py::make_tuple(a.plus, a.minus);
        },
        py::arg("rigidity"),
        "Largest determinant-penalty constants (alpha_plus, alpha_minus) keeping the "
        "quadratic form nonnegative.");

    m.def(
        "orthotropic_alphas",
        [](const Rigidity& c) {
            const AlphaPair a = orthotropic_alphas(c);
            return py::make_tuple(a.plus, a.minus);
        },
        py::arg("rigidity"), "Closed-form constants for orthotropic rigidities.");

    m.def(
        "relaxed_integrand",
        [](const Rigidity& c, double z, const Voigt3& m) {
            return relaxed_integrand(RelaxationProblem(c, z), m);
        },
        py::arg("rigidity"), py::arg("z"), py::arg("m"),
        "Relaxation of the quadratic energy under the determinant constraint det_form(m) = z, "
        "with m in Voigt order (M11, M22, 2*M12).");

    m.def(
        "two_point_decomposition",
        [](const Rigidity& c, double z, const Voigt3& m) {
            const Decomposition d = two_point_decomposition(RelaxationProblem(c, z), m);
            return py::make_tuple(d.a, d.b, d.theta, d.value);
        },
        py::arg("rigidity"), py::arg("z"), py::arg("m"),
        "Endpoints (a, b, theta, value) of the two-point mixture realizing the relaxed value; "
        "both endpoints satisfy the determinant constraint.");

    m.def(
        "brute_force_biconjugate",
        [](const Rigidity& c, double z, const Voigt3& m, double radius, int n) {
            return brute_force_biconjugate(RelaxationProblem(c, z), m, radius, n);
        },
        py::arg("rigidity"), py::arg("z"), py::arg("m"), py::arg("radius") = 6.0,
        py::arg("n") = 64, "Discrete double Legendre transform oracle for the relaxed value.");

    py::class_<DensityPoint>(m, "DensityPoint")
        .def_readonly("value", &DensityPoint::value)
        .def_readonly("gamma", &DensityPoint::gamma)
        .def_readonly("curvature", &DensityPoint::curvature)
        .def_readonly("det_curvature", &DensityPoint::det_curvature)
        .def("__repr__", [](const DensityPoint& p) {
            return "DensityPoint(value=" + std::to_string(p.value) +
                   ", gamma=" + std::to_string(p.gamma) + ")";
        });

    py::class_<ReducedDensity>(m, "ReducedDensity")
        .def(py::init<Rigidity>(), py::arg("rigidity"))
        .def("plain", &ReducedDensity::plain, py::arg("mu"), py::arg("tau"),
             "Density on the identity chart with no spontaneous curvature.");

    m.def(
        "orthotropic_reduced_density",
        [](double k11, double k12, double k22, double k33, double mu, double tau) {
            return orthotropic_reduced_density(OrthotropicConstants{k11, k12, k22, k33}, mu, tau);
        },
        py::arg("k11"), py::arg("k12"), py::arg("k22"), py::arg("k33"), py::arg("mu"),
        py::arg("tau"), "Closed form of the identity-chart density for orthotropic rigidities.");
}
