// fresco_py.cpp — python bindings for the main operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fresco/gaussian.hpp"
#include "fresco/spectra.hpp"
#include "fresco/twophoton.hpp"

namespace py = pybind11;
using namespace fresco;

PYBIND11_MODULE(_fresco, m) {
    m.doc() = "Frequency-resolved one- and two-photon correlations of resonance fluorescence";

    py::class_<RFParams>(m, "RFParams")
        .def(py::init([](double delta, double omega, double gamma) {
                 return RFParams{delta, omega, gamma};
             }),
             py::arg("delta_sigma") = 0.0, py::arg("omega_sigma") = 0.0,
             py::arg("gamma_sigma") = 1.0)
        .def_readwrite("delta_sigma", &RFParams::delta_sigma)
        .def_readwrite("omega_sigma", &RFParams::omega_sigma)
        .def_readwrite("gamma_sigma", &RFParams::gamma_sigma);

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init([](double delta, double lambda, double gamma, std::optional<double> omega,
                         std::optional<double> theta, int n_max) {
                 CavityParams p;
                 p.delta_a = delta;
                 p.lambda = lambda;
                 p.gamma_a = gamma;
                 p.omega_a = omega;
                 p.theta_drive = theta;
                 p.n_max = n_max;
                 return p;
             }),
             py::arg("delta_a") = 0.0, py::arg("lambda_") = 0.0, py::arg("gamma_a") = 1.0,
             py::arg("omega_a") = std::nullopt, py::arg("theta_drive") = std::nullopt,
             py::arg("n_max") = 15)
        .def_readwrite("delta_a", &CavityParams::delta_a)
        .def_readwrite("lambda_", &CavityParams::lambda)
        .def_readwrite("gamma_a", &CavityParams::gamma_a)
        .def_readwrite("n_max", &CavityParams::n_max)
        .def_property_readonly("big_gamma_a", &CavityParams::big_gamma_a);

    py::class_<SensorConfig>(m, "SensorConfig")
        .def(py::init([](double w1, double w2, double gamma, double eps) {
                 return SensorConfig{w1, w2, gamma, eps};
             }),
             py::arg("omega_1") = 0.0, py::arg("omega_2") = 0.0, py::arg("big_gamma") = 1.0,
             py::arg("epsilon") = 0.0)
        .def_readwrite("omega_1", &SensorConfig::omega_1)
        .def_readwrite("omega_2", &SensorConfig::omega_2)
        .def_readwrite("big_gamma", &SensorConfig::big_gamma)
        .def_readwrite("epsilon", &SensorConfig::epsilon);

    py::class_<QuantumModel>(m, "QuantumModel")
        .def_property_readonly("dimension",
                               [](const QuantumModel& q) { return q.signature.dim(); })
        .def_readonly("varpi_scale", &QuantumModel::varpi_scale)
        .def("hamiltonian", [](const QuantumModel& q) { return q.hamiltonian.dense(); })
        .def("detection_op", [](const QuantumModel& q) { return q.detection_op.dense(); });

    m.def("resonance_fluorescence", &resonance_fluorescence, py::arg("params"));
    m.def("squeezed_cavity", &squeezed_cavity, py::arg("params"));
    m.def("attach_sensors", &attach_sensors, py::arg("model"), py::arg("sensors"));
    m.def("homodyne", &homodyne, py::arg("model"), py::arg("alpha"));
    m.def("phase_matching_angle", &phase_matching_angle);
    m.def("optimum_drive", &optimum_drive);

    m.def(
        "steady_state",
        [](const QuantumModel& q) {
            Superoperator L = build_liouvillian(q.hamiltonian, q.collapses);
            return steady_state(L).matrix;
        },
        py::arg("model"), "dense steady-state density matrix");

    m.def(
        "steady_expectation",
        [](const QuantumModel& q, const std::string& label, bool dag_first) {
            Superoperator L = build_liouvillian(q.hamiltonian, q.collapses);
            DensityMatrix rho = steady_state(L);
            const Operator& op = q.labeled_ops.at(label);
            if (dag_first) {
                Operator n = op.adjoint() * op;
                return expectation(rho.matrix, rho.signature, std::span<const Operator>(&n, 1));
            }
            return expectation(rho.matrix, rho.signature, std::span<const Operator>(&op, 1));
        },
        py::arg("model"), py::arg("label"), py::arg("population") = false,
        "steady ⟨op⟩ or ⟨op†op⟩ for a labeled operator");

    m.def("mollow_splitting", &spectra::mollow_splitting);
    m.def("spectrum_analytic_rf", &spectra::spectrum_analytic_rf, py::arg("params"),
          py::arg("big_gamma"), py::arg("omega"));
    m.def(
        "spectrum_numeric",
        [](const QuantumModel& q, const std::vector<double>& omegas, double big_gamma) {
            auto samples = spectra::spectrum_numeric(q, omegas, big_gamma);
            std::vector<double> out(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].value;
            return out;
        },
        py::arg("model"), py::arg("omega_grid"), py::arg("big_gamma"));

    m.def("g2_coincidence", [](const QuantumModel& q, const SensorConfig& s) {
        return twophoton::g2_coincidence(q, s);
    });
    m.def("g2_tau", [](const QuantumModel& q, const SensorConfig& s,
                       const std::vector<double>& taus) { return twophoton::g2_tau(q, s, taus); });
    m.def("g2_analytic_detuned", &twophoton::g2_analytic_detuned);
    m.def("g2_filtered_heitler", &twophoton::g2_filtered_heitler);
    m.def("g2_broadband", &twophoton::g2_broadband);

    py::class_<twophoton::InterferenceTerms>(m, "InterferenceTerms")
        .def_readonly("i0", &twophoton::InterferenceTerms::i0)
        .def_readonly("i1", &twophoton::InterferenceTerms::i1)
        .def_readonly("i2", &twophoton::InterferenceTerms::i2)
        .def_readonly("g2", &twophoton::InterferenceTerms::g2);
    m.def("interference_decomposition",
          [](const QuantumModel& q, const SensorConfig& s) {
              return twophoton::interference_decomposition(q, s);
          });
    m.def("interference_analytic_detuned", &twophoton::interference_analytic_detuned);

    py::class_<twophoton::Quantifiers>(m, "Quantifiers")
        .def_readonly("R", &twophoton::Quantifiers::R)
        .def_readonly("B", &twophoton::Quantifiers::B)
        .def_readonly("S", &twophoton::Quantifiers::S)
        .def_readonly("S_valid", &twophoton::Quantifiers::S_valid);
    m.def("quantifiers", [](const QuantumModel& q, const SensorConfig& s) {
        return twophoton::quantifiers(q, s);
    });

    m.def(
        "g2_landscape",
        [](const QuantumModel& q, const std::vector<double>& v1, const std::vector<double>& v2,
           double big_gamma, bool interference, bool quantifiers, int workers) {
            twophoton::LandscapeRequest req;
            req.varpi1_grid = v1;
            req.varpi2_grid = v2;
            req.big_gamma = big_gamma;
            req.with_interference = interference;
            req.with_quantifiers = quantifiers;
            req.workers = workers;
            twophoton::Landscape land = twophoton::g2_landscape(q, req);
            py::dict channels;
            const auto n1 = static_cast<py::ssize_t>(v1.size());
            const auto n2 = static_cast<py::ssize_t>(v2.size());
            for (const auto& [name, values] : land.channels) {
                Eigen::MatrixXd mat(n1, n2);
                for (py::ssize_t i = 0; i < n1; ++i)
                    for (py::ssize_t j = 0; j < n2; ++j) mat(i, j) = values[i * n2 + j];
                channels[py::str(name)] = mat;
            }
            return channels;
        },
        py::arg("model"), py::arg("varpi1_grid"), py::arg("varpi2_grid"), py::arg("big_gamma"),
        py::arg("interference") = false, py::arg("quantifiers") = false, py::arg("workers") = 0);

    py::class_<gaussian::GaussianParams>(m, "GaussianParams")
        .def(py::init([](cplx a1, cplx a2, double r1, double th1, double r2, double th2,
                         double t12, double vth12, double eps) {
                 gaussian::GaussianParams p;
                 p.alpha1 = a1;
                 p.alpha2 = a2;
                 p.r1 = r1;
                 p.theta1 = th1;
                 p.r2 = r2;
                 p.theta2 = th2;
                 p.t12 = t12;
                 p.vartheta12 = vth12;
                 p.epsilon = eps;
                 return p;
             }),
             py::arg("alpha1") = cplx(0, 0), py::arg("alpha2") = cplx(0, 0), py::arg("r1") = 0.0,
             py::arg("theta1") = 0.0, py::arg("r2") = 0.0, py::arg("theta2") = 0.0,
             py::arg("t12") = 0.0, py::arg("vartheta12") = 0.0, py::arg("epsilon") = 1.0);
    py::class_<gaussian::MomentSet>(m, "MomentSet")
        .def_readonly("n1", &gaussian::MomentSet::n1)
        .def_readonly("n2", &gaussian::MomentSet::n2)
        .def_readonly("g2_1", &gaussian::MomentSet::g2_1)
        .def_readonly("g2_2", &gaussian::MomentSet::g2_2)
        .def_readonly("g2_12", &gaussian::MomentSet::g2_12);
    m.def(
        "gaussian_moments_exact",
        [](const gaussian::GaussianParams& p, int n_max) {
            return gaussian::moments_exact(gaussian::build_state(p, n_max));
        },
        py::arg("params"), py::arg("n_max") = 14);
    m.def("gaussian_moments_leading", &gaussian::moments_leading_order, py::arg("params"));
}
