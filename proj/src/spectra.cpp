#include "fresco/spectra.hpp"

#include <iostream>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fresco::spectra {

double mollow_splitting(const RFParams& p) {
    return std::sqrt(p.delta_sigma * p.delta_sigma + 4.0 * p.omega_sigma * p.omega_sigma);
}

double lorentzian(double big_gamma, double omega) {
    const double hw = big_gamma / 2.0;
    return (1.0 / std::numbers::pi) * hw / (hw * hw + omega * omega);
}

double mollow_lineshape(const RFParams& p, double big_gamma, double omega) {
    const double G = big_gamma, g = p.gamma_sigma, D = p.delta_sigma, O = p.omega_sigma;
    const double w2 = omega * omega;
    auto gij = [&](double i, double j) { return i * G + j * g; };
    const double g10 = gij(1, 0), g11 = gij(1, 1), g12 = gij(1, 2);
    const double g35 = gij(3, 5), g1m2 = gij(1, -2), g01 = gij(0, 1);
    const double O2 = O * O, O4 = O2 * O2, D2 = D * D;

    const double num = (g12 * g12 + 4.0 * w2) * (g11 * g11 * g12 + 4.0 * g12 * D2 + 4.0 * g10 * w2) +
                       8.0 * O2 * (g11 * g12 * g35 + 4.0 * g12 * D2 - 4.0 * g1m2 * w2) +
                       128.0 * O4 * g11;
    const double den =
        (g12 * g12 + 4.0 * w2) *
            (std::pow(g11 * g11 + 4.0 * D2, 2) + 8.0 * (g11 * g11 - 4.0 * D2) * w2 + 16.0 * w2 * w2) +
        32.0 * O2 * (g11 * g12 * (g11 * g11 + 4.0 * D2) + 4.0 * (g01 * g11 + 4.0 * D2) * w2 -
                     16.0 * w2 * w2) +
        256.0 * O4 * (g11 * g11 + 4.0 * w2);
    return (2.0 / std::numbers::pi) * num / den;
}

double spectrum_analytic_rf(const RFParams& p, double big_gamma, double omega) {
    if (big_gamma <= 0.0) throw std::invalid_argument("filter width must be positive");
    const RFMoments m = rf_steady_moments(p);
    const double coh = std::norm(m.sigma_mean);
    return coh * lorentzian(big_gamma, omega) + m.incoherent() * mollow_lineshape(p, big_gamma, omega);
}

double spectrum_analytic_heitler(const RFParams& p, double big_gamma, double omega) {
    static bool warned = false;
    if (!warned && (p.delta_sigma != 0.0 || p.omega_sigma > 0.3 * p.gamma_sigma)) {
        std::cerr << "spectrum_analytic_heitler: reduction assumes zero detuning and weak "
                     "driving; parameters are outside that regime\n";
        warned = true;
    }
    const double G = big_gamma, g = p.gamma_sigma, O = p.omega_sigma;
    const double r = 4.0 * O * O / (g * g);
    const double g11 = G + g, g12 = G + 2.0 * g;
    const double w2 = omega * omega;
    const double incoherent_shape =
        (2.0 / std::numbers::pi) * (g12 * g11 * g11 + 4.0 * G * w2) / std::pow(g11 * g11 + 4.0 * w2, 2);
    return r * ((1.0 - 4.0 * r) * lorentzian(G, omega) + 2.0 * r * incoherent_shape);
}

double heitler_incoherent_limit(const RFParams& p, double omega) {
    const double g = p.gamma_sigma, O = p.omega_sigma;
    const double r = 4.0 * O * O / (g * g);
    const double l = lorentzian(g, omega);
    return r * (2.0 * r) * std::numbers::pi * g * l * l;
}

double spectrum_analytic_cavity(const CavityParams& p, double big_gamma, double omega) {
    const CavityMoments m = cavity_steady_moments(p);
    const double G = big_gamma, g = p.gamma_a, D2 = p.delta_a * p.delta_a;
    const double g11 = G + g, g12 = G + 2.0 * g;
    const double w2 = omega * omega;
    const double shape =
        (2.0 / std::numbers::pi) * (g12 * (g11 * g11 + 4.0 * D2) + 4.0 * G * w2) /
        (std::pow(g11 * g11 + 4.0 * w2, 2) + 8.0 * D2 * (g11 * g11 - 4.0 * w2) + 16.0 * D2 * D2);
    return std::norm(m.a_mean) * lorentzian(G, omega) + m.incoherent() * shape;
}

double detuned_sensor_spectrum_leading(const RFParams& p, double big_gamma, double varpi) {
    const double G = big_gamma, g = p.gamma_sigma, D = p.delta_sigma, O = p.omega_sigma;
    const double v2 = varpi * varpi;
    const double coherent = O * O / std::pow(D, 4) / v2;
    const double side = 2.0 * std::pow(O, 4) / (G * std::pow(D, 6)) * (G + 2.0 * g + G * v2) /
                        std::pow(1.0 - v2, 2);
    return coherent + side;
}

namespace {

double finite_eps_spectrum_point(const QuantumModel& model, double omega, double big_gamma,
                                 double eps) {
    QuantumModel aug = attach_sensor(model, omega, big_gamma, eps);
    Superoperator L = build_liouvillian(aug.hamiltonian, aug.collapses);
    SteadyStateOptions opt;
    opt.extended_precision = aug.signature.dim() <= 32;
    DensityMatrix rho = steady_state(L, opt);
    const Operator& s = aug.labeled_ops.at("s1");
    const Operator n_op = s.adjoint() * s;
    const cplx n = expectation(rho.matrix, rho.signature, std::span<const Operator>(&n_op, 1));
    return big_gamma / (2.0 * std::numbers::pi * eps * eps) * n.real();
}

}  // namespace

std::vector<SpectrumSample> spectrum_numeric(const QuantumModel& model,
                                             std::span<const double> omega_grid, double big_gamma,
                                             SensorMethod method, double epsilon) {
    if (big_gamma <= 0.0) throw std::invalid_argument("filter width must be positive");
    double system_rate = model.collapses.empty() ? 1.0 : model.collapses.front().second;
    if (epsilon <= 0.0) epsilon = 1e-3 * std::max(system_rate, big_gamma);

    DenseMat rho_sys;
    if (method == SensorMethod::Vanishing) {
        Superoperator L = build_liouvillian(model.hamiltonian, model.collapses);
        rho_sys = steady_state(L).matrix;
    }

    std::vector<SpectrumSample> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) {
        double s = 0.0;
        switch (method) {
            case SensorMethod::Vanishing:
                s = sensors::filtered_spectrum_point(model, w, big_gamma, &rho_sys);
                break;
            case SensorMethod::FiniteEpsilon:
                s = finite_eps_spectrum_point(model, w, big_gamma, epsilon);
                break;
            case SensorMethod::FiniteRichardson: {
                const double f = finite_eps_spectrum_point(model, w, big_gamma, epsilon);
                const double h = finite_eps_spectrum_point(model, w, big_gamma, epsilon / 2.0);
                s = (4.0 * h - f) / 3.0;
                break;
            }
        }
        out.push_back({w, w / model.varpi_scale, s});
    }
    return out;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    const double scale = std::max({std::abs(whole), 1e-12});
    return adaptive(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, 48);
}

}  // namespace fresco::spectra
