#include <doctest.h>

#include <random>

#include "fresco/models.hpp"
#include "fresco/steadystate.hpp"

using namespace fresco;

namespace {

double steady_population(const QuantumModel& m, const std::string& label) {
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);
    Operator n = m.labeled_ops.at(label).adjoint() * m.labeled_ops.at(label);
    return expectation(rho.matrix, rho.signature, std::span<const Operator>(&n, 1)).real();
}

}  // namespace

TEST_CASE("rf: zero drive gives a diagonal Hamiltonian and the ground steady state") {
    QuantumModel m = resonance_fluorescence({3.0, 0.0, 1.0});
    DenseMat h = m.hamiltonian.dense();
    CHECK(std::abs(h(0, 1)) + std::abs(h(1, 0)) == 0.0);
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);
    CHECK(std::abs(rho.matrix(1, 1)) < 1e-14);
}

TEST_CASE("rf: detuned population matches the closed form") {
    QuantumModel m = resonance_fluorescence({80.0, 2.0, 1.0});
    CHECK(steady_population(m, "sigma") ==
          doctest::Approx(0.0006241953731517965).epsilon(1e-10));
    CHECK(rf_steady_moments({80.0, 2.0, 1.0}).population ==
          doctest::Approx(0.0006241953731517965).epsilon(1e-14));
}

TEST_CASE("rf: the strong-driving point builds a valid model") {
    QuantumModel m = resonance_fluorescence({0.0, 40.05, 1.0});
    DenseMat h = m.hamiltonian.dense();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.varpi_scale == doctest::Approx(80.1).epsilon(1e-14));
}

TEST_CASE("attach_sensors extends the space by two two-level sensors") {
    QuantumModel m = resonance_fluorescence({0.0, 0.1, 1.0});
    QuantumModel aug = attach_sensors(m, {0.0, 0.0, 2.0, 0.001});
    CHECK(aug.signature.dim() == 8);
    CHECK(aug.collapses.size() == 3);
    CHECK(aug.labeled_ops.count("s1") == 1);
    CHECK(aug.labeled_ops.count("s2") == 1);
    DenseMat h = aug.hamiltonian.dense();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    QuantumModel cav = squeezed_cavity({80.1, 0.001, 1.0, {}, {}, 15});
    CHECK(attach_sensors(cav, {0.0, 0.0, 2.0, 0.001}).signature.dim() == 60);
}

TEST_CASE("squeezed cavity: undriven limits and stability") {
    QuantumModel m = squeezed_cavity({0.0, 0.0, 1.0, 0.0, 0.0, 8});
    CHECK(steady_population(m, "a") < 1e-14);

    CavityParams bad;
    bad.lambda = 1.0;
    CHECK_THROWS_AS((void)squeezed_cavity(bad), std::invalid_argument);
    CavityParams tiny;
    tiny.n_max = 1;
    CHECK_THROWS_AS((void)squeezed_cavity(tiny), std::invalid_argument);
}

TEST_CASE("squeezed cavity: incoherent population matches the closed form") {
    CavityParams p;
    p.delta_a = 80.1;
    p.lambda = 0.001;
    p.gamma_a = 1.0;
    p.omega_a = 0.0;
    p.n_max = 8;
    QuantumModel m = squeezed_cavity(p);
    const double lam_amp = p.lambda_amp();
    const double expected = 2.0 * lam_amp * lam_amp /
                            (p.gamma_a * p.gamma_a + 4.0 * p.delta_a * p.delta_a -
                             4.0 * lam_amp * lam_amp);
    CHECK(steady_population(m, "a") == doctest::Approx(expected).epsilon(1e-8));
    CHECK(cavity_steady_moments(p).population == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("squeezed cavity: fig3a fixture builds phase-matched at optimum drive") {
    CavityParams p;
    p.delta_a = 80.1;
    p.lambda = 0.001;
    p.gamma_a = 1.0;
    p.n_max = 15;
    QuantumModel m = squeezed_cavity(p);
    CHECK(m.signature.dim() == 15);
    DenseMat h = m.hamiltonian.dense();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("phase matching angle") {
    CavityParams p;
    p.gamma_a = 1.0;
    p.delta_a = 0.0;
    CHECK(phase_matching_angle(p) == 0.0);
    p.delta_a = 1e12;
    CHECK(phase_matching_angle(p) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-9));
    p.delta_a = 80.1;
    CHECK(phase_matching_angle(p) == doctest::Approx(0.7822771053076809).epsilon(1e-12));
}

TEST_CASE("optimum drive and its small-lambda asymptote") {
    CavityParams p;
    p.gamma_a = 1.0;
    p.delta_a = 80.1;
    p.lambda = 0.0;
    CHECK(optimum_drive(p) == 0.0);
    p.lambda = 0.001;
    CHECK(optimum_drive(p) == doctest::Approx(1.7947111811065737).epsilon(1e-12));
    p.lambda = 1e-8;
    const double asym = p.big_gamma_a() / 2.0 * std::sqrt(p.lambda / 2.0);
    CHECK(optimum_drive(p) == doctest::Approx(asym).epsilon(1e-6));
}

TEST_CASE("homodyne shifts only the detection operator and is invertible") {
    QuantumModel m = resonance_fluorescence({80.0, 2.0, 1.0});
    QuantumModel h0 = homodyne(m, cplx(0, 0));
    CHECK((h0.detection_op.dense() - m.detection_op.dense()).norm() == 0.0);

    const cplx alpha(0.3, -0.7);
    QuantumModel h1 = homodyne(m, alpha);
    CHECK((h1.hamiltonian.dense() - m.hamiltonian.dense()).norm() == 0.0);
    CHECK((h1.detection_op.dense() - m.detection_op.dense() -
           alpha * DenseMat::Identity(2, 2)).norm() < 1e-15);
    QuantumModel h2 = homodyne(h1, -alpha);
    CHECK((h2.detection_op.dense() - m.detection_op.dense()).norm() == 0.0);
}

TEST_CASE("hamiltonians are Hermitian for random parameter draws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 20; ++i) {
        QuantumModel rf = resonance_fluorescence({u(rng) - 2.5, u(rng), 0.5 + u(rng)});
        DenseMat h = rf.hamiltonian.dense();
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

        CavityParams p;
        p.delta_a = u(rng) - 2.5;
        p.lambda = 0.1 * u(rng) / 5.0;
        p.gamma_a = 0.5 + u(rng);
        p.theta_drive = u(rng);
        p.omega_a = u(rng);
        p.n_max = 6;
        DenseMat hc = squeezed_cavity(p).hamiltonian.dense();
        CHECK((hc - hc.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("phase-matched Glauber correlator closed form") {
    // at the optimum drive the closed form reaches the analytic minimum
    for (double lam : {0.001, 0.05, 0.3}) {
        CavityParams p;
        p.delta_a = 80.1;
        p.gamma_a = 1.0;
        p.lambda = lam;
        CHECK(cavity_g2_phase_matched(lam, p.big_gamma_a(), optimum_drive(p)) ==
              doctest::Approx(cavity_g2_minimum(lam)).epsilon(1e-12));
    }
    // off-optimum it still matches the steady-state solver
    CavityParams p;
    p.delta_a = 80.1;
    p.gamma_a = 1.0;
    p.lambda = 0.01;
    p.omega_a = 2.5;
    p.n_max = 15;
    QuantumModel m = squeezed_cavity(p);
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);
    const Operator& a = m.labeled_ops.at("a");
    Operator n = a.adjoint() * a;
    Operator m4 = a.adjoint() * a.adjoint() * a * a;
    const double pop =
        expectation(rho.matrix, rho.signature, std::span<const Operator>(&n, 1)).real();
    const double g2 =
        expectation(rho.matrix, rho.signature, std::span<const Operator>(&m4, 1)).real() /
        (pop * pop);
    CHECK(g2 == doctest::Approx(cavity_g2_phase_matched(p.lambda, p.big_gamma_a(), 2.5))
                    .epsilon(1e-8));
}

TEST_CASE("cavity truncation converges at the fig3a fixture") {
    auto observables = [](int n_max) {
        CavityParams p;
        p.delta_a = 80.1;
        p.lambda = 0.001;
        p.gamma_a = 1.0;
        p.n_max = n_max;
        QuantumModel m = squeezed_cavity(p);
        Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
        DensityMatrix rho = steady_state(L);
        const Operator& a = m.labeled_ops.at("a");
        Operator n = a.adjoint() * a;
        Operator m4 = a.adjoint() * a.adjoint() * a * a;
        const double pop =
            expectation(rho.matrix, rho.signature, std::span<const Operator>(&n, 1)).real();
        const double g2 =
            expectation(rho.matrix, rho.signature, std::span<const Operator>(&m4, 1)).real() /
            (pop * pop);
        return std::pair{pop, g2};
    };
    const auto [pop15, g215] = observables(15);
    const auto [pop20, g220] = observables(20);
    CHECK(std::abs(pop20 - pop15) / pop15 < 1e-8);
    CHECK(std::abs(g220 - g215) / g215 < 1e-8);
}
