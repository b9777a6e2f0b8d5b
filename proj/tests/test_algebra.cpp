#include <doctest.h>

#include <random>

#include "fresco/algebra.hpp"
#include "fresco/models.hpp"
#include "fresco/steadystate.hpp"

using namespace fresco;

namespace {

DenseMat random_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    DenseMat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cplx(dist(rng), dist(rng));
    return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

TEST_CASE("embed: identity stays identity on the composite space") {
    SpaceSignature sig{{{"sigma", 2}, {"s1", 2}, {"s2", 2}}};
    Operator op = embed(identity2(), "sigma", sig);
    CHECK((op.dense() - DenseMat::Identity(8, 8)).norm() == 0.0);
}

TEST_CASE("embed: single subsystem returns the local operator itself") {
    SpaceSignature sig{{{"sigma", 2}}};
    Operator op = embed(lowering2(), "sigma", sig);
    CHECK((op.dense() - lowering2()).norm() == 0.0);
}

TEST_CASE("embed: lowering on the second factor is the hand Kronecker product") {
    SpaceSignature sig{{{"sigma", 2}, {"s1", 2}}};
    Operator op = embed(lowering2(), "s1", sig);
    CHECK(op.matrix.nonZeros() == 2);
    DenseMat expected = DenseMat::Zero(4, 4);  // I2 ⊗ |0><1|
    expected(0, 1) = 1.0;
    expected(2, 3) = 1.0;
    CHECK((op.dense() - expected).norm() == 0.0);
}

TEST_CASE("embed: errors on unknown label and dimension mismatch") {
    SpaceSignature sig{{{"sigma", 2}, {"a", 3}}};
    CHECK_THROWS_AS((void)embed(lowering2(), "nope", sig), std::invalid_argument);
    CHECK_THROWS_AS((void)embed(lowering2(), "a", sig), std::invalid_argument);
}

TEST_CASE("embed commutes across disjoint subsystems exactly") {
    SpaceSignature sig{{{"sigma", 2}, {"s1", 2}, {"s2", 2}}};
    Operator a = embed(lowering2(), "sigma", sig);
    Operator b = embed(DenseMat(lowering2() + lowering2().adjoint()), "s2", sig);
    CHECK(((a * b).dense() - (b * a).dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("liouvillian: pure decay relaxes to the ground projector") {
    SpaceSignature sig{{{"sigma", 2}}};
    Operator sm = embed(lowering2(), "sigma", sig);
    Operator h = cplx(0, 0) * sm;
    Superoperator L = build_liouvillian(h, {{sm, 1.0}});
    DensityMatrix rho = steady_state(L);
    DenseMat ground = DenseMat::Zero(2, 2);
    ground(0, 0) = 1.0;
    CHECK((rho.matrix - ground).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("liouvillian: resonance-fluorescence population matches the closed form") {
    QuantumModel m = resonance_fluorescence({0.0, 0.1, 1.0});
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);
    Operator n = m.labeled_ops.at("sigma").adjoint() * m.labeled_ops.at("sigma");
    cplx pop = expectation(rho.matrix, rho.signature, std::span<const Operator>(&n, 1));
    CHECK(pop.real() == doctest::Approx(0.037037037037037035).epsilon(1e-10));
}

TEST_CASE("liouvillian rejects mismatched signatures and negative rates") {
    SpaceSignature sig{{{"sigma", 2}}};
    SpaceSignature other{{{"sigma", 2}, {"s1", 2}}};
    Operator sm = embed(lowering2(), "sigma", sig);
    Operator bad = embed(lowering2(), "sigma", other);
    CHECK_THROWS_AS((void)build_liouvillian(sm + sm.adjoint(), {{bad, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)build_liouvillian(sm + sm.adjoint(), {{sm, -0.5}}),
                    std::invalid_argument);
}

TEST_CASE("liouvillian preserves trace and Hermiticity on random operators") {
    QuantumModel m = resonance_fluorescence({0.7, 0.9, 1.0});
    QuantumModel aug = attach_sensors(m, {0.3, -0.8, 2.0, 0.01});
    Superoperator L = build_liouvillian(aug.hamiltonian, aug.collapses);
    const int d = aug.signature.dim();

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        DenseMat x = random_hermitian(d, rng);
        DenseVec lx = L.matrix * detail::vec(x);
        DenseMat lxm = detail::unvec(lx, d);
        CHECK(std::abs(lxm.trace()) <= 1e-12 * detail::frobenius(x));
        // L(X†) = (L(X))†: for Hermitian X the image must stay Hermitian
        CHECK((lxm - lxm.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * detail::frobenius(x));
    }
}

TEST_CASE("expectation: normalization, ground state and coherent amplitude") {
    QuantumModel m = resonance_fluorescence({0.0, 0.1, 1.0});
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);

    Operator id = identity_operator(m.signature);
    CHECK(expectation(rho.matrix, rho.signature, std::span<const Operator>(&id, 1)).real() ==
          doctest::Approx(1.0).epsilon(1e-12));

    DenseMat ground = DenseMat::Zero(2, 2);
    ground(0, 0) = 1.0;
    Operator n = m.labeled_ops.at("sigma").adjoint() * m.labeled_ops.at("sigma");
    CHECK(std::abs(expectation(ground, m.signature, std::span<const Operator>(&n, 1))) < 1e-15);

    // steady coherent amplitude −iΩ(1−2⟨n⟩)/(γ/2+iΔ), here −0.185185i
    Operator sm = m.labeled_ops.at("sigma");
    cplx mean = expectation(rho.matrix, rho.signature, std::span<const Operator>(&sm, 1));
    CHECK(std::abs(mean.real()) < 1e-12);
    CHECK(mean.imag() == doctest::Approx(-0.18518518518518517).epsilon(1e-10));
}

TEST_CASE("expectation rejects signature mismatch") {
    QuantumModel m = resonance_fluorescence({0.0, 0.1, 1.0});
    SpaceSignature other{{{"x", 3}}};
    Operator bad = embed(annihilation(3), "x", other);
    CHECK_THROWS_AS((void)expectation(DenseMat::Identity(2, 2), m.signature,
                                      std::span<const Operator>(&bad, 1)),
                    std::invalid_argument);
}

TEST_CASE("two-photon moment operator stays Hermitian on the composite space") {
    QuantumModel m = resonance_fluorescence({1.0, 0.5, 1.0});
    QuantumModel aug = attach_sensors(m, {0.0, 0.0, 2.0, 0.01});
    const Operator& s1 = aug.labeled_ops.at("s1");
    const Operator& s2 = aug.labeled_ops.at("s2");
    Operator m4 = s1.adjoint() * s2.adjoint() * s2 * s1;
    CHECK(m4.signature.dim() == 8);
    CHECK((m4.dense() - m4.dense().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}
