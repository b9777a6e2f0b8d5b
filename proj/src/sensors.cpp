#include "fresco/sensors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fresco::sensors {

namespace {

DenseMat spre_dense(const DenseMat& a) {
    const int d = static_cast<int>(a.rows());
    DenseMat out = DenseMat::Zero(d * d, d * d);
    for (int j = 0; j < d; ++j) out.block(j * d, j * d, d, d) = a;
    return out;
}

DenseMat spost_dense(const DenseMat& a) {
    // vec(X a) = (a^T ⊗ I) vec X
    const int d = static_cast<int>(a.rows());
    DenseMat out = DenseMat::Zero(d * d, d * d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            if (a(i, j) != cplx(0, 0))
                out.block(j * d, i * d, d, d) += a(i, j) * DenseMat::Identity(d, d);
    return out;
}

}  // namespace

VanishingCoupling::VanishingCoupling(const QuantumModel& system, std::vector<SensorSpec> sensors,
                                     const DenseMat* rho_ss)
    : system_(system), sensors_(std::move(sensors)) {
    if (sensors_.empty()) throw std::invalid_argument("at least one sensor required");
    if (sensors_.size() > 8) throw std::invalid_argument("sensor tower limited to 8 sensors");
    for (const auto& s : sensors_)
        if (s.big_gamma <= 0.0) throw std::invalid_argument("filter width must be positive");

    const int d = system_.signature.dim();
    if (d * d > 4096)
        throw std::invalid_argument("vanishing-coupling tower requires system dimension <= 64");

    Superoperator L = build_liouvillian(system_.hamiltonian, system_.collapses);
    rho_sys_ = rho_ss ? *rho_ss : steady_state(L).matrix;
    liouv_dense_ = L.dense();

    const DenseMat d_op = system_.detection_op.dense();
    pre_d_ = spre_dense(d_op);
    post_ddag_ = spost_dense(DenseMat(d_op.adjoint()));

    blocks_[{0u, 0u}] = detail::vec(rho_sys_);
}

const DenseVec& VanishingCoupling::sector_block(unsigned ket_mask, unsigned bra_mask) {
    const auto key = std::make_pair(ket_mask, bra_mask);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;

    cplx shift(0, 0);
    for (int k = 0; k < sensor_count(); ++k) {
        const int mk = (ket_mask >> k) & 1u;
        const int nk = (bra_mask >> k) & 1u;
        shift += cplx(-sensors_[k].big_gamma / 2.0 * (mk + nk), -sensors_[k].omega * (mk - nk));
    }

    const int d2 = static_cast<int>(liouv_dense_.rows());
    DenseVec rhs = DenseVec::Zero(d2);
    for (int k = 0; k < sensor_count(); ++k) {
        if ((ket_mask >> k) & 1u)
            rhs += cplx(0, 1) * (pre_d_ * sector_block(ket_mask & ~(1u << k), bra_mask));
        if ((bra_mask >> k) & 1u)
            rhs -= cplx(0, 1) * (post_ddag_ * sector_block(ket_mask, bra_mask & ~(1u << k)));
    }

    DenseMat D = liouv_dense_ + shift * DenseMat::Identity(d2, d2);
    DenseVec sol = Eigen::PartialPivLU<DenseMat>(D).solve(rhs);
    return blocks_.emplace(key, std::move(sol)).first->second;
}

cplx VanishingCoupling::moment(unsigned bra_mask, unsigned ket_mask) {
    const int d = system_.signature.dim();
    return detail::unvec(sector_block(ket_mask, bra_mask), d).trace();
}

double VanishingCoupling::population(int k) { return moment(1u << k, 1u << k).real(); }

double filtered_g2(VanishingCoupling& vc) {
    if (vc.sensor_count() != 2)
        throw std::invalid_argument("filtered_g2 needs exactly two sensors");
    const double n1 = vc.population(0);
    const double n2 = vc.population(1);
    if (n1 <= 0.0 || n2 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return vc.moment(0b11u, 0b11u).real() / (n1 * n2);
}

std::vector<double> filtered_g2_tau(const QuantumModel& system, SensorSpec s1, SensorSpec s2,
                                    std::span<const double> tau_grid, const DenseMat* rho_ss) {
    VanishingCoupling vc(system, {s1, s2}, rho_ss);
    const double n1 = vc.population(0);
    const double n2 = vc.population(1);
    if (n1 <= 0.0 || n2 <= 0.0)
        return std::vector<double>(tau_grid.size(), std::numeric_limits<double>::quiet_NaN());

    // Conditioned state Y = ς₁ ρ ς₁†, decomposed into sensor-2 sectors
    // (ket, bra) ∈ {0,1}². Initial values are the tower blocks with sensor 1
    // populated on both sides; the sector chain closes on itself under L.
    const int d = system.signature.dim();
    const int d2 = d * d;

    DenseVec y0(4 * d2);
    y0.segment(0 * d2, d2) = vc.sector_block(0b01, 0b01);
    y0.segment(1 * d2, d2) = vc.sector_block(0b11, 0b01);
    y0.segment(2 * d2, d2) = vc.sector_block(0b01, 0b11);
    y0.segment(3 * d2, d2) = vc.sector_block(0b11, 0b11);

    const DenseMat& Ld = vc.liouvillian_dense();
    const DenseMat& preD = vc.spre_detection();
    const DenseMat& postDd = vc.spost_detection_dag();
    const DenseMat I = DenseMat::Identity(d2, d2);
    const cplx i1(0, 1);
    const cplx za(-s2.big_gamma / 2.0, -s2.omega);
    const cplx zb(-s2.big_gamma / 2.0, +s2.omega);

    DenseMat G = DenseMat::Zero(4 * d2, 4 * d2);
    G.block(0 * d2, 0 * d2, d2, d2) = Ld;
    G.block(1 * d2, 1 * d2, d2, d2) = Ld + za * I;
    G.block(2 * d2, 2 * d2, d2, d2) = Ld + zb * I;
    G.block(3 * d2, 3 * d2, d2, d2) = Ld - s2.big_gamma * I;
    G.block(1 * d2, 0 * d2, d2, d2) = -i1 * preD;
    G.block(2 * d2, 0 * d2, d2, d2) = i1 * postDd;
    G.block(3 * d2, 1 * d2, d2, d2) = i1 * postDd;
    G.block(3 * d2, 2 * d2, d2, d2) = -i1 * preD;

    Superoperator aug{SpaceSignature{{{"aug", 2 * d}}}, G.sparseView()};
    std::vector<double> out(tau_grid.size());
    propagate_observe(aug, y0, tau_grid, [&](std::size_t i, const DenseVec& v) {
        out[i] = detail::unvec(v.segment(3 * d2, d2).eval(), d).trace().real() / (n1 * n2);
    });
    return out;
}

double filtered_spectrum_point(const QuantumModel& system, double omega, double big_gamma,
                               const DenseMat* rho_ss) {
    VanishingCoupling vc(system, {{omega, big_gamma}}, rho_ss);
    return big_gamma / (2.0 * std::numbers::pi) * vc.population(0);
}

}  // namespace fresco::sensors
