// sensors.hpp — Frequency-filtered correlations in the exact vanishing-coupling limit.
//
// Weakly coupled two-level sensors admit an exact ε→0 evaluation: the steady
// state decomposes into sensor-excitation sectors ρ_{m,n} ⊗ |m⟩⟨n| whose
// leading ε-scaled blocks σ_{m,n} = ρ_{m,n}/ε^{|m|+|n|} obey a closed tower of
// resolvent equations on the system-only space,
//
//   σ_{0,0} = ρ_ss,
//   D_{m,n} σ_{m,n} = i Σ_{k: m_k=1} d·σ_{m−e_k,n} − i Σ_{k: n_k=1} σ_{m,n−e_k}·d†,
//   D_{m,n} = L_sys − i Σ_k ω_k(m_k−n_k) − Σ_k (Γ_k/2)(m_k+n_k),
//
// with d the detection operator. Every D with (m,n) ≠ (0,0) is shifted into
// the open left half-plane, so the solves are well conditioned and all normal-
// ordered sensor moments come out exact, with the ε powers cancelled:
//   ⟨Π ς_k†^{n_k} Π ς_k^{m_k}⟩ / ε^{|m|+|n|} = Tr σ_{m,n}.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "fresco/algebra.hpp"
#include "fresco/models.hpp"
#include "fresco/steadystate.hpp"

namespace fresco::sensors {

struct SensorSpec {
    double omega = 0.0;      // sensor frequency (laser frame)
    double big_gamma = 1.0;  // filter width Γ
};

class VanishingCoupling {
public:
    // `system` must be the bare model (no sensors attached); its detection_op
    // is the field the sensors couple to. rho_ss may be supplied to share the
    // base steady state across many sensor configurations.
    VanishingCoupling(const QuantumModel& system, std::vector<SensorSpec> sensors,
                      const DenseMat* rho_ss = nullptr);

    int sensor_count() const { return static_cast<int>(sensors_.size()); }

    // Normal-ordered moment ⟨Π_k ς_k†^{bra_k} · Π_k ς_k^{ket_k}⟩ / ε^{|bra|+|ket|}.
    cplx moment(unsigned bra_mask, unsigned ket_mask);

    // Tr σ_{e_k,e_k}: sensor population over ε².
    double population(int k);

    // ε-scaled sector block σ_{m,n} as a vectorized system-space matrix.
    const DenseVec& sector_block(unsigned ket_mask, unsigned bra_mask);

    const DenseMat& system_steady() const { return rho_sys_; }
    const DenseMat& liouvillian_dense() const { return liouv_dense_; }
    const DenseMat& spre_detection() const { return pre_d_; }
    const DenseMat& spost_detection_dag() const { return post_ddag_; }

private:
    QuantumModel system_;
    std::vector<SensorSpec> sensors_;
    DenseMat rho_sys_;
    DenseMat liouv_dense_;
    DenseMat pre_d_, post_ddag_;  // spre(d), spost(d†)
    std::map<std::pair<unsigned, unsigned>, DenseVec> blocks_;
};

// Filtered two-sensor coincidence correlation:
// g²_Γ(ω₁,ω₂) = ⟨ς₁†ς₂†ς₂ς₁⟩ / (⟨ς₁†ς₁⟩⟨ς₂†ς₂⟩), exact ε→0.
// NaN when either sensor population vanishes.
double filtered_g2(VanishingCoupling& vc);

// Filtered delayed correlation g²_Γ(τ) = ⟨ς₁†(0)(ς₂†ς₂)(τ)ς₁(0)⟩/(n₁n₂),
// exact ε→0 via a 4-block augmented propagation of the conditioned state.
std::vector<double> filtered_g2_tau(const QuantumModel& system, SensorSpec s1, SensorSpec s2,
                                    std::span<const double> tau_grid,
                                    const DenseMat* rho_ss = nullptr);

// Physical one-photon spectrum S_Γ(ω) = (Γ/2π)·Tr σ_{1,1}, exact ε→0.
double filtered_spectrum_point(const QuantumModel& system, double omega, double big_gamma,
                               const DenseMat* rho_ss = nullptr);

}  // namespace fresco::sensors
