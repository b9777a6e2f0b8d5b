// models.hpp — Physical models: driven two-level system, squeezed cavity,
// sensor augmentation and homodyne substitution.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fresco/algebra.hpp"

namespace fresco {

struct RFParams {
    double delta_sigma = 0.0;  // laser-emitter detuning
    double omega_sigma = 0.0;  // drive amplitude (real, >= 0)
    double gamma_sigma = 1.0;  // decay rate (unit)

    void validate() const;
};

struct CavityParams {
    double delta_a = 0.0;
    double lambda = 0.0;      // squeezing ratio λ = 2Λ_a/Γ_a, stability requires λ < 1
    double gamma_a = 1.0;
    std::optional<double> omega_a;      // coherent drive; default = optimum antibunching drive
    std::optional<double> theta_drive;  // drive phase ϑ; default = phase-matching angle
    int n_max = 15;                     // Fock truncation (number of levels)

    double big_gamma_a() const;  // Γ_a = sqrt(γ_a² + 4Δ_a²)
    double lambda_amp() const;   // Λ_a = Γ_a λ / 2
    void validate() const;
};

struct SensorConfig {
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double big_gamma = 1.0;  // filter width Γ (= both sensor decay rates)
    double epsilon = 0.0;    // coupling for the finite-ε path; 0 = pick default

    double effective_epsilon(double system_rate) const;
    void validate() const;
};

struct QuantumModel {
    SpaceSignature signature;
    Operator hamiltonian;
    std::vector<std::pair<Operator, double>> collapses;
    Operator detection_op;  // field the sensors couple to (may include a c-number part)
    std::map<std::string, Operator> labeled_ops;

    // scale used to express frequencies in ϖ units (Mollow splitting / |Δ_a|)
    double varpi_scale = 1.0;
};

// H = Δ_σ σ†σ + Ω_σ(σ† + σ), collapse (σ, γ_σ), detection op σ.
QuantumModel resonance_fluorescence(const RFParams& p);

// H = Δ_a a†a + i(Λ_a/2)(a†² − a²) + Ω_a(e^{iϑ}a† + e^{−iϑ}a), collapse (a, γ_a).
QuantumModel squeezed_cavity(const CavityParams& p);

// Extends the signature by two 2-level sensors at (ω_1, ω_2) with width Γ,
// coupled at ε to the detection operator.
QuantumModel attach_sensors(const QuantumModel& m, const SensorConfig& s);

// Single-sensor variant used by the spectrum path.
QuantumModel attach_sensor(const QuantumModel& m, double omega, double big_gamma, double epsilon);

// Detection-side homodyning: detection_op → detection_op + α·I. Dynamics unchanged.
QuantumModel homodyne(const QuantumModel& m, cplx alpha);

// ϑ = ½ atan2(2Δ_a, γ_a): drive phase minimizing g²_a.
double phase_matching_angle(const CavityParams& p);

// Ω_a minimizing g²_a(0): Γ_a sqrt(λ/2)(1+λ)/(2(1−λ)).
double optimum_drive(const CavityParams& p);

// Closed-form steady-state moments of the driven two-level system.
struct RFMoments {
    cplx sigma_mean;   // ⟨σ⟩
    double population; // ⟨σ†σ⟩
    double incoherent() const { return population - std::norm(sigma_mean); }
};
RFMoments rf_steady_moments(const RFParams& p);

// Closed-form steady-state moments of the squeezed cavity (general drive phase).
struct CavityMoments {
    cplx a_mean;         // ⟨a⟩
    double population;   // ⟨a†a⟩
    cplx a_sq_variance;  // ⟨a²⟩ − ⟨a⟩²
    double incoherent() const { return population - std::norm(a_mean); }
};
CavityMoments cavity_steady_moments(const CavityParams& p);

// Phase-matched Glauber correlator g²_a(0) for the squeezed cavity (broadband limit).
double cavity_g2_phase_matched(double lambda, double big_gamma_a, double omega_a);
// Minimum over the drive: 2λ(2−λ)/(1+2λ−λ²).
double cavity_g2_minimum(double lambda);

}  // namespace fresco
