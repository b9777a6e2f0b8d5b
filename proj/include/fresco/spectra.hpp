// spectra.hpp — One-photon physical spectra: numerical sensor-based S_Γ(ω)
// and closed-form references for the driven two-level system and the cavity.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fresco/models.hpp"
#include "fresco/sensors.hpp"

namespace fresco::spectra {

struct SpectrumSample {
    double omega = 0.0;  // laser frame
    double varpi = 0.0;  // omega / varpi_scale
    double value = 0.0;  // spectral density, 1/energy
};

enum class SensorMethod {
    Vanishing,        // exact ε→0 tower (default)
    FiniteEpsilon,    // finite-ε augmented steady state
    FiniteRichardson  // finite ε with (ε, ε/2) Richardson extrapolation
};

// Ω₊ = sqrt(Δ_σ² + 4Ω_σ²)
double mollow_splitting(const RFParams& p);

// Normalized Lorentzian of FWHM Γ.
double lorentzian(double big_gamma, double omega);

// Normalized incoherent triplet lineshape M_Γ(ω) of resonance fluorescence.
double mollow_lineshape(const RFParams& p, double big_gamma, double omega);

// S_Γ(ω) = |⟨σ⟩|² L_Γ(ω) + (⟨σ†σ⟩ − |⟨σ⟩|²) M_Γ(ω).
double spectrum_analytic_rf(const RFParams& p, double big_gamma, double omega);

// Heitler-regime reduction (Δ_σ = 0, Ω_σ ≪ γ_σ).
double spectrum_analytic_heitler(const RFParams& p, double big_gamma, double omega);
// Γ→0 incoherent part: squared Lorentzian of the emitter linewidth (the
// coherent δ-peak is never sampled numerically).
double heitler_incoherent_limit(const RFParams& p, double omega);

// Squeezed-cavity spectrum in the phase-matched configuration (detuned regime).
double spectrum_analytic_cavity(const CavityParams& p, double big_gamma, double omega);
// Leading-order detuned sensor population (per ε²): diverging coherent 1/ϖ²
// term plus non-Lorentzian side peaks.
double detuned_sensor_spectrum_leading(const RFParams& p, double big_gamma, double varpi);

// Numerical sensor spectrum over a frequency grid (laser-frame ω).
std::vector<SpectrumSample> spectrum_numeric(const QuantumModel& model,
                                             std::span<const double> omega_grid, double big_gamma,
                                             SensorMethod method = SensorMethod::Vanishing,
                                             double epsilon = 0.0);

// Adaptive Simpson quadrature (relative target; used by normalization checks).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-8);

}  // namespace fresco::spectra
