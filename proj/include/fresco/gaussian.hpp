// gaussian.hpp — Displaced two-mode squeezed states: exact truncated-Fock
// construction (brute-force reference) and leading-order correlator formulas.

#pragma once

#include <span>

#include "fresco/algebra.hpp"
#include "fresco/twophoton.hpp"

namespace fresco::gaussian {

using twophoton::InterferenceTerms;
using twophoton::MomentTable;

// Parameters of D₁D₂ S₁⁽¹⁾S₁⁽²⁾ S₂⁽¹²⁾ |00⟩ with the weak-field scaling
// exposed: displacements ε·α_i, squeezings ε²·ξ_i and ε²·ζ₁₂ where
// ξ_i = r_i e^{iθ_i}, ζ₁₂ = t₁₂ e^{iϑ₁₂}.
struct GaussianParams {
    cplx alpha1 = 0.0, alpha2 = 0.0;
    double r1 = 0.0, theta1 = 0.0;
    double r2 = 0.0, theta2 = 0.0;
    double t12 = 0.0, vartheta12 = 0.0;
    double epsilon = 1.0;  // scale; physical values are εα, ε²r, ε²t

    void validate() const;
    cplx xi1() const { return std::polar(r1, theta1); }
    cplx xi2() const { return std::polar(r2, theta2); }
    cplx zeta12() const { return std::polar(t12, vartheta12); }
};

struct BogoliubovCoefficients {
    double mu1, mu2;  // cosh r_i
    cplx nu1, nu2;    // e^{iθ_i} sinh r_i
    double m11;       // cosh t₁₂
    cplx n12;         // e^{iϑ₁₂} sinh t₁₂
};
// Coefficients of the unscaled transformation (r_i, t₁₂ as given, no ε).
BogoliubovCoefficients bogoliubov_coefficients(const GaussianParams& p);

struct TwoModeState {
    int n_max = 0;          // Fock levels per mode
    DenseVec amplitudes;    // ⟨n₁ n₂|ψ⟩ at index n₁*n_max + n₂
    double tail_occupancy;  // population of the two highest levels of either mode
};

// Truncated-Fock construction by matrix exponentials of the (anti-Hermitian)
// truncated generators, applied squeezers-first. Throws when the truncation
// tail exceeds `leakage_tol`.
TwoModeState build_state(const GaussianParams& p, int n_max, double leakage_tol = 1e-10);

struct MomentSet {
    double n1 = 0.0, n2 = 0.0;
    cplx a1sq = 0.0, a2sq = 0.0, a1a2 = 0.0;
    double g2_1 = 0.0, g2_2 = 0.0, g2_12 = 0.0;
};

// Brute-force normal-ordered moment ⟨a₁†^m a₁^n a₂†^p a₂^q⟩ from the state.
cplx state_moment(const TwoModeState& s, int m, int n, int p, int q);
MomentSet moments_exact(const TwoModeState& s);
// The 16 two-photon moments used by the interference machinery.
MomentTable moment_table_exact(const TwoModeState& s);

// Leading-order moments with the ε-scaling applied. For α_i ≠ 0:
// n_i = ε²|α_i|² + ε⁴(r_i² + t₁₂²), ⟨a_i²⟩ = ε²(α_i² − ξ_i),
// ⟨a₁a₂⟩ = ε²(α₁α₂ − ζ₁₂),
// g²_i  = 1 − 2 r_i cos(2φ_i − θ_i)/|α_i|² + r_i²/|α_i|⁴,
// g²₁₂ = 1 − 2 t₁₂ cos(φ₁+φ₂−ϑ₁₂)/(|α₁||α₂|) + t₁₂²/(|α₁|²|α₂|²).
// For α = 0 (squeezed only): n_i = ε⁴(r_i²+t₁₂²), g²_i = r_i²/(ε⁴(r_i²+t₁₂²)²),
// g²₁₂ = t₁₂²/(ε⁴(r₁²+t₁₂²)(r₂²+t₁₂²)).
MomentSet moments_leading_order(const GaussianParams& p);

// I₀ = t₁₂²/(|α₁|²|α₂|²), I₁ = 0, I₂ = −2t₁₂cos(φ₁+φ₂−ϑ₁₂)/(|α₁||α₂|).
InterferenceTerms decomposition_leading_order(const GaussianParams& p);

// Max deviation between the backward-relation (fluctuation) route and the
// expanded full-state route for the I-terms of the given state, with
// α_i = ⟨a_i⟩. Exact algebraic identity, deviation is pure roundoff.
double fluctuation_split_check(const TwoModeState& s);

}  // namespace fresco::gaussian
