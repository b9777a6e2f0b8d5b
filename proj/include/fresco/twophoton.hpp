// twophoton.hpp — Two-photon correlation landscapes, delayed correlations,
// interference decomposition, detuned-regime closed forms, feature loci and
// nonclassicality quantifiers.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fresco/models.hpp"
#include "fresco/sensors.hpp"
#include "fresco/spectra.hpp"

namespace fresco::twophoton {

using spectra::SensorMethod;

struct InterferenceTerms {
    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double g2 = 1.0;  // 1 + i0 + i1 + i2, kept for the identity check
};

// The 16 normal-ordered moments ⟨a₁†^i a₂†^j a₂^k a₁^l⟩, i..l ∈ {0,1}.
struct MomentTable {
    cplx m[2][2][2][2] = {};
    cplx& at(int i, int j, int k, int l) { return m[i][j][k][l]; }
    cplx at(int i, int j, int k, int l) const { return m[i][j][k][l]; }
};

// Central (fluctuation) moment ⟨ã₁†^i ã₂†^j ã₂^k ã₁^l⟩ with ã = a − α,
// via the signed binomial backward relation.
cplx fluctuation_moment(const MomentTable& t, cplx alpha1, cplx alpha2, int i, int j, int k, int l);

// Decomposition g² = 1 + I₀ + I₁ + I₂ from fluctuation moments (exact
// rearrangement when α_i = ⟨a_i⟩).
InterferenceTerms interference_terms(const MomentTable& t, cplx alpha1, cplx alpha2);
// Same quantities from the expanded full-state formulas (independent algebraic
// route, used as a cross-check).
InterferenceTerms interference_terms_fullstate(const MomentTable& t, cplx alpha1, cplx alpha2);

// --- sensor-based numerical paths -----------------------------------------

// Stationary frequency-resolved coincidence g²_Γ(ω₁,ω₂).
double g2_coincidence(const QuantumModel& m, const SensorConfig& s,
                      SensorMethod method = SensorMethod::Vanishing);

// Normalized delayed coincidences (sensors at the configured frequencies).
std::vector<double> g2_tau(const QuantumModel& m, const SensorConfig& s,
                           std::span<const double> tau_grid);

// Sensor moment table + coherent amplitudes at one landscape point.
struct PointMoments {
    MomentTable table;
    cplx alpha1, alpha2;  // steady ⟨ς_i⟩ (per ε)
    double n1 = 0.0, n2 = 0.0;
};
PointMoments sensor_point_moments(sensors::VanishingCoupling& vc);

// Interference decomposition at a sensor pair; α_i default to steady ⟨ς_i⟩.
InterferenceTerms interference_decomposition(const QuantumModel& m, const SensorConfig& s,
                                             std::optional<std::pair<cplx, cplx>> alphas = {});

// --- analytic detuned-Heitler forms ----------------------------------------

// Compact detuned two-photon spectrum; +inf on the bunching lines.
double g2_analytic_detuned(double varpi1, double varpi2);
// Leading-order I-terms (I₁ = 0), satisfying g² = (1 + I₂/2)².
InterferenceTerms interference_analytic_detuned(double varpi1, double varpi2);

// Filtered Heitler-resonance autocorrelation (exact ε,Ω→0 closed form;
// the Γ = γ limit is handled explicitly).
double g2_filtered_heitler(double big_gamma, double gamma, double tau);
// Broadband limit (1 − e^{−γτ/2})².
double g2_broadband(double gamma, double tau);
// Squeezed-cavity delayed correlation at phase matching and optimum drive,
// leading order: 1 + e^{−γ_a τ} − 2 e^{−γ_a τ/2} cos(Δ_a τ).
double cavity_g2_tau_analytic(const CavityParams& p, double tau);
// Homodyned detuned-Heitler correlation for coherent-fraction removal F;
// F = 1 gives 1 + (Δ⁴/4Ω⁴) e^{−γτ}.
double homodyned_g2_analytic(const RFParams& p, double F, double tau);

// Homodyned g²(τ): numerical broadband path (displaced-detection regression)
// next to the closed form above.
struct HomodynedG2 {
    std::vector<double> numeric;
    std::vector<double> analytic;
};
HomodynedG2 g2_homodyned_tau(const RFParams& p, double F, std::span<const double> tau_grid);

// --- feature loci -----------------------------------------------------------

enum class LocusKind { Circle, BunchingLines, SecondaryLines };
struct Locus {
    LocusKind kind;
    // circle: center (c1,c2), radius r; point(θ) on the parametrized locus
    double c1 = 0.0, c2 = 0.0, radius = 0.0;
    // lines: coefficients a·ϖ₁ + b·ϖ₂ = c
    struct Line {
        double a, b, c;
    };
    std::vector<Line> lines;

    std::pair<double, double> circle_point(double theta) const;
};
Locus feature_loci(LocusKind kind);

// --- nonclassicality quantifiers --------------------------------------------

struct Quantifiers {
    double R = 1.0;  // Cauchy-Schwarz violation for R > 1
    double B = 0.0;  // Bell-type combination, violation for B > 2
    double S = 0.0;  // two-mode squeezing witness, present for S > 1
    bool S_valid = true;  // false when the S denominator vanishes
};

// Fourth-order moments entering B and S (pair-sensor substitution).
struct QuantifierMoments {
    double g2_11 = 1.0, g2_22 = 1.0, g2_12 = 1.0;
    double m1111 = 0.0, m2222 = 0.0, m1212 = 0.0;  // ⟨·†·†··⟩ pair moments
    cplx m1122 = 0.0;                              // ⟨a₁†² a₂²⟩ analog
    cplx anom4 = 0.0;                              // ⟨a₁² a₂²⟩ analog
    cplx pair12 = 0.0;                             // ⟨a₁ a₂⟩ analog
    cplx s1 = 0.0, s2 = 0.0;                       // ⟨a₁⟩, ⟨a₂⟩
};
Quantifiers quantifiers_from_moments(const QuantifierMoments& q);

// Numerical quantifiers at (ω₁, ω₂): R from three two-sensor configurations,
// B and S from one four-sensor configuration (two degenerate sensors per
// frequency).
Quantifiers quantifiers(const QuantumModel& m, const SensorConfig& s);

// --- landscapes --------------------------------------------------------------

struct LandscapeRequest {
    std::vector<double> varpi1_grid;
    std::vector<double> varpi2_grid;
    double big_gamma = 2.0;
    bool with_interference = false;
    bool with_quantifiers = false;
    int workers = 0;  // 0 = hardware concurrency
};

struct Landscape {
    std::vector<double> varpi1_grid;
    std::vector<double> varpi2_grid;
    // channel name → row-major [i1 * n2 + i2] values; NaN marks missing points
    std::map<std::string, std::vector<double>> channels;
    double varpi_scale = 1.0;
    double big_gamma = 0.0;

    double at(const std::string& channel, std::size_t i1, std::size_t i2) const;
};

Landscape g2_landscape(const QuantumModel& m, const LandscapeRequest& req);

}  // namespace fresco::twophoton
