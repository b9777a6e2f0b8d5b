#include "fresco/models.hpp"

#include <cmath>
#include <stdexcept>

namespace fresco {

void RFParams::validate() const {
    if (gamma_sigma <= 0.0) throw std::invalid_argument("gamma_sigma must be positive");
    if (omega_sigma < 0.0) throw std::invalid_argument("omega_sigma must be non-negative");
}

double CavityParams::big_gamma_a() const {
    return std::sqrt(gamma_a * gamma_a + 4.0 * delta_a * delta_a);
}

double CavityParams::lambda_amp() const { return big_gamma_a() * lambda / 2.0; }

void CavityParams::validate() const {
    if (gamma_a <= 0.0) throw std::invalid_argument("gamma_a must be positive");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (lambda >= 1.0)
        throw std::invalid_argument("squeezing ratio lambda >= 1: unstable, steady state unphysical");
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
}

double SensorConfig::effective_epsilon(double system_rate) const {
    if (epsilon > 0.0) return epsilon;
    return 1e-3 * std::max(system_rate, big_gamma);
}

void SensorConfig::validate() const {
    if (big_gamma <= 0.0) throw std::invalid_argument("filter width must be positive");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
}

namespace {

void require_hermitian(const Operator& h) {
    const DenseMat m = h.dense();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("hamiltonian is not Hermitian");
}

}  // namespace

QuantumModel resonance_fluorescence(const RFParams& p) {
    p.validate();
    SpaceSignature sig{{{"sigma", 2}}};
    Operator sm = embed(lowering2(), "sigma", sig);
    Operator sp = sm.adjoint();
    Operator h = cplx(p.delta_sigma, 0) * (sp * sm) + cplx(p.omega_sigma, 0) * (sp + sm);
    require_hermitian(h);

    QuantumModel m;
    m.signature = sig;
    m.hamiltonian = h;
    m.collapses = {{sm, p.gamma_sigma}};
    m.detection_op = sm;
    m.labeled_ops = {{"sigma", sm}};
    m.varpi_scale = std::sqrt(p.delta_sigma * p.delta_sigma + 4.0 * p.omega_sigma * p.omega_sigma);
    if (m.varpi_scale == 0.0) m.varpi_scale = p.gamma_sigma;
    return m;
}

QuantumModel squeezed_cavity(const CavityParams& p) {
    p.validate();
    SpaceSignature sig{{{"a", p.n_max}}};
    Operator a = embed(annihilation(p.n_max), "a", sig);
    Operator ad = a.adjoint();

    const double lam_amp = p.lambda_amp();
    const double theta = p.theta_drive.value_or(phase_matching_angle(p));
    const double omega = p.omega_a.value_or(optimum_drive(p));

    Operator h = cplx(p.delta_a, 0) * (ad * a) +
                 cplx(0, lam_amp / 2.0) * (ad * ad - a * a) +
                 cplx(omega, 0) * (std::polar(1.0, theta) * ad + std::polar(1.0, -theta) * a);
    require_hermitian(h);

    QuantumModel m;
    m.signature = sig;
    m.hamiltonian = h;
    m.collapses = {{a, p.gamma_a}};
    m.detection_op = a;
    m.labeled_ops = {{"a", a}};
    m.varpi_scale = p.delta_a != 0.0 ? std::abs(p.delta_a) : p.gamma_a;
    return m;
}

namespace {

// Rebuild a model on a signature extended by extra two-level subsystems.
QuantumModel extend_with_sensors(const QuantumModel& m,
                                 const std::vector<std::pair<double, double>>& sensors,
                                 double epsilon) {
    SpaceSignature sig = m.signature;
    for (std::size_t k = 0; k < sensors.size(); ++k)
        sig.subsystems.emplace_back("s" + std::to_string(k + 1), 2);

    // Old operators acquire identity factors on the right.
    auto lift = [&](const Operator& op) {
        SparseMat acc = op.matrix;
        for (std::size_t k = 0; k < sensors.size(); ++k) {
            SparseMat id(2, 2);
            id.setIdentity();
            acc = kron_sparse(acc, id);
        }
        return Operator{sig, acc};
    };

    QuantumModel out;
    out.signature = sig;
    out.varpi_scale = m.varpi_scale;
    out.hamiltonian = lift(m.hamiltonian);
    out.detection_op = lift(m.detection_op);
    for (const auto& [label, op] : m.labeled_ops) out.labeled_ops[label] = lift(op);
    for (const auto& [c, rate] : m.collapses) out.collapses.emplace_back(lift(c), rate);

    for (std::size_t k = 0; k < sensors.size(); ++k) {
        const auto [omega_k, gamma_k] = sensors[k];
        const std::string label = "s" + std::to_string(k + 1);
        Operator sk = embed(lowering2(), label, sig);
        Operator skd = sk.adjoint();
        out.hamiltonian = out.hamiltonian + cplx(omega_k, 0) * (skd * sk) +
                          cplx(epsilon, 0) * (out.detection_op.adjoint() * sk +
                                              skd * out.detection_op);
        out.collapses.emplace_back(sk, gamma_k);
        out.labeled_ops[label] = sk;
    }
    return out;
}

}  // namespace

QuantumModel attach_sensors(const QuantumModel& m, const SensorConfig& s) {
    s.validate();
    double system_rate = m.collapses.empty() ? 1.0 : m.collapses.front().second;
    const double eps = s.effective_epsilon(system_rate);
    return extend_with_sensors(m, {{s.omega_1, s.big_gamma}, {s.omega_2, s.big_gamma}}, eps);
}

QuantumModel attach_sensor(const QuantumModel& m, double omega, double big_gamma, double epsilon) {
    if (big_gamma <= 0.0) throw std::invalid_argument("filter width must be positive");
    return extend_with_sensors(m, {{omega, big_gamma}}, epsilon);
}

QuantumModel homodyne(const QuantumModel& m, cplx alpha) {
    QuantumModel out = m;
    out.detection_op = m.detection_op + alpha * identity_operator(m.signature);
    return out;
}

double phase_matching_angle(const CavityParams& p) {
    if (p.gamma_a <= 0.0) throw std::invalid_argument("gamma_a must be positive");
    return 0.5 * std::atan2(2.0 * p.delta_a, p.gamma_a);
}

double optimum_drive(const CavityParams& p) {
    if (p.lambda < 0.0 || p.lambda >= 1.0)
        throw std::invalid_argument("optimum drive requires 0 <= lambda < 1");
    return p.big_gamma_a() * std::sqrt(p.lambda / 2.0) * (1.0 + p.lambda) /
           (2.0 * (1.0 - p.lambda));
}

RFMoments rf_steady_moments(const RFParams& p) {
    const double den = p.gamma_sigma * p.gamma_sigma + 4.0 * p.delta_sigma * p.delta_sigma +
                       8.0 * p.omega_sigma * p.omega_sigma;
    RFMoments m;
    m.sigma_mean = -2.0 * p.omega_sigma * cplx(2.0 * p.delta_sigma, p.gamma_sigma) / den;
    m.population = 4.0 * p.omega_sigma * p.omega_sigma / den;
    return m;
}

CavityMoments cavity_steady_moments(const CavityParams& p) {
    const double lam_amp = p.lambda_amp();
    const double theta = p.theta_drive.value_or(phase_matching_angle(p));
    const double omega = p.omega_a.value_or(optimum_drive(p));
    const double den = p.gamma_a * p.gamma_a + 4.0 * p.delta_a * p.delta_a - 4.0 * lam_amp * lam_amp;

    const cplx eip = std::polar(1.0, theta);
    const cplx eim = std::polar(1.0, -theta);
    CavityMoments m;
    m.a_mean = -2.0 * cplx(0, 1) * omega *
               (eip * cplx(p.gamma_a, -2.0 * p.delta_a) - 2.0 * eim * lam_amp) / den;
    m.population = 2.0 * lam_amp * lam_amp / den + std::norm(m.a_mean);
    m.a_sq_variance = lam_amp * cplx(p.gamma_a, -2.0 * p.delta_a) / den;
    return m;
}

double cavity_g2_phase_matched(double lambda, double big_gamma_a, double omega_a) {
    // Exact Gaussian-state correlator at phase matching: with coherent part
    // P = |⟨a⟩|², thermal part N and squeezing magnitude S of the fluctuations,
    // g² = (P² + 4PN − 2PS + 2N² + S²)/(P+N)² — destructive cross term by the
    // phase-matching choice. Its minimum over the drive is 2λ(2−λ)/(1+2λ−λ²).
    const double l = lambda, G = big_gamma_a, O = omega_a;
    const double P = 4.0 * O * O / (G * G * (1.0 + l) * (1.0 + l));
    const double N = l * l / (2.0 * (1.0 - l * l));
    const double S = l / (2.0 * (1.0 - l * l));
    const double n = P + N;
    return (P * P + 4.0 * P * N - 2.0 * P * S + 2.0 * N * N + S * S) / (n * n);
}

double cavity_g2_minimum(double lambda) {
    return 2.0 * lambda * (2.0 - lambda) / (1.0 + 2.0 * lambda - lambda * lambda);
}

}  // namespace fresco
