#include "fresco/twophoton.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fresco::twophoton {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int binom(int n, int k) { return (k == 0 || k == n) ? 1 : n; }  // n,k ∈ {0,1} here

cplx ipow(cplx z, int p) {
    cplx out(1, 0);
    for (int i = 0; i < p; ++i) out *= z;
    return out;
}
}  // namespace

cplx fluctuation_moment(const MomentTable& t, cplx alpha1, cplx alpha2, int i, int j, int k,
                        int l) {
    cplx acc(0, 0);
    for (int i2 = 0; i2 <= i; ++i2)
        for (int j2 = 0; j2 <= j; ++j2)
            for (int k2 = 0; k2 <= k; ++k2)
                for (int l2 = 0; l2 <= l; ++l2) {
                    const int drop = (i - i2) + (j - j2) + (k - k2) + (l - l2);
                    const double sign = (drop % 2 == 0) ? 1.0 : -1.0;
                    acc += sign * double(binom(i, i2) * binom(j, j2) * binom(k, k2) * binom(l, l2)) *
                           ipow(std::conj(alpha1), i - i2) * ipow(std::conj(alpha2), j - j2) *
                           ipow(alpha2, k - k2) * ipow(alpha1, l - l2) * t.at(i2, j2, k2, l2);
                }
    return acc;
}

InterferenceTerms interference_terms(const MomentTable& t, cplx alpha1, cplx alpha2) {
    const double n1 = t.at(1, 0, 0, 1).real();
    const double n2 = t.at(0, 1, 1, 0).real();
    if (n1 <= 0.0 || n2 <= 0.0) throw std::runtime_error("interference_terms: vanishing population");
    const double nn = n1 * n2;

    auto fl = [&](int i, int j, int k, int l) {
        return fluctuation_moment(t, alpha1, alpha2, i, j, k, l);
    };
    InterferenceTerms out;
    out.i0 = (fl(1, 1, 1, 1) - fl(1, 0, 0, 1) * fl(0, 1, 1, 0)).real() / nn;
    out.i1 = 2.0 * (alpha1 * fl(1, 1, 1, 0) + alpha2 * fl(1, 1, 0, 1)).real() / nn;
    out.i2 = 2.0 * (alpha1 * alpha2 * fl(1, 1, 0, 0) + alpha1 * std::conj(alpha2) * fl(1, 0, 1, 0))
                 .real() / nn;
    out.g2 = t.at(1, 1, 1, 1).real() / nn;
    return out;
}

InterferenceTerms interference_terms_fullstate(const MomentTable& t, cplx alpha1, cplx alpha2) {
    const double n1 = t.at(1, 0, 0, 1).real();
    const double n2 = t.at(0, 1, 1, 0).real();
    if (n1 <= 0.0 || n2 <= 0.0) throw std::runtime_error("interference_terms: vanishing population");
    const double nn = n1 * n2;
    const double p1 = std::norm(alpha1), p2 = std::norm(alpha2);

    const cplx G12 = t.at(1, 1, 1, 1);            // ⟨a₁†a₂†a₂a₁⟩
    const cplx A12 = t.at(1, 1, 0, 0);            // ⟨a₁†a₂†⟩
    const cplx C12 = t.at(1, 0, 1, 0);            // ⟨a₁†a₂⟩
    const cplx T1 = t.at(1, 1, 1, 0);             // ⟨a₁†a₂†a₂⟩
    const cplx T2 = t.at(1, 1, 0, 1);             // ⟨a₁†a₂†a₁⟩

    InterferenceTerms out;
    out.i0 = (G12 - cplx(n1 * n2) - 4.0 * p1 * p2 + 2.0 * p1 * n2 + 2.0 * p2 * n1 +
              2.0 * (alpha1 * alpha2 * A12 + alpha1 * std::conj(alpha2) * C12 - alpha1 * T1 -
                     alpha2 * T2)
                  .real())
                 .real() / nn;
    out.i1 = 2.0 *
             ((alpha1 * T1 + alpha2 * T2 - 2.0 * alpha1 * alpha2 * A12 -
               2.0 * alpha1 * std::conj(alpha2) * C12)
                  .real() +
              4.0 * p1 * p2 - p1 * n2 - p2 * n1) /
             nn;
    out.i2 = 2.0 * ((alpha1 * alpha2 * A12 + alpha1 * std::conj(alpha2) * C12).real() -
                    2.0 * p1 * p2) / nn;
    out.g2 = G12.real() / nn;
    return out;
}

PointMoments sensor_point_moments(sensors::VanishingCoupling& vc) {
    if (vc.sensor_count() != 2)
        throw std::invalid_argument("sensor_point_moments needs exactly two sensors");
    PointMoments pm;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const unsigned bra = (i ? 1u : 0u) | (j ? 2u : 0u);
                    const unsigned ket = (l ? 1u : 0u) | (k ? 2u : 0u);
                    pm.table.at(i, j, k, l) = vc.moment(bra, ket);
                }
    pm.alpha1 = pm.table.at(0, 0, 0, 1);
    pm.alpha2 = pm.table.at(0, 0, 1, 0);
    pm.n1 = pm.table.at(1, 0, 0, 1).real();
    pm.n2 = pm.table.at(0, 1, 1, 0).real();
    return pm;
}

namespace {

double finite_eps_g2(const QuantumModel& m, const SensorConfig& s, double eps) {
    SensorConfig cfg = s;
    cfg.epsilon = eps;
    QuantumModel aug = attach_sensors(m, cfg);
    Superoperator L = build_liouvillian(aug.hamiltonian, aug.collapses);
    SteadyStateOptions opt;
    opt.extended_precision = aug.signature.dim() <= 32;
    DensityMatrix rho = steady_state(L, opt);
    const Operator& s1 = aug.labeled_ops.at("s1");
    const Operator& s2 = aug.labeled_ops.at("s2");
    const Operator n1 = s1.adjoint() * s1;
    const Operator n2 = s2.adjoint() * s2;
    const Operator m4 = s1.adjoint() * s2.adjoint() * s2 * s1;
    auto ev = [&](const Operator& op) {
        return expectation(rho.matrix, rho.signature, std::span<const Operator>(&op, 1)).real();
    };
    const double d1 = ev(n1), d2 = ev(n2);
    if (d1 <= 0.0 || d2 <= 0.0) return kNaN;
    return ev(m4) / (d1 * d2);
}

}  // namespace

double g2_coincidence(const QuantumModel& m, const SensorConfig& s, SensorMethod method) {
    s.validate();
    switch (method) {
        case SensorMethod::Vanishing: {
            sensors::VanishingCoupling vc(
                m, {{s.omega_1, s.big_gamma}, {s.omega_2, s.big_gamma}});
            return sensors::filtered_g2(vc);
        }
        case SensorMethod::FiniteEpsilon: {
            double system_rate = m.collapses.empty() ? 1.0 : m.collapses.front().second;
            return finite_eps_g2(m, s, s.effective_epsilon(system_rate));
        }
        case SensorMethod::FiniteRichardson: {
            double system_rate = m.collapses.empty() ? 1.0 : m.collapses.front().second;
            const double eps = s.effective_epsilon(system_rate);
            const double f = finite_eps_g2(m, s, eps);
            const double h = finite_eps_g2(m, s, eps / 2.0);
            return (4.0 * h - f) / 3.0;
        }
    }
    return kNaN;
}

std::vector<double> g2_tau(const QuantumModel& m, const SensorConfig& s,
                           std::span<const double> tau_grid) {
    s.validate();
    return sensors::filtered_g2_tau(m, {s.omega_1, s.big_gamma}, {s.omega_2, s.big_gamma},
                                    tau_grid);
}

InterferenceTerms interference_decomposition(const QuantumModel& m, const SensorConfig& s,
                                             std::optional<std::pair<cplx, cplx>> alphas) {
    s.validate();
    sensors::VanishingCoupling vc(m, {{s.omega_1, s.big_gamma}, {s.omega_2, s.big_gamma}});
    PointMoments pm = sensor_point_moments(vc);
    const cplx a1 = alphas ? alphas->first : pm.alpha1;
    const cplx a2 = alphas ? alphas->second : pm.alpha2;
    InterferenceTerms out = interference_terms(pm.table, a1, a2);
    if (!alphas) {
        const double residue = std::abs(1.0 + out.i0 + out.i1 + out.i2 - out.g2);
        if (residue > 1e-9 * std::max(1.0, std::abs(out.g2)))
            throw std::runtime_error("interference decomposition identity violated: residue " +
                                     std::to_string(residue));
    }
    return out;
}

double g2_analytic_detuned(double v1, double v2) {
    const double den = (v1 + v2) * (v1 + v2) * (v1 + 1.0) * (v1 + 1.0) * (v2 + 1.0) * (v2 + 1.0);
    const double s = v1 * v1 + v1 + v2 * v2 + v2;
    if (den == 0.0) return s == 0.0 ? kNaN : kInf;
    return s * s / den;
}

InterferenceTerms interference_analytic_detuned(double v1, double v2) {
    InterferenceTerms out;
    const double den = (v1 + v2) * (v1 + 1.0) * (v2 + 1.0);
    const double num = v1 * v2 * (2.0 + v1 + v2);
    if (den == 0.0) {
        out.i0 = num == 0.0 ? kNaN : kInf;
        out.i2 = num == 0.0 ? kNaN : -kInf * (num > 0 ? 1.0 : -1.0);
        out.g2 = kInf;
        return out;
    }
    out.i2 = -2.0 * num / den;
    out.i0 = (out.i2 / 2.0) * (out.i2 / 2.0);
    out.i1 = 0.0;
    out.g2 = 1.0 + out.i0 + out.i1 + out.i2;
    return out;
}

double g2_filtered_heitler(double big_gamma, double gamma, double tau) {
    const double G = big_gamma, g = gamma;
    if (std::abs(G - g) < 1e-9 * g) {
        const double a = 1.0 - 0.5 * (1.0 + g * tau / 2.0) * std::exp(-g * tau / 2.0);
        return a * a;
    }
    const double den = G * G - g * g;
    const double a = 1.0 + (G * g / den) * std::exp(-G * tau / 2.0) -
                     (G * G / den) * std::exp(-g * tau / 2.0);
    return a * a;
}

double g2_broadband(double gamma, double tau) {
    const double a = 1.0 - std::exp(-gamma * tau / 2.0);
    return a * a;
}

double cavity_g2_tau_analytic(const CavityParams& p, double tau) {
    return 1.0 + std::exp(-p.gamma_a * tau) -
           2.0 * std::exp(-p.gamma_a * tau / 2.0) * std::cos(p.delta_a * tau);
}

double homodyned_g2_analytic(const RFParams& p, double F, double tau) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("homodyne fraction F must be in [0,1]");
    const double g = p.gamma_sigma;
    if (F == 1.0) {
        const double b = std::pow(p.delta_sigma, 4) / (4.0 * std::pow(p.omega_sigma, 4));
        return 1.0 + b * std::exp(-g * tau);
    }
    const double u = 1.0 - F;
    return 1.0 + std::exp(-g * tau) / std::pow(u, 4) -
           2.0 / (u * u) * std::exp(-g * tau / 2.0) * std::cos(p.delta_sigma * tau);
}

HomodynedG2 g2_homodyned_tau(const RFParams& p, double F, std::span<const double> tau_grid) {
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("homodyne fraction F must be in [0,1]");
    QuantumModel m = resonance_fluorescence(p);
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DensityMatrix rho = steady_state(L);

    const Operator sigma = m.labeled_ops.at("sigma");
    const cplx s_mean =
        expectation(rho.matrix, rho.signature, std::span<const Operator>(&sigma, 1));
    QuantumModel hm = homodyne(m, -F * s_mean);

    // Broadband limit: Glauber correlator of the displaced detection field.
    const Operator d = hm.detection_op;
    const Operator nd = d.adjoint() * d;
    const cplx n = expectation(rho.matrix, rho.signature, std::span<const Operator>(&nd, 1));
    std::vector<cplx> G = two_time_correlator(L, rho, d.adjoint(), nd, d, tau_grid);

    HomodynedG2 out;
    out.numeric.reserve(tau_grid.size());
    out.analytic.reserve(tau_grid.size());
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        out.numeric.push_back(G[i].real() / (n.real() * n.real()));
        out.analytic.push_back(homodyned_g2_analytic(p, F, tau_grid[i]));
    }
    return out;
}

std::pair<double, double> Locus::circle_point(double theta) const {
    return {c1 + radius * std::cos(theta), c2 + radius * std::sin(theta)};
}

Locus feature_loci(LocusKind kind) {
    Locus out;
    out.kind = kind;
    switch (kind) {
        case LocusKind::Circle:
            out.c1 = out.c2 = -0.5;
            out.radius = std::sqrt(0.5);
            break;
        case LocusKind::BunchingLines:
            out.lines = {{1, 0, -1}, {0, 1, -1}, {1, 1, 0}};
            break;
        case LocusKind::SecondaryLines:
            out.lines = {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 1, -1}};
            break;
    }
    return out;
}

Quantifiers quantifiers_from_moments(const QuantifierMoments& q) {
    Quantifiers out;
    out.R = q.g2_12 * q.g2_12 / (q.g2_11 * q.g2_22);
    const double bden = q.m1111 + q.m2222 + 2.0 * q.m1212;
    out.B = std::sqrt(2.0) *
            std::abs((q.m1111 + q.m2222 - 4.0 * q.m1212 - 2.0 * q.m1122.real()) / bden);
    const double sden = q.m1212 - std::norm(q.s1 * q.s2);
    // coherent fields cancel the denominator exactly; flag near-exact cancellation
    if (std::abs(sden) < 1e-9 * (std::abs(q.m1212) + std::norm(q.s1 * q.s2))) {
        out.S_valid = false;
        out.S = kNaN;
    } else {
        out.S = std::abs(q.anom4 - q.pair12 * q.pair12) / sden;
    }
    return out;
}

Quantifiers quantifiers(const QuantumModel& m, const SensorConfig& s) {
    s.validate();
    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    DenseMat rho = steady_state(L).matrix;

    auto pair_g2 = [&](double wa, double wb) {
        sensors::VanishingCoupling vc(m, {{wa, s.big_gamma}, {wb, s.big_gamma}}, &rho);
        return sensors::filtered_g2(vc);
    };

    QuantifierMoments q;
    q.g2_12 = pair_g2(s.omega_1, s.omega_2);
    q.g2_11 = pair_g2(s.omega_1, s.omega_1);
    q.g2_22 = pair_g2(s.omega_2, s.omega_2);

    // Four sensors: a,b at ω₁ and c,d at ω₂; ⟨ς₁†²ς₁²⟩ → ⟨ςa†ςb†ςbςa⟩ etc.
    sensors::VanishingCoupling vc4(m,
                                   {{s.omega_1, s.big_gamma},
                                    {s.omega_1, s.big_gamma},
                                    {s.omega_2, s.big_gamma},
                                    {s.omega_2, s.big_gamma}},
                                   &rho);
    q.m1111 = vc4.moment(0b0011, 0b0011).real();
    q.m2222 = vc4.moment(0b1100, 0b1100).real();
    q.m1212 = vc4.moment(0b0101, 0b0101).real();
    q.m1122 = vc4.moment(0b0011, 0b1100);
    q.anom4 = vc4.moment(0b0000, 0b1111);
    q.pair12 = vc4.moment(0b0000, 0b0101);
    q.s1 = vc4.moment(0b0000, 0b0001);
    q.s2 = vc4.moment(0b0000, 0b0100);
    return quantifiers_from_moments(q);
}

double Landscape::at(const std::string& channel, std::size_t i1, std::size_t i2) const {
    return channels.at(channel)[i1 * varpi2_grid.size() + i2];
}

Landscape g2_landscape(const QuantumModel& m, const LandscapeRequest& req) {
    Landscape out;
    out.varpi1_grid = req.varpi1_grid;
    out.varpi2_grid = req.varpi2_grid;
    out.varpi_scale = m.varpi_scale;
    out.big_gamma = req.big_gamma;
    const std::size_t n1 = req.varpi1_grid.size();
    const std::size_t n2 = req.varpi2_grid.size();
    const std::size_t total = n1 * n2;

    out.channels["g2"] = std::vector<double>(total, kNaN);
    if (req.with_interference)
        for (const char* name : {"I0", "I1", "I2"})
            out.channels[name] = std::vector<double>(total, kNaN);
    if (req.with_quantifiers)
        for (const char* name : {"R", "B", "S"})
            out.channels[name] = std::vector<double>(total, kNaN);

    Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
    const DenseMat rho = steady_state(L).matrix;
    const double scale = m.varpi_scale;

    // Autocorrelations g²(ω,ω) depend on one frequency only; precompute per
    // distinct grid value when the R channel is requested.
    std::vector<double> auto1(n1, kNaN), auto2(n2, kNaN);
    if (req.with_quantifiers) {
        auto auto_g2 = [&](double w) {
            sensors::VanishingCoupling vc(m, {{w, req.big_gamma}, {w, req.big_gamma}}, &rho);
            return sensors::filtered_g2(vc);
        };
        for (std::size_t i = 0; i < n1; ++i) auto1[i] = auto_g2(req.varpi1_grid[i] * scale);
        for (std::size_t j = 0; j < n2; ++j) auto2[j] = auto_g2(req.varpi2_grid[j] * scale);
    }

    const int workers = req.workers > 0
                            ? req.workers
                            : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};

    auto channel_ptr = [&](const char* name) {
        auto it = out.channels.find(name);
        return it == out.channels.end() ? nullptr : it->second.data();
    };
    double* ch_g2 = channel_ptr("g2");
    double* ch_i0 = channel_ptr("I0");
    double* ch_i1 = channel_ptr("I1");
    double* ch_i2 = channel_ptr("I2");
    double* ch_r = channel_ptr("R");
    double* ch_b = channel_ptr("B");
    double* ch_s = channel_ptr("S");

    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const std::size_t i = idx / n2, j = idx % n2;
            const double w1 = req.varpi1_grid[i] * scale;
            const double w2 = req.varpi2_grid[j] * scale;

            sensors::VanishingCoupling vc(m, {{w1, req.big_gamma}, {w2, req.big_gamma}}, &rho);
            const double p1 = vc.population(0);
            const double p2 = vc.population(1);
            if (p1 <= 0.0 || p2 <= 0.0) continue;  // dark point, left missing

            ch_g2[idx] = vc.moment(0b11, 0b11).real() / (p1 * p2);
            if (req.with_interference) {
                PointMoments pm = sensor_point_moments(vc);
                InterferenceTerms it = interference_terms(pm.table, pm.alpha1, pm.alpha2);
                ch_i0[idx] = it.i0;
                ch_i1[idx] = it.i1;
                ch_i2[idx] = it.i2;
            }
            if (req.with_quantifiers) {
                const double g12 = ch_g2[idx];
                ch_r[idx] = g12 * g12 / (auto1[i] * auto2[j]);
                sensors::VanishingCoupling vc4(m,
                                               {{w1, req.big_gamma},
                                                {w1, req.big_gamma},
                                                {w2, req.big_gamma},
                                                {w2, req.big_gamma}},
                                               &rho);
                QuantifierMoments q;
                q.g2_11 = auto1[i];
                q.g2_22 = auto2[j];
                q.g2_12 = g12;
                q.m1111 = vc4.moment(0b0011, 0b0011).real();
                q.m2222 = vc4.moment(0b1100, 0b1100).real();
                q.m1212 = vc4.moment(0b0101, 0b0101).real();
                q.m1122 = vc4.moment(0b0011, 0b1100);
                q.anom4 = vc4.moment(0b0000, 0b1111);
                q.pair12 = vc4.moment(0b0000, 0b0101);
                q.s1 = vc4.moment(0b0000, 0b0001);
                q.s2 = vc4.moment(0b0000, 0b0100);
                Quantifiers qq = quantifiers_from_moments(q);
                ch_b[idx] = qq.B;
                ch_s[idx] = qq.S_valid ? qq.S : kNaN;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace fresco::twophoton
