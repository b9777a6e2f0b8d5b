#include "fresco/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fresco::gaussian {

void GaussianParams::validate() const {
    if (r1 < 0.0 || r2 < 0.0 || t12 < 0.0)
        throw std::invalid_argument("squeezing magnitudes must be non-negative");
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
}

BogoliubovCoefficients bogoliubov_coefficients(const GaussianParams& p) {
    BogoliubovCoefficients b;
    b.mu1 = std::cosh(p.r1);
    b.mu2 = std::cosh(p.r2);
    b.nu1 = std::polar(std::sinh(p.r1), p.theta1);
    b.nu2 = std::polar(std::sinh(p.r2), p.theta2);
    b.m11 = std::cosh(p.t12);
    b.n12 = std::polar(std::sinh(p.t12), p.vartheta12);
    return b;
}

namespace {

// e^{G} |ψ⟩ for anti-Hermitian G via the dense exponential (exactly unitary
// within the truncation).
DenseVec apply_exp(const DenseMat& gen, const DenseVec& v) {
    return detail::expm(gen) * v;
}

}  // namespace

TwoModeState build_state(const GaussianParams& p, int n_max, double leakage_tol) {
    p.validate();
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    const int d = n_max, d2 = n_max * n_max;
    const double e = p.epsilon;

    const DenseMat a = annihilation(d);
    const DenseMat id = DenseMat::Identity(d, d);
    auto kron = [&](const DenseMat& x, const DenseMat& y) {
        DenseMat out(d2, d2);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = x(i, j) * y;
        return out;
    };
    const DenseMat a1 = kron(a, id);
    const DenseMat a2 = kron(id, a);

    DenseVec psi = DenseVec::Zero(d2);
    psi(0) = 1.0;

    // S₂⁽¹²⁾ = exp(ζ* a₁a₂ − ζ a₁†a₂†), scaled ζ → ε²ζ. The conjugation pattern
    // matches the single-mode convention, so that the Bogoliubov rule
    // S₂†a_iS₂ = cosh(t) a_i − e^{iϑ}sinh(t) a_ī† and ⟨a₁a₂⟩ ≈ −ζ₁₂ hold.
    const cplx zeta = e * e * p.zeta12();
    psi = apply_exp(std::conj(zeta) * (a1 * a2) - zeta * (a1.adjoint() * a2.adjoint()).eval(), psi);
    // S₁⁽ⁱ⁾ = exp(½(ξ* a² − ξ a†²)), scaled ξ → ε²ξ
    const cplx xi1 = e * e * p.xi1();
    const cplx xi2 = e * e * p.xi2();
    psi = apply_exp(0.5 * (std::conj(xi1) * (a1 * a1) - xi1 * (a1.adjoint() * a1.adjoint()).eval()),
                    psi);
    psi = apply_exp(0.5 * (std::conj(xi2) * (a2 * a2) - xi2 * (a2.adjoint() * a2.adjoint()).eval()),
                    psi);
    // D_i = exp(α a† − α* a), scaled α → εα
    const cplx al1 = e * p.alpha1;
    const cplx al2 = e * p.alpha2;
    psi = apply_exp(al1 * a1.adjoint() - std::conj(al1) * a1, psi);
    psi = apply_exp(al2 * a2.adjoint() - std::conj(al2) * a2, psi);

    psi /= psi.norm();

    TwoModeState s;
    s.n_max = n_max;
    s.amplitudes = psi;
    double tail = 0.0;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            if (n1 >= d - 2 || n2 >= d - 2) tail += std::norm(psi(n1 * d + n2));
    s.tail_occupancy = tail;
    if (tail > leakage_tol)
        throw std::runtime_error("build_state: truncation leakage " + std::to_string(tail) +
                                 " exceeds tolerance; increase n_max");
    return s;
}

cplx state_moment(const TwoModeState& s, int m, int n, int p, int q) {
    const int d = s.n_max;
    // ⟨ψ| a₁†^m a₁^n a₂†^p a₂^q |ψ⟩ = Σ over basis with ladder factors.
    // Apply a₁^n a₂^q to |ψ⟩, a₁^m a₂^p to |ψ⟩, then inner product.
    auto lowered = [&](const DenseVec& v, int k1, int k2) {
        DenseVec out = DenseVec::Zero(d * d);
        for (int n1 = k1; n1 < d; ++n1)
            for (int n2 = k2; n2 < d; ++n2) {
                double f = 1.0;
                for (int t = 0; t < k1; ++t) f *= std::sqrt(double(n1 - t));
                for (int t = 0; t < k2; ++t) f *= std::sqrt(double(n2 - t));
                out((n1 - k1) * d + (n2 - k2)) += f * v(n1 * d + n2);
            }
        return out;
    };
    const DenseVec right = lowered(s.amplitudes, n, q);
    const DenseVec left = lowered(s.amplitudes, m, p);
    return left.dot(right);  // Eigen dot conjugates the left argument
}

MomentSet moments_exact(const TwoModeState& s) {
    MomentSet out;
    out.n1 = state_moment(s, 1, 1, 0, 0).real();
    out.n2 = state_moment(s, 0, 0, 1, 1).real();
    out.a1sq = state_moment(s, 0, 2, 0, 0);
    out.a2sq = state_moment(s, 0, 0, 0, 2);
    out.a1a2 = state_moment(s, 0, 1, 0, 1);
    const double m4_1 = state_moment(s, 2, 2, 0, 0).real();
    const double m4_2 = state_moment(s, 0, 0, 2, 2).real();
    const double m4_12 = state_moment(s, 1, 1, 1, 1).real();
    out.g2_1 = m4_1 / (out.n1 * out.n1);
    out.g2_2 = m4_2 / (out.n2 * out.n2);
    out.g2_12 = m4_12 / (out.n1 * out.n2);
    return out;
}

MomentTable moment_table_exact(const TwoModeState& s) {
    MomentTable t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) t.at(i, j, k, l) = state_moment(s, i, l, j, k);
    return t;
}

MomentSet moments_leading_order(const GaussianParams& p) {
    p.validate();
    const double e2 = p.epsilon * p.epsilon;
    const double e4 = e2 * e2;
    const double A1 = std::abs(p.alpha1), A2 = std::abs(p.alpha2);
    const double phi1 = std::arg(p.alpha1), phi2 = std::arg(p.alpha2);

    MomentSet out;
    out.a1sq = e2 * (p.alpha1 * p.alpha1 - p.xi1());
    out.a2sq = e2 * (p.alpha2 * p.alpha2 - p.xi2());
    out.a1a2 = e2 * (p.alpha1 * p.alpha2 - p.zeta12());
    out.n1 = e2 * A1 * A1 + e4 * (p.r1 * p.r1 + p.t12 * p.t12);
    out.n2 = e2 * A2 * A2 + e4 * (p.r2 * p.r2 + p.t12 * p.t12);

    if (A1 > 0.0 && A2 > 0.0) {
        out.g2_1 = 1.0 - 2.0 * p.r1 * std::cos(2.0 * phi1 - p.theta1) / (A1 * A1) +
                   p.r1 * p.r1 / std::pow(A1, 4);
        out.g2_2 = 1.0 - 2.0 * p.r2 * std::cos(2.0 * phi2 - p.theta2) / (A2 * A2) +
                   p.r2 * p.r2 / std::pow(A2, 4);
        out.g2_12 = 1.0 - 2.0 * p.t12 * std::cos(phi1 + phi2 - p.vartheta12) / (A1 * A2) +
                    p.t12 * p.t12 / (A1 * A1 * A2 * A2);
    } else {
        const double s1 = p.r1 * p.r1 + p.t12 * p.t12;
        const double s2 = p.r2 * p.r2 + p.t12 * p.t12;
        out.g2_1 = p.r1 * p.r1 / (e4 * s1 * s1);
        out.g2_2 = p.r2 * p.r2 / (e4 * s2 * s2);
        out.g2_12 = p.t12 * p.t12 / (e4 * s1 * s2);
    }
    return out;
}

InterferenceTerms decomposition_leading_order(const GaussianParams& p) {
    const double A1 = std::abs(p.alpha1), A2 = std::abs(p.alpha2);
    if (A1 == 0.0 || A2 == 0.0)
        throw std::invalid_argument("decomposition_leading_order requires nonzero amplitudes");
    const double phi1 = std::arg(p.alpha1), phi2 = std::arg(p.alpha2);
    InterferenceTerms out;
    out.i0 = p.t12 * p.t12 / (A1 * A1 * A2 * A2);
    out.i1 = 0.0;
    out.i2 = -2.0 * p.t12 * std::cos(phi1 + phi2 - p.vartheta12) / (A1 * A2);
    out.g2 = 1.0 + out.i0 + out.i1 + out.i2;
    return out;
}

double fluctuation_split_check(const TwoModeState& s) {
    const MomentTable t = moment_table_exact(s);
    const cplx a1 = t.at(0, 0, 0, 1);
    const cplx a2 = t.at(0, 0, 1, 0);
    const InterferenceTerms fluct = twophoton::interference_terms(t, a1, a2);
    const InterferenceTerms full = twophoton::interference_terms_fullstate(t, a1, a2);
    double dev = std::max({std::abs(fluct.i0 - full.i0), std::abs(fluct.i1 - full.i1),
                           std::abs(fluct.i2 - full.i2)});
    // the identity itself, both routes
    dev = std::max(dev, std::abs(1.0 + fluct.i0 + fluct.i1 + fluct.i2 - fluct.g2));
    dev = std::max(dev, std::abs(1.0 + full.i0 + full.i1 + full.i2 - full.g2));
    return dev;
}

}  // namespace fresco::gaussian
