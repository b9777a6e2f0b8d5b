#include "fresco/steadystate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace fresco {

void DensityMatrix::validate() const {
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) throw std::runtime_error("density matrix not Hermitian");
    if (std::abs(matrix.trace() - cplx(1.0, 0.0)) > 1e-10)
        throw std::runtime_error("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<DenseMat> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::runtime_error("density matrix not positive semidefinite");
}

namespace {

template <class Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// Trace-replacement kernel solve. Row 0 of the d²×d² matrix is replaced by the
// trace functional (ones on vec indices of diagonal elements), rhs = e_0.
template <class Real>
DenseMat solve_kernel(const SparseMat& L, int d) {
    const int d2 = d * d;
    CMat<Real> M(d2, d2);
    M.setZero();
    for (int k = 0; k < L.outerSize(); ++k)
        for (SparseMat::InnerIterator it(L, k); it; ++it)
            M(it.row(), it.col()) = std::complex<Real>(static_cast<Real>(it.value().real()),
                                                       static_cast<Real>(it.value().imag()));
    M.row(0).setZero();
    for (int i = 0; i < d; ++i) M(0, i * d + i) = std::complex<Real>(1, 0);
    CVec<Real> rhs = CVec<Real>::Zero(d2);
    rhs(0) = std::complex<Real>(1, 0);
    CVec<Real> x = Eigen::PartialPivLU<CMat<Real>>(M).solve(rhs);

    DenseMat rho(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            const auto v = x(j * d + i);
            rho(i, j) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
    return rho;
}

DenseMat solve_kernel_sparse(const SparseMat& L, int d) {
    const int d2 = d * d;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(L.nonZeros()) + d);
    for (int k = 0; k < L.outerSize(); ++k)
        for (SparseMat::InnerIterator it(L, k); it; ++it)
            if (it.row() != 0) trip.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < d; ++i) trip.emplace_back(0, i * d + i, cplx(1, 0));
    SparseMat M(d2, d2);
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();

    Eigen::SparseLU<SparseMat> lu(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("steady_state: sparse factorization failed (degenerate kernel?)");
    DenseVec rhs = DenseVec::Zero(d2);
    rhs(0) = 1.0;
    DenseVec x = lu.solve(rhs);
    return detail::unvec(x, d);
}

}  // namespace

DensityMatrix steady_state(const Superoperator& L, const SteadyStateOptions& opt) {
    const int d = L.signature.dim();
    const int d2 = d * d;
    DenseMat rho;
    if (opt.extended_precision && d2 <= 4096)
        rho = solve_kernel<long double>(L.matrix, d);
    else if (d2 <= 4096)
        rho = solve_kernel<double>(L.matrix, d);
    else
        rho = solve_kernel_sparse(L.matrix, d);

    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-300) throw std::runtime_error("steady_state: zero-trace kernel vector");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint()).eval();

    // residual check on the normalized state
    DenseVec r = L.matrix * detail::vec(rho);
    const double resid = r.cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, L.matrix.coeffs().abs().maxCoeff());
    if (resid > opt.residual_tol * scale)
        throw std::runtime_error("steady_state: kernel residual " + std::to_string(resid) +
                                 " exceeds tolerance (non-unique or unstable steady state?)");

    DensityMatrix out{L.signature, rho};
    if (opt.validate) out.validate();
    return out;
}

namespace detail {

namespace {

template <class Real>
CMat<Real> expm_impl(const CMat<Real>& a) {
    // Padé(13) with scaling and squaring, Higham's coefficients.
    static const Real b[] = {Real(64764752532480000.0L), Real(32382376266240000.0L),
                             Real(7771770303897600.0L),  Real(1187353796428800.0L),
                             Real(129060195264000.0L),   Real(10559470521600.0L),
                             Real(670442572800.0L),      Real(33522128640.0L),
                             Real(1323241920.0L),        Real(40840800.0L),
                             Real(960960.0L),            Real(16380.0L),
                             Real(182.0L),               Real(1.0L)};
    const int n = static_cast<int>(a.rows());
    const Real norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    const Real theta13 = Real(5.371920351148152L);
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm / theta13))));
        if (squarings < 0) squarings = 0;
    }
    const Real scale = std::pow(Real(2), Real(-squarings));
    CMat<Real> A = a * scale;

    CMat<Real> A2 = A * A;
    CMat<Real> A4 = A2 * A2;
    CMat<Real> A6 = A2 * A4;
    CMat<Real> I = CMat<Real>::Identity(n, n);

    CMat<Real> U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                        b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    CMat<Real> V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                   b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    CMat<Real> num = V + U;
    CMat<Real> den = V - U;
    CMat<Real> F = Eigen::PartialPivLU<CMat<Real>>(den).solve(num);
    for (int s = 0; s < squarings; ++s) F = (F * F).eval();
    return F;
}

}  // namespace

DenseMat expm(const DenseMat& a) { return expm_impl<double>(a); }

Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> expm_ld(
    const Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>& a) {
    return expm_impl<long double>(a);
}

}  // namespace detail

namespace {

// Taylor-series action of e^{Lτ} with uniform substeps; local error target 1e-10.
void expmv_taylor(const SparseMat& L, DenseVec& v, double tau) {
    if (tau == 0.0) return;
    double norm1 = 0.0;
    for (int k = 0; k < L.outerSize(); ++k) {
        double col = 0.0;
        for (SparseMat::InnerIterator it(L, k); it; ++it) col += std::abs(it.value());
        norm1 = std::max(norm1, col);
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(norm1 * tau / 2.0)));
    const double h = tau / steps;
    for (int s = 0; s < steps; ++s) {
        DenseVec term = v;
        DenseVec acc = v;
        for (int k = 1; k < 64; ++k) {
            term = (L * term).eval() * (h / k);
            acc += term;
            if (term.cwiseAbs().maxCoeff() < 1e-10 * std::max(1e-300, acc.cwiseAbs().maxCoeff()))
                break;
        }
        v = acc;
    }
}

}  // namespace

void propagate_observe(const Superoperator& L, const DenseVec& x0, std::span<const double> tau_grid,
                       const std::function<void(std::size_t, const DenseVec&)>& observe) {
    const int d2 = static_cast<int>(x0.size());
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (tau_grid[i] < tau_grid[i - 1])
            throw std::invalid_argument("tau grid must be ascending");
    if (!tau_grid.empty() && tau_grid.front() < 0.0)
        throw std::invalid_argument("tau must be non-negative");

    DenseVec v = x0;
    if (d2 <= 512) {
        const DenseMat Ld = L.dense();
        double prev_gap = -1.0;
        DenseMat E;
        double t = 0.0;
        for (std::size_t i = 0; i < tau_grid.size(); ++i) {
            const double gap = tau_grid[i] - t;
            if (gap > 0.0) {
                if (gap != prev_gap) {
                    E = detail::expm(Ld * gap);
                    prev_gap = gap;
                }
                v = (E * v).eval();
                t = tau_grid[i];
            }
            observe(i, v);
        }
    } else {
        double t = 0.0;
        for (std::size_t i = 0; i < tau_grid.size(); ++i) {
            expmv_taylor(L.matrix, v, tau_grid[i] - t);
            t = tau_grid[i];
            observe(i, v);
        }
    }
}

std::vector<cplx> two_time_correlator(const Superoperator& L, const DensityMatrix& rho_ss,
                                      const Operator& A, const Operator& B, const Operator& C,
                                      std::span<const double> tau_grid) {
    if (A.signature != L.signature || B.signature != L.signature || C.signature != L.signature ||
        rho_ss.signature != L.signature)
        throw std::invalid_argument("two_time_correlator: signature mismatch");

    const int d = L.signature.dim();
    const DenseMat seed = C.dense() * rho_ss.matrix * A.dense();
    const DenseMat Bd = B.dense();

    std::vector<cplx> out(tau_grid.size());
    propagate_observe(L, detail::vec(seed), tau_grid, [&](std::size_t i, const DenseVec& v) {
        out[i] = (Bd * detail::unvec(v, d)).trace();
    });
    return out;
}

double epsilon_independence_check(const std::function<double(double)>& observable_of_epsilon,
                                  double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    const double full = observable_of_epsilon(epsilon);
    const double half = observable_of_epsilon(epsilon / 2.0);
    if (full == 0.0 && half == 0.0) return 0.0;
    if (full == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(full - half) / std::abs(full);
}

}  // namespace fresco
