// steadystate.hpp — Liouvillian kernel solves and two-time correlations
// via propagation under L (quantum regression structure).

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fresco/algebra.hpp"
#include "fresco/models.hpp"

namespace fresco {

struct DensityMatrix {
    SpaceSignature signature;
    DenseMat matrix;

    // Invariant checks (Hermiticity 1e-10, trace 1e-10, min eigenvalue >= -1e-8).
    void validate() const;
};

struct SteadyStateOptions {
    double residual_tol = 1e-10;   // ∞-norm of L vec(ρ) after normalization
    bool validate = true;
    bool extended_precision = false;  // long double solve (small systems)
};

// Kernel of L by trace-replacement: row 0 of L is overwritten with the
// vectorized trace functional and L x = e_0 solved directly.
DensityMatrix steady_state(const Superoperator& L, const SteadyStateOptions& opt = {});

// G(τ) = ⟨A(0) B(τ) C(0)⟩ in the stationary state: Tr[B e^{Lτ} vec(C ρ A)].
std::vector<cplx> two_time_correlator(const Superoperator& L, const DensityMatrix& rho_ss,
                                      const Operator& A, const Operator& B, const Operator& C,
                                      std::span<const double> tau_grid);

// Propagates vec(X) under L across an ascending τ grid, applying `observe`
// at every grid point. Dense expm for d² <= 4096, scaled Taylor stepping above.
void propagate_observe(const Superoperator& L, const DenseVec& x0, std::span<const double> tau_grid,
                       const std::function<void(std::size_t, const DenseVec&)>& observe);

// |obs(ε) − obs(ε/2)| / |obs(ε)| for an ε-normalized observable; 0 when both vanish.
double epsilon_independence_check(const std::function<double(double)>& observable_of_epsilon,
                                  double epsilon);

namespace detail {
// Scaling-and-squaring Padé(13) matrix exponential, any complex scalar.
DenseMat expm(const DenseMat& a);
Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> expm_ld(
    const Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>& a);
}  // namespace detail

}  // namespace fresco
