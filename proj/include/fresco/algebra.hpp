// algebra.hpp — Composite Hilbert spaces, sparse operators and Liouvillian assembly
//
// Conventions (fixed project-wide):
//  * density matrices are vectorized by column stacking, vec(A X B) = (B^T ⊗ A) vec(X),
//    so element (i,j) of a d×d matrix lives at vec index j*d + i;
//  * subsystem 0 of a SpaceSignature is the leftmost Kronecker factor;
//  * energies and rates are dimensionless, in units of the emitter decay rate.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fresco {

using cplx = std::complex<double>;
using SparseMat = Eigen::SparseMatrix<cplx>;
using DenseMat = Eigen::MatrixXcd;
using DenseVec = Eigen::VectorXcd;

// Ordered list of (label, dimension) pairs; labels unique, dimensions >= 1.
struct SpaceSignature {
    std::vector<std::pair<std::string, int>> subsystems;

    int dim() const;
    int index_of(const std::string& label) const;  // throws on unknown label
    int dim_of(const std::string& label) const;
    bool operator==(const SpaceSignature& other) const;
    bool operator!=(const SpaceSignature& other) const { return !(*this == other); }
};

struct Operator {
    SpaceSignature signature;
    SparseMat matrix;

    Operator adjoint() const;
    DenseMat dense() const { return DenseMat(matrix); }
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx scale, const Operator& a);

// d²×d² matrix acting on column-stacked density matrices.
struct Superoperator {
    SpaceSignature signature;
    SparseMat matrix;

    DenseMat dense() const { return DenseMat(matrix); }
};

// Deterministic sparse Kronecker product (row-major nonzero emission order).
SparseMat kron_sparse(const SparseMat& a, const SparseMat& b);

// I ⊗ … ⊗ local ⊗ … ⊗ I with `local` on the subsystem named `label`.
Operator embed(const DenseMat& local, const std::string& label, const SpaceSignature& sig);

Operator identity_operator(const SpaceSignature& sig);

// vec(ρ̇) = L vec(ρ) for ρ̇ = −i[H,ρ] + Σ rate/2 (2 c ρ c† − c†c ρ − ρ c†c).
Superoperator build_liouvillian(const Operator& hamiltonian,
                                const std::vector<std::pair<Operator, double>>& collapses);

// Tr[(op_string[0] · op_string[1] · …) ρ]
cplx expectation(const DenseMat& rho, const SpaceSignature& rho_sig,
                 std::span<const Operator> op_string);

// Common 2-level blocks.
DenseMat lowering2();      // |0><1|
DenseMat identity2();
// Truncated bosonic annihilation operator on an n-dimensional Fock space.
DenseMat annihilation(int n);

namespace detail {
// vec of a dense matrix / unvec back (column stacking).
DenseVec vec(const DenseMat& m);
DenseMat unvec(const DenseVec& v, int d);
double frobenius(const DenseMat& m);
}  // namespace detail

}  // namespace fresco
