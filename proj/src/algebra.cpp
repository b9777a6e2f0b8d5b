#include "fresco/algebra.hpp"

#include <stdexcept>

namespace fresco {

int SpaceSignature::dim() const {
    int d = 1;
    for (const auto& [label, n] : subsystems) d *= n;
    return d;
}

int SpaceSignature::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < subsystems.size(); ++i)
        if (subsystems[i].first == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown subsystem label: " + label);
}

int SpaceSignature::dim_of(const std::string& label) const {
    return subsystems[index_of(label)].second;
}

bool SpaceSignature::operator==(const SpaceSignature& other) const {
    return subsystems == other.subsystems;
}

Operator Operator::adjoint() const {
    return {signature, SparseMat(matrix.adjoint())};
}

namespace {
void require_same_signature(const Operator& a, const Operator& b) {
    if (a.signature != b.signature) throw std::invalid_argument("operator signature mismatch");
}
}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
    require_same_signature(a, b);
    return {a.signature, SparseMat(a.matrix + b.matrix)};
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_signature(a, b);
    return {a.signature, SparseMat(a.matrix - b.matrix)};
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_signature(a, b);
    return {a.signature, SparseMat(a.matrix * b.matrix)};
}

Operator operator*(cplx scale, const Operator& a) {
    return {a.signature, SparseMat(scale * a.matrix)};
}

SparseMat kron_sparse(const SparseMat& a, const SparseMat& b) {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SparseMat::InnerIterator ita(a, ka); ita; ++ita)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SparseMat::InnerIterator itb(b, kb); itb; ++itb)
                    trip.emplace_back(ita.row() * b.rows() + itb.row(),
                                      ita.col() * b.cols() + itb.col(),
                                      ita.value() * itb.value());
    SparseMat out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    out.makeCompressed();
    return out;
}

Operator embed(const DenseMat& local, const std::string& label, const SpaceSignature& sig) {
    const int idx = sig.index_of(label);
    const int want = sig.subsystems[idx].second;
    if (local.rows() != want || local.cols() != want)
        throw std::invalid_argument("embed: local operator dimension does not match subsystem '" +
                                    label + "'");
    SparseMat acc(1, 1);
    acc.insert(0, 0) = cplx(1.0, 0.0);
    for (std::size_t k = 0; k < sig.subsystems.size(); ++k) {
        SparseMat factor;
        if (static_cast<int>(k) == idx) {
            factor = local.sparseView();
        } else {
            const int n = sig.subsystems[k].second;
            factor = SparseMat(n, n);
            factor.setIdentity();
        }
        acc = kron_sparse(acc, factor);
    }
    return {sig, acc};
}

Operator identity_operator(const SpaceSignature& sig) {
    SparseMat id(sig.dim(), sig.dim());
    id.setIdentity();
    return {sig, id};
}

Superoperator build_liouvillian(const Operator& hamiltonian,
                                const std::vector<std::pair<Operator, double>>& collapses) {
    const int d = hamiltonian.signature.dim();
    SparseMat id(d, d);
    id.setIdentity();

    const SparseMat& h = hamiltonian.matrix;
    SparseMat ht = h.transpose();
    SparseMat L = cplx(0, -1) * (kron_sparse(id, h) - kron_sparse(ht, id));

    for (const auto& [c, rate] : collapses) {
        if (c.signature != hamiltonian.signature)
            throw std::invalid_argument("collapse operator signature mismatch");
        if (rate < 0.0) throw std::invalid_argument("negative collapse rate");
        SparseMat cm = c.matrix;
        SparseMat cdc = SparseMat(cm.adjoint()) * cm;
        SparseMat cconj = cm.conjugate();
        SparseMat cdct = cdc.transpose();
        L += cplx(rate / 2, 0) * SparseMat(cplx(2, 0) * kron_sparse(cconj, cm) -
                                           kron_sparse(id, cdc) - kron_sparse(cdct, id));
    }
    L.makeCompressed();
    return {hamiltonian.signature, L};
}

cplx expectation(const DenseMat& rho, const SpaceSignature& rho_sig,
                 std::span<const Operator> op_string) {
    if (op_string.empty()) return rho.trace();
    DenseMat prod = op_string.front().dense();
    if (op_string.front().signature != rho_sig)
        throw std::invalid_argument("expectation: operator signature mismatch");
    for (std::size_t i = 1; i < op_string.size(); ++i) {
        if (op_string[i].signature != rho_sig)
            throw std::invalid_argument("expectation: operator signature mismatch");
        prod = prod * op_string[i].dense();
    }
    return (prod * rho).trace();
}

DenseMat lowering2() {
    DenseMat s = DenseMat::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

DenseMat identity2() { return DenseMat::Identity(2, 2); }

DenseMat annihilation(int n) {
    DenseMat a = DenseMat::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

namespace detail {

DenseVec vec(const DenseMat& m) {
    return Eigen::Map<const DenseVec>(m.data(), m.size());
}

DenseMat unvec(const DenseVec& v, int d) {
    return Eigen::Map<const DenseMat>(v.data(), d, d);
}

double frobenius(const DenseMat& m) { return m.norm(); }

}  // namespace detail

}  // namespace fresco
