#include "nqsvdd/state.hpp"

#include <cmath>

namespace nqsvdd {

PureState::PureState(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 20)
        throw StructuralError("PureState: qubit count out of range");
    amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
    amps_[0] = 1.0;
}

PureState::PureState(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << n_qubits))
        throw StructuralError("PureState: amplitude count != 2^n");
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

cplx PureState::inner(const PureState& other) const {
    if (n_ != other.n_) throw StructuralError("inner: qubit count mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

MixedState::MixedState(int n_qubits)
    : n_(n_qubits), dim_(std::size_t{1} << n_qubits) {
    if (n_qubits < 1 || n_qubits > 12)
        throw StructuralError("MixedState: qubit count out of range");
    rho_.assign(dim_ * dim_, cplx(0.0));
    rho_[0] = 1.0;
}

double MixedState::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i).real();
    return t;
}

double MixedState::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            m = std::max(m, std::abs(at(r, c) - std::conj(at(c, r))));
    return m;
}

MixedState to_mixed(const PureState& psi) {
    MixedState rho(psi.n_qubits());
    const auto& a = psi.amplitudes();
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            rho.at(r, c) = a[r] * std::conj(a[c]);
    return rho;
}

namespace {

void check_targets(int n_qubits, std::span<const int> targets,
                   std::size_t matrix_dim) {
    if (matrix_dim != (std::size_t{1} << targets.size()))
        throw StructuralError("apply_matrix: matrix dim != 2^#targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_qubits)
            throw StructuralError("apply_matrix: qubit index out of range");
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw StructuralError("apply_matrix: duplicate target qubit");
    }
}

}  // namespace

void apply_matrix_strided(cplx* data, int n_qubits, const CMat& m,
                          std::span<const int> targets, std::size_t base,
                          std::size_t stride) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;

    std::size_t masks[8];
    std::size_t union_mask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        masks[t] = qubit_mask(n_qubits, targets[t]);
        union_mask |= masks[t];
    }

    cplx gathered[256];
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & union_mask) continue;
        std::size_t idx[256];
        for (std::size_t s = 0; s < sub; ++s) {
            std::size_t j = i;
            for (std::size_t t = 0; t < k; ++t)
                if (s & (sub >> 1 >> t)) j |= masks[t];
            idx[s] = base + j * stride;
            gathered[s] = data[idx[s]];
        }
        for (std::size_t r = 0; r < sub; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < sub; ++c) acc += m(r, c) * gathered[c];
            data[idx[r]] = acc;
        }
    }
}

void apply_matrix(PureState& psi, const CMat& m, std::span<const int> targets) {
    check_targets(psi.n_qubits(), targets, m.rows());
    apply_matrix_strided(psi.amplitudes().data(), psi.n_qubits(), m, targets,
                         0, 1);
}

void left_mul(MixedState& rho, const CMat& a, std::span<const int> targets) {
    check_targets(rho.n_qubits(), targets, a.rows());
    const std::size_t dim = rho.dim();
    for (std::size_t c = 0; c < dim; ++c)
        apply_matrix_strided(rho.data().data(), rho.n_qubits(), a, targets, c,
                             dim);
}

void right_mul(MixedState& rho, const CMat& b, std::span<const int> targets) {
    check_targets(rho.n_qubits(), targets, b.rows());
    // Row r transforms as v'[c] = sum_k v[k] B[k][c], i.e. apply B^T to the
    // column index.
    CMat bt(b.cols(), b.rows());
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) bt(c, r) = b(r, c);
    const std::size_t dim = rho.dim();
    for (std::size_t r = 0; r < dim; ++r)
        apply_matrix_strided(rho.data().data(), rho.n_qubits(), bt, targets,
                             r * dim, 1);
}

void conjugate(MixedState& rho, const CMat& u, std::span<const int> targets) {
    left_mul(rho, u, targets);
    right_mul(rho, u.dagger(), targets);
}

double kraus_completeness_defect(const std::vector<CMat>& kraus) {
    if (kraus.empty()) throw ChannelError("empty Kraus set");
    const std::size_t d = kraus.front().rows();
    CMat sum(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw ChannelError("Kraus matrices must share a square shape");
        sum = sum + matmul(k.dagger(), k);
    }
    return sum.max_abs_diff(CMat::identity(d));
}

void apply_kraus(MixedState& rho, const std::vector<CMat>& kraus,
                 std::span<const int> targets) {
    if (kraus.empty()) throw ChannelError("empty Kraus set");
    check_targets(rho.n_qubits(), targets, kraus.front().rows());
    if (kraus_completeness_defect(kraus) > 1e-10)
        throw ChannelError("Kraus set is not trace preserving");

    std::vector<cplx> out(rho.data().size(), cplx(0.0));
    std::vector<cplx> tmp;
    for (const auto& k : kraus) {
        tmp = rho.data();
        MixedState scratch(rho.n_qubits());
        scratch.data() = std::move(tmp);
        left_mul(scratch, k, targets);
        right_mul(scratch, k.dagger(), targets);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scratch.data()[i];
    }
    rho.data() = std::move(out);
}

}  // namespace nqsvdd
