#include "nqsvdd/pauli.hpp"

namespace nqsvdd {

PauliString::PauliString(std::vector<PauliFactor> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty())
        throw StructuralError("PauliString: needs at least one factor");
}

PauliString PauliString::from_name(const std::string& name) {
    std::vector<PauliFactor> f;
    f.reserve(name.size());
    for (char c : name) {
        switch (c) {
            case 'I': f.push_back(PauliFactor::I); break;
            case 'X': f.push_back(PauliFactor::X); break;
            case 'Y': f.push_back(PauliFactor::Y); break;
            case 'Z': f.push_back(PauliFactor::Z); break;
            default:
                throw StructuralError("PauliString: bad factor character");
        }
    }
    return PauliString(std::move(f));
}

int PauliString::weight() const {
    int w = 0;
    for (auto f : factors_)
        if (f != PauliFactor::I) ++w;
    return w;
}

std::string PauliString::name() const {
    static const char* chars = "IXYZ";
    std::string s;
    s.reserve(factors_.size());
    for (auto f : factors_) s.push_back(chars[static_cast<int>(f)]);
    return s;
}

namespace {

struct PauliAction {
    std::size_t flip_mask = 0;  // qubits whose bit flips (X or Y factors)
    std::size_t z_mask = 0;     // qubits contributing (-1)^bit (Y or Z)
    std::size_t y_mask = 0;     // qubits contributing the i / -i of Y
    int y_count = 0;
};

PauliAction action_of(const PauliString& p, int n_qubits) {
    PauliAction a;
    const auto& f = p.factors();
    for (int q = 0; q < n_qubits; ++q) {
        std::size_t m = qubit_mask(n_qubits, q);
        switch (f[q]) {
            case PauliFactor::I: break;
            case PauliFactor::X: a.flip_mask |= m; break;
            case PauliFactor::Y:
                a.flip_mask |= m;
                a.z_mask |= m;
                a.y_mask |= m;
                ++a.y_count;
                break;
            case PauliFactor::Z: a.z_mask |= m; break;
        }
    }
    return a;
}

// Phase of P acting on basis state |j>: P|j> = phase(j) |j ^ flip_mask>.
// For Y: Y|0> = i|1>, Y|1> = -i|0>; for Z: (-1)^bit.
inline cplx basis_phase(const PauliAction& a, std::size_t j) {
    // Each Y contributes i * (-1)^bit, each Z contributes (-1)^bit.
    int minus = std::popcount(j & a.z_mask);
    int yc = a.y_count;
    cplx phase = (minus % 2 == 0) ? cplx(1.0) : cplx(-1.0);
    switch (yc % 4) {
        case 0: break;
        case 1: phase *= cplx(0.0, 1.0); break;
        case 2: phase *= cplx(-1.0); break;
        case 3: phase *= cplx(0.0, -1.0); break;
    }
    return phase;
}

}  // namespace

PureState PauliString::apply(const PureState& psi) const {
    if (n_qubits() != psi.n_qubits())
        throw StructuralError("PauliString::apply: length mismatch");
    PauliAction a = action_of(*this, psi.n_qubits());
    PureState out(psi.n_qubits(),
                  std::vector<cplx>(psi.dim(), cplx(0.0)));
    const auto& in = psi.amplitudes();
    for (std::size_t j = 0; j < in.size(); ++j)
        out[j ^ a.flip_mask] = basis_phase(a, j) * in[j];
    return out;
}

CMat PauliString::matrix() const {
    PauliAction a = action_of(*this, n_qubits());
    std::size_t dim = std::size_t{1} << n_qubits();
    CMat m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        m(j ^ a.flip_mask, j) = basis_phase(a, j);
    return m;
}

double expectation(const PureState& psi, const PauliString& p) {
    if (p.n_qubits() != psi.n_qubits())
        throw StructuralError("expectation: observable length mismatch");
    PureState pp = p.apply(psi);
    return psi.inner(pp).real();
}

double expectation(const MixedState& rho, const PauliString& p) {
    if (p.n_qubits() != rho.n_qubits())
        throw StructuralError("expectation: observable length mismatch");
    PauliAction a = action_of(p, rho.n_qubits());
    // P|j> = phase(j) |j ^ flip|, so Tr(P rho) = sum_j phase(j) rho[j, j^flip].
    cplx t = 0.0;
    for (std::size_t j = 0; j < rho.dim(); ++j)
        t += basis_phase(a, j) * rho.at(j, j ^ a.flip_mask);
    return t.real();
}

}  // namespace nqsvdd
