#pragma once

#include <vector>

#include "nqsvdd/circuit.hpp"
#include "nqsvdd/core.hpp"
#include "oracle.hpp"

namespace testutil {

/// Random circuit over the full gate vocabulary with literal angles.
/// Draws are deterministic in the given rng.
inline nqsvdd::CircuitProgram random_circuit(nqsvdd::Rng& rng, int n_qubits,
                                             int depth) {
    using nqsvdd::AngleRef;
    using nqsvdd::GateOp;
    nqsvdd::CircuitProgram p(n_qubits);
    for (int d = 0; d < depth; ++d) {
        int kind = static_cast<int>(rng.uniform_index(n_qubits >= 2 ? 10 : 6));
        int q1 = static_cast<int>(rng.uniform_index(n_qubits));
        int q2 = q1;
        if (n_qubits >= 2)
            while (q2 == q1) q2 = static_cast<int>(rng.uniform_index(n_qubits));
        auto ang = [&rng] {
            return AngleRef::literal(rng.uniform(-M_PI, M_PI));
        };
        switch (kind) {
            case 0: p.append(GateOp::h(q1)); break;
            case 1: p.append(GateOp::x(q1)); break;
            case 2: p.append(GateOp::rx(q1, ang())); break;
            case 3: p.append(GateOp::ry(q1, ang())); break;
            case 4: p.append(GateOp::rz(q1, ang())); break;
            case 5: p.append(GateOp::phase_z(q1, ang())); break;
            case 6: p.append(GateOp::cnot(q1, q2)); break;
            case 7: p.append(GateOp::phase_zz(q1, q2, ang())); break;
            case 8: p.append(GateOp::u3(q1, ang(), ang(), ang())); break;
            case 9: {
                std::vector<AngleRef> a(15);
                for (auto& v : a) v = ang();
                p.append(GateOp::su4(q1, q2, std::move(a)));
                break;
            }
        }
    }
    return p;
}

inline double max_amp_diff(const nqsvdd::PureState& psi,
                           const std::vector<oracle::cd>& ref) {
    double m = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i)
        m = std::max(m, std::abs(psi.amplitudes()[i] - ref[i]));
    return m;
}

inline std::vector<oracle::cd> zero_state(int n_qubits) {
    std::vector<oracle::cd> v(std::size_t{1} << n_qubits, oracle::cd(0));
    v[0] = oracle::cd(1);
    return v;
}

inline oracle::Mat to_oracle(const nqsvdd::MixedState& rho) {
    oracle::Mat m(rho.dim(), std::vector<oracle::cd>(rho.dim()));
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) m[r][c] = rho.at(r, c);
    return m;
}

inline oracle::Mat cmat_to_oracle(const nqsvdd::CMat& m) {
    oracle::Mat out(m.rows(), std::vector<oracle::cd>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    return out;
}

}  // namespace testutil
