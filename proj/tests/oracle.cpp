#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

Mat eye(std::size_t n) {
    Mat m(n, std::vector<cd>(n, cd(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = cd(1);
    return m;
}

Mat mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), k = b.size(), c = b[0].size();
    Mat out(n, std::vector<cd>(c, cd(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cd av = a[i][j];
            if (av == cd(0)) continue;
            for (std::size_t l = 0; l < c; ++l) out[i][l] += av * b[j][l];
        }
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    std::size_t ar = a.size(), ac = a[0].size();
    std::size_t br = b.size(), bc = b[0].size();
    Mat out(ar * br, std::vector<cd>(ac * bc, cd(0)));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l)
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

Mat dagger(const Mat& m) {
    std::size_t r = m.size(), c = m[0].size();
    Mat out(c, std::vector<cd>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out[j][i] = std::conj(m[i][j]);
    return out;
}

Mat embed_gate(const Mat& gate, const std::vector<int>& targets,
               int n_qubits) {
    // Explicit Kronecker-product expansion in the qubit-0-most-significant
    // convention: full = sum_{r,c} gate[r][c] * (x)_q M_q, where M_q is the
    // 2x2 unit matrix |r_t><c_t| on the t-th target and I_2 elsewhere.
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;
    Mat out(dim, std::vector<cd>(dim, cd(0)));
    Mat i2 = eye(2);
    for (std::size_t r = 0; r < sub; ++r) {
        for (std::size_t c = 0; c < sub; ++c) {
            if (gate[r][c] == cd(0)) continue;
            Mat term = eye(1);
            for (int q = 0; q < n_qubits; ++q) {
                int slot = -1;
                for (std::size_t t = 0; t < k; ++t)
                    if (targets[t] == q) slot = static_cast<int>(t);
                if (slot < 0) {
                    term = kron(term, i2);
                } else {
                    std::size_t rb = (r >> (k - 1 - slot)) & 1;
                    std::size_t cb = (c >> (k - 1 - slot)) & 1;
                    Mat unit(2, std::vector<cd>(2, cd(0)));
                    unit[rb][cb] = cd(1);
                    term = kron(term, unit);
                }
            }
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    out[i][j] += gate[r][c] * term[i][j];
        }
    }
    return out;
}

Mat h2() {
    double s = 1.0 / std::sqrt(2.0);
    return {{cd(s), cd(s)}, {cd(s), cd(-s)}};
}

Mat x2() { return {{cd(0), cd(1)}, {cd(1), cd(0)}}; }

Mat rx2(double t) {
    cd c = std::cos(t / 2), s(0, -std::sin(t / 2));
    return {{c, s}, {s, c}};
}

Mat ry2(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return {{cd(c), cd(-s)}, {cd(s), cd(c)}};
}

Mat rz2(double t) {
    return {{std::exp(cd(0, -t / 2)), cd(0)}, {cd(0), std::exp(cd(0, t / 2))}};
}

Mat phase_z2(double x) {
    return {{std::exp(cd(0, x)), cd(0)}, {cd(0), std::exp(cd(0, -x))}};
}

Mat phase_zz4(double x) {
    Mat m = eye(4);
    m[0][0] = std::exp(cd(0, x));
    m[1][1] = std::exp(cd(0, -x));
    m[2][2] = std::exp(cd(0, -x));
    m[3][3] = std::exp(cd(0, x));
    return m;
}

Mat cnot4() {
    Mat m(4, std::vector<cd>(4, cd(0)));
    m[0][0] = m[1][1] = m[2][3] = m[3][2] = cd(1);
    return m;
}

Mat u3_2(double theta, double phi, double lambda) {
    // Rz(phi) Rx(-pi/2) Rz(theta) Rx(pi/2) Rz(lambda), rightmost first.
    Mat m = rz2(lambda);
    m = mul(rx2(M_PI / 2), m);
    m = mul(rz2(theta), m);
    m = mul(rx2(-M_PI / 2), m);
    m = mul(rz2(phi), m);
    return m;
}

Mat su4_16(const std::vector<double>& a) {
    if (a.size() != 15) throw std::invalid_argument("su4_16: 15 angles");
    Mat i2 = eye(2);
    Mat u = eye(4);
    auto app = [&u](const Mat& g) { u = mul(g, u); };
    app(kron(u3_2(a[0], a[1], a[2]), u3_2(a[3], a[4], a[5])));
    app(cnot4());
    app(kron(ry2(a[6]), rz2(a[7])));
    // CNOT with control = second qubit of the pair.
    Mat cn10(4, std::vector<cd>(4, cd(0)));
    cn10[0][0] = cn10[1][3] = cn10[2][2] = cn10[3][1] = cd(1);
    app(cn10);
    app(kron(ry2(a[8]), i2));
    app(cnot4());
    app(kron(u3_2(a[9], a[10], a[11]), u3_2(a[12], a[13], a[14])));
    return u;
}

namespace {

Mat gate_matrix_oracle(const nqsvdd::GateOp& g,
                       const std::vector<double>& bound) {
    using nqsvdd::GateKind;
    switch (g.kind) {
        case GateKind::H: return h2();
        case GateKind::X: return x2();
        case GateKind::CNOT: return cnot4();
        case GateKind::Rx: return rx2(bound[0]);
        case GateKind::Ry: return ry2(bound[0]);
        case GateKind::Rz: return rz2(bound[0]);
        case GateKind::PhaseZ: return phase_z2(bound[0]);
        case GateKind::PhaseZZ: return phase_zz4(bound[0]);
        case GateKind::U3: return u3_2(bound[0], bound[1], bound[2]);
        case GateKind::SU4: return su4_16(bound);
        case GateKind::Unitary: {
            std::size_t d = g.fixed.rows();
            Mat m(d, std::vector<cd>(d));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) m[r][c] = g.fixed(r, c);
            return m;
        }
    }
    throw std::invalid_argument("oracle: unknown gate");
}

}  // namespace

Mat circuit_unitary(const nqsvdd::CircuitProgram& program,
                    const std::vector<double>& params,
                    const std::vector<double>& features) {
    Mat u = eye(std::size_t{1} << program.n_qubits);
    for (const auto& g : program.gates) {
        std::vector<double> bound = nqsvdd::bind_angles(g, params, features);
        Mat full = embed_gate(gate_matrix_oracle(g, bound), g.targets,
                              program.n_qubits);
        u = mul(full, u);
    }
    return u;
}

std::vector<cd> apply(const Mat& m, const std::vector<cd>& v) {
    std::vector<cd> out(m.size(), cd(0));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

Mat kraus_apply(const Mat& rho, const std::vector<Mat>& kraus,
                const std::vector<int>& targets, int n_qubits) {
    std::size_t dim = rho.size();
    Mat out(dim, std::vector<cd>(dim, cd(0)));
    for (const auto& k : kraus) {
        Mat kf = embed_gate(k, targets, n_qubits);
        Mat t = mul(mul(kf, rho), dagger(kf));
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) out[r][c] += t[r][c];
    }
    return out;
}

Mat pauli_matrix(const std::string& name) {
    Mat i2 = eye(2);
    Mat y2 = {{cd(0), cd(0, -1)}, {cd(0, 1), cd(0)}};
    Mat z2 = {{cd(1), cd(0)}, {cd(0), cd(-1)}};
    Mat out = eye(1);
    for (char ch : name) {
        switch (ch) {
            case 'I': out = kron(out, i2); break;
            case 'X': out = kron(out, x2()); break;
            case 'Y': out = kron(out, y2); break;
            case 'Z': out = kron(out, z2); break;
            default: throw std::invalid_argument("oracle: bad pauli name");
        }
    }
    return out;
}

double pauli_expectation(const std::vector<cd>& psi, const std::string& name) {
    Mat p = pauli_matrix(name);
    std::vector<cd> pp = apply(p, psi);
    cd acc(0);
    for (std::size_t i = 0; i < psi.size(); ++i)
        acc += std::conj(psi[i]) * pp[i];
    return acc.real();
}

double pauli_expectation_mixed(const Mat& rho, const std::string& name) {
    Mat p = mul(pauli_matrix(name), rho);
    cd acc(0);
    for (std::size_t i = 0; i < p.size(); ++i) acc += p[i][i];
    return acc.real();
}

std::vector<double> hermitian_eigenvalues(Mat a) {
    const std::size_t n = a.size();
    // Cyclic Jacobi on the Hermitian matrix: rotate away off-diagonals.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a[p][q]);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cd apq = a[p][q];
                if (std::abs(apq) < 1e-18) continue;
                double app = a[p][p].real(), aqq = a[q][q].real();
                // Phase so the pivot becomes real, then a real Jacobi spin.
                cd phase = apq / std::abs(apq);
                double g = std::abs(apq);
                double tau = (aqq - app) / (2 * g);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1.0 / std::sqrt(1 + t * t);
                double s = t * c;
                // Columns p and q of the rotation: |p> -> c|p> - s*conj(phase)|q>,
                // |q> -> s*phase|p> + c|q>.
                for (std::size_t r = 0; r < n; ++r) {
                    cd arp = a[r][p], arq = a[r][q];
                    a[r][p] = c * arp - s * std::conj(phase) * arq;
                    a[r][q] = s * phase * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    cd apr = a[p][r], aqr = a[q][r];
                    a[p][r] = c * apr - s * phase * aqr;
                    a[q][r] = s * std::conj(phase) * apr + c * aqr;
                }
            }
        }
    }
    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = a[i][i].real();
    return evals;
}

}  // namespace oracle
