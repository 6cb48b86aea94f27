#include "nqsvdd/ansatz.hpp"

namespace nqsvdd {

std::vector<std::pair<int, int>> brick_pairs(std::span<const int> active) {
    const int m = static_cast<int>(active.size());
    if (m < 2) throw StructuralError("brick_pairs: needs >= 2 active qubits");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < m; i += 2) pairs.emplace_back(active[i], active[i + 1]);
    for (int i = 1; i + 1 < m; i += 2) pairs.emplace_back(active[i], active[i + 1]);
    if (m >= 4 && m % 2 == 0) pairs.emplace_back(active[m - 1], active[0]);
    return pairs;
}

std::vector<int> pool(const std::vector<int>& active) {
    if (active.size() < 2) throw StructuralError("pool: needs >= 2 active qubits");
    std::vector<int> kept;
    for (std::size_t i = 0; i < active.size(); i += 2) kept.push_back(active[i]);
    return kept;
}

void conv_layer(PureState& psi, std::span<const int> active,
                std::span<const double> shared_angles) {
    if (shared_angles.size() != 15)
        throw StructuralError("conv_layer: expects 15 shared angles");
    for (int q : active) {
        if (q < 0 || q >= psi.n_qubits())
            throw StructuralError("conv_layer: active qubit out of range");
    }
    CMat u = su4_matrix(shared_angles);
    for (auto [a, b] : brick_pairs(active)) {
        int targets[2] = {a, b};
        apply_matrix(psi, u, targets);
    }
}

void append_conv_layer(CircuitProgram& program, std::span<const int> active,
                       int param_base) {
    std::vector<AngleRef> shared(15);
    for (int i = 0; i < 15; ++i) shared[i] = AngleRef::param(param_base + i);
    for (auto [a, b] : brick_pairs(active))
        program.append(GateOp::su4(a, b, shared));
}

int QcnnSpec::conv_layer_count() const {
    int total = 0;
    for (int c : convs_per_stage) total += c;
    return total;
}

int QcnnSpec::final_active_count() const {
    int count = n_qubits;
    for (int s = 1; s < stage_count(); ++s) count = (count + 1) / 2;
    return count;
}

void QcnnSpec::validate() const {
    if (n_qubits < 2) throw StructuralError("qcnn: needs >= 2 qubits");
    if (convs_per_stage.empty())
        throw StructuralError("qcnn: needs at least one stage");
    for (int c : convs_per_stage)
        if (c < 0) throw StructuralError("qcnn: negative conv count");
    int width = n_qubits;
    for (int s = 1; s < stage_count(); ++s) {
        if (width < 2)
            throw StructuralError("qcnn: pooling below one qubit");
        width = (width + 1) / 2;
    }
}

std::vector<int> append_qcnn(CircuitProgram& program, const QcnnSpec& spec,
                             int param_base) {
    spec.validate();
    if (program.n_qubits < spec.n_qubits)
        throw StructuralError("qcnn: register smaller than spec");
    std::vector<int> active(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) active[q] = q;

    int p = param_base;
    for (int s = 0; s < spec.stage_count(); ++s) {
        if (s > 0) active = pool(active);
        for (int layer = 0; layer < spec.convs_per_stage[s]; ++layer) {
            append_conv_layer(program, active, p);
            p += 15;
        }
    }
    return active;
}

}  // namespace nqsvdd
