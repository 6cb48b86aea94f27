#pragma once

#include "nqsvdd/circuit.hpp"

namespace nqsvdd {

/// Brick pattern over an ordered active-qubit list: even-offset pairs
/// (q0,q1),(q2,q3),... then odd-offset pairs (q1,q2),(q3,q4),..., with the
/// ring-closing (last,first) pair when the active count is even and >= 4.
std::vector<std::pair<int, int>> brick_pairs(std::span<const int> active);

/// Keep every other active qubit, lowest position first. Discarded qubits
/// are never acted on again; observables treat them as identity.
std::vector<int> pool(const std::vector<int>& active);

/// Apply one convolutional layer directly: the same SU4 block (15 shared
/// angles) on every brick pair of the active set.
void conv_layer(PureState& psi, std::span<const int> active,
                std::span<const double> shared_angles);

/// Emit a convolutional layer into a program; all gates reference the same
/// 15 parameter slots [param_base, param_base+15).
void append_conv_layer(CircuitProgram& program, std::span<const int> active,
                       int param_base);

/// Convolution/pooling schedule: convs_per_stage[s] shared-parameter conv
/// layers at the s-th width, with one pooling step between consecutive
/// stages. Stage widths follow from n_qubits by repeated pooling.
struct QcnnSpec {
    int n_qubits = 0;
    std::vector<int> convs_per_stage;

    int stage_count() const { return static_cast<int>(convs_per_stage.size()); }
    int conv_layer_count() const;
    int param_count() const { return 15 * conv_layer_count(); }
    int final_active_count() const;

    void validate() const;
};

/// Emit the full QCNN; parameters occupy [param_base, param_base +
/// spec.param_count()). Returns the final active qubit list.
std::vector<int> append_qcnn(CircuitProgram& program, const QcnnSpec& spec,
                             int param_base);

}  // namespace nqsvdd
