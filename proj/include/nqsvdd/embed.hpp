#pragma once

#include "nqsvdd/circuit.hpp"

namespace nqsvdd {

/// One ZZ-feature block per layer: H on every qubit, exp(i x_j Z_j) on every
/// qubit, exp(i x_jk Z_j Z_k) on every pair in `pairs` order. The first n
/// features of a layer are the single-qubit angles by qubit index, the rest
/// are pair angles in `pairs` order. Layer L uses feature indices
/// [L*features_per_layer, (L+1)*features_per_layer).
struct ZzEmbeddingSpec {
    int n_qubits = 0;
    std::vector<std::pair<int, int>> pairs;  // (j,k), j<k
    int n_layers = 1;

    /// Complete pair set in lexicographic order.
    static ZzEmbeddingSpec complete(int n_qubits, int n_layers = 1);

    int features_per_layer() const {
        return n_qubits + static_cast<int>(pairs.size());
    }
    int total_features() const { return n_layers * features_per_layer(); }

    void validate() const;
};

/// Symbolic ZZ embedding circuit for the full layer stack.
CircuitProgram zz_embedding(const ZzEmbeddingSpec& spec);

/// Single embedding layer with explicit feature values bound; |x| must be
/// features_per_layer().
CircuitProgram zz_layer(std::span<const double> x, const ZzEmbeddingSpec& spec);

/// Normalized amplitude vector as a state; inputs whose length is not a
/// power of two are zero-padded. Throws std::domain_error on a zero vector.
PureState amplitude_encode(std::span<const double> x);

/// Re-uploading composition: t repetitions of (one embedding layer bound to
/// the SAME feature indices) followed, when trainable_layers is set, by one
/// brick layer of SU4 gates sharing 15 fresh parameter slots per repetition.
struct ReuploadSpec {
    ZzEmbeddingSpec embedding;  // n_layers must be 1
    int repetitions = 1;
    bool trainable_layers = true;

    void validate() const;
};

CircuitProgram build_reupload_circuit(const ReuploadSpec& spec);

}  // namespace nqsvdd
