#pragma once

#include "nqsvdd/diff.hpp"

namespace nqsvdd {

/// ibm_kingston-style backend figures (table units: probability, ns, us).
struct BackendParams {
    double p_depol2 = 0.00332;
    double gate_len_1q_ns = 32.0;
    double gate_len_2q_ns = 68.0;
    double t1_us = 183.29;
    double t2_us = 141.73;

    double t1_ns() const { return t1_us * 1000.0; }
    double t2_ns() const { return t2_us * 1000.0; }
    void validate() const;
};

/// sqrt(1-p) I plus sqrt(p/15) times each non-identity two-qubit Pauli
/// (lexicographic order IX..ZZ). p = 0 collapses to the single identity.
std::vector<CMat> depolarizing2_kraus(double p);

/// Amplitude damping with gamma = 1 - exp(-t/T1) composed with pure
/// dephasing at rate 1/T_phi = 1/T2 - 1/(2 T1); all three times share one
/// unit. An off-diagonal element decays by exactly exp(-t/T2).
std::vector<CMat> thermal_relaxation_kraus(double t1, double t2, double t);

struct ChannelOp {
    enum class Type { Gate, Kraus, Depol2 };
    Type type = Type::Gate;
    GateOp gate;              // Type::Gate
    std::vector<CMat> kraus;  // Kraus (and Depol2, for inspection)
    std::vector<int> targets;
    double p = 0.0;  // Depol2
};

struct ChannelProgram {
    int n_qubits = 0;
    std::vector<ChannelOp> ops;
    int n_params = 0;
    int n_features = 0;
};

/// Attach noise after every gate: thermal relaxation (1q gate length) on a
/// single-qubit gate's target; two-qubit depolarizing followed by thermal
/// relaxation (2q gate length) on both qubits of a two-qubit gate. Idle
/// qubits do not decohere.
ChannelProgram noisify(const CircuitProgram& program,
                       const BackendParams& backend);

MixedState run_channels(const ChannelProgram& program,
                        std::span<const double> params,
                        std::span<const double> features,
                        const ShiftSpec& shift = {},
                        const MixedState* initial = nullptr);

std::vector<double> noisy_latent(const ChannelProgram& program,
                                 std::span<const double> params,
                                 std::span<const double> features,
                                 const std::vector<PauliString>& observables,
                                 const MixedState* initial = nullptr);

/// Parameter-shift on noisy expectations (the rule stays exact for
/// channels). Conformance oracle for the reverse pass below.
QuantumJacobian noisy_jacobian_shift(
    const ChannelProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables,
    const MixedState* initial = nullptr);

/// Reverse pass over the density-matrix simulation: forward state
/// checkpointing plus Heisenberg-picture observable propagation. One
/// forward sweep amortizes all parameter and feature derivatives.
/// checkpoint_stride 0 sizes checkpoints to a ~256 MB budget; larger
/// strides trade recomputation for memory.
QuantumJacobian noisy_jacobian_reverse(
    const ChannelProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables,
    const MixedState* initial = nullptr, std::size_t checkpoint_stride = 0);

}  // namespace nqsvdd
