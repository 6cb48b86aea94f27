#pragma once

#include "nqsvdd/circuit.hpp"
#include "nqsvdd/measure.hpp"
#include "nqsvdd/nn.hpp"

namespace nqsvdd {

/// Two shift conventions coexist:
///  - rotation-style gates R(theta) = exp(-i theta P / 2) with P^2 = I
///    (Rx/Ry/Rz and every U3/SU4 slot): d f = (1/2)[f(+pi/2) - f(-pi/2)];
///  - phase-style gates exp(+i x P) (PhaseZ/PhaseZZ):
///    d f = f(+pi/4) - f(-pi/4).
struct ShiftRule {
    double delta = 0.0;
    double prefactor = 0.0;
};

/// Throws StructuralError for gates without a registered rule.
ShiftRule shift_rule_for(GateKind kind);

/// Latent vector plus its exact jacobians with respect to trainable
/// parameters and input features. Shared parameters and re-uploaded
/// features accumulate over all of their gate occurrences.
struct QuantumJacobian {
    std::vector<double> latent;                   // d'
    std::vector<std::vector<double>> d_params;    // d' x n_params
    std::vector<std::vector<double>> d_features;  // d' x n_features
};

/// Parameter-shift evaluation: two simulations per angle occurrence. The
/// conformance oracle for the adjoint path; also valid under noise.
QuantumJacobian jacobian_shift(const CircuitProgram& program,
                               std::span<const double> params,
                               std::span<const double> features,
                               const std::vector<PauliString>& observables,
                               const PureState* initial = nullptr);

/// Reverse-pass (adjoint) differentiation of the statevector simulator:
/// one forward sweep plus one backward sweep for all parameters and
/// features at once. The program is lowered internally if needed.
QuantumJacobian jacobian_adjoint(const CircuitProgram& program,
                                 std::span<const double> params,
                                 std::span<const double> features,
                                 const std::vector<PauliString>& observables,
                                 const PureState* initial = nullptr);

/// d<P_i>/d(theta) rows of the jacobian (parameter-shift path).
std::vector<std::vector<double>> grad_quantum(
    const CircuitProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables);

/// d<P_i>/d(z_k) rows of the jacobian (parameter-shift path).
std::vector<std::vector<double>> grad_inputs(
    const CircuitProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables);

struct HybridGrads {
    std::vector<double> d_theta;
    std::vector<Tensor> d_weights;
};

/// Chain rule joining the quantum jacobians with classical backprop over a
/// batch: dL/dtheta = sum_samples dL/dlatent . dlatent/dtheta, classical
/// gradients chain through dlatent/dz, and lambda * W is added to the
/// classical gradients (quantum angles are not regularized).
HybridGrads hybrid_backward(const ClassicalNet& net,
                            const std::vector<ClassicalNet::Cache>& caches,
                            const std::vector<std::vector<double>>& d_latent,
                            const std::vector<QuantumJacobian>& jacobians,
                            double lambda);

}  // namespace nqsvdd
