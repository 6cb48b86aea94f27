#pragma once

#include "nqsvdd/gates.hpp"

namespace nqsvdd {

/// Ordered gate list over a fixed register. Angles may reference trainable
/// parameters or input features; n_params / n_features track how many slots
/// a binding must provide.
struct CircuitProgram {
    int n_qubits = 0;
    std::vector<GateOp> gates;
    int n_params = 0;
    int n_features = 0;

    explicit CircuitProgram(int n = 0) : n_qubits(n) {}

    void append(GateOp gate);
    void append_program(const CircuitProgram& other);
};

/// Expand composite gates (U3, SU4) into elementary ones. Parameter and
/// feature counts carry over; every elementary gate has at most one angle.
CircuitProgram lower(const CircuitProgram& program);

/// Optional single-occurrence angle shift used by the parameter-shift rule:
/// gate `gate_index` has `angles[slot]` shifted by `delta` during binding.
struct ShiftSpec {
    int gate_index = -1;
    int slot = 0;
    double delta = 0.0;
};

/// Resolve one gate's angle references against parameter/feature vectors.
std::vector<double> bind_angles(const GateOp& gate,
                                std::span<const double> params,
                                std::span<const double> features);

/// Apply one fully-bound gate in place. Norm is preserved by construction;
/// invalid targets raise StructuralError.
void apply_gate(PureState& psi, const GateOp& gate,
                std::span<const double> bound_angles);

/// Run the program on |0...0> (or on `initial` when given).
PureState simulate(const CircuitProgram& program,
                   std::span<const double> params,
                   std::span<const double> features,
                   const ShiftSpec& shift = {},
                   const PureState* initial = nullptr);

}  // namespace nqsvdd
