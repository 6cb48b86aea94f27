#include "nqsvdd/circuit.hpp"

#include <cmath>

namespace nqsvdd {

namespace {

void validate_gate(const GateOp& gate, int n_qubits) {
    int arity = gate_arity(gate.kind);
    if (arity >= 0 && static_cast<int>(gate.targets.size()) != arity)
        throw StructuralError(std::string("gate ") + gate_name(gate.kind) +
                              ": wrong target count");
    if (gate.kind == GateKind::Unitary && gate.targets.empty())
        throw StructuralError("unitary gate: no targets");
    for (std::size_t i = 0; i < gate.targets.size(); ++i) {
        if (gate.targets[i] < 0 || gate.targets[i] >= n_qubits)
            throw StructuralError("gate target out of range");
        for (std::size_t j = i + 1; j < gate.targets.size(); ++j)
            if (gate.targets[i] == gate.targets[j])
                throw StructuralError("gate targets must be distinct");
    }
    int want = gate_angle_count(gate.kind);
    if (static_cast<int>(gate.angles.size()) != want)
        throw StructuralError(std::string("gate ") + gate_name(gate.kind) +
                              ": wrong angle count");
}

}  // namespace

void CircuitProgram::append(GateOp gate) {
    validate_gate(gate, n_qubits);
    for (const auto& a : gate.angles) {
        if (a.kind == AngleRef::Kind::Param)
            n_params = std::max(n_params, a.index + 1);
        else if (a.kind == AngleRef::Kind::Feature)
            n_features = std::max(n_features, a.index + 1);
    }
    gates.push_back(std::move(gate));
}

void CircuitProgram::append_program(const CircuitProgram& other) {
    if (other.n_qubits != n_qubits)
        throw StructuralError("append_program: register size mismatch");
    for (const auto& g : other.gates) append(g);
}

CircuitProgram lower(const CircuitProgram& program) {
    CircuitProgram out(program.n_qubits);
    for (const auto& g : program.gates)
        for (auto& e : lower_gate(g)) out.append(std::move(e));
    out.n_params = std::max(out.n_params, program.n_params);
    out.n_features = std::max(out.n_features, program.n_features);
    return out;
}

std::vector<double> bind_angles(const GateOp& gate,
                                std::span<const double> params,
                                std::span<const double> features) {
    std::vector<double> out;
    out.reserve(gate.angles.size());
    for (const auto& a : gate.angles) {
        switch (a.kind) {
            case AngleRef::Kind::Literal: out.push_back(a.value); break;
            case AngleRef::Kind::Param:
                if (a.index < 0 || a.index >= static_cast<int>(params.size()))
                    throw BindingError("unbound parameter slot");
                out.push_back(params[a.index]);
                break;
            case AngleRef::Kind::Feature:
                if (a.index < 0 || a.index >= static_cast<int>(features.size()))
                    throw BindingError("unbound feature slot");
                out.push_back(features[a.index]);
                break;
        }
    }
    return out;
}

namespace {

// Fast in-place paths for the common elementary gates; anything else goes
// through the generic gathered matrix application.

void apply_1q(PureState& psi, int q, const cplx& m00, const cplx& m01,
              const cplx& m10, const cplx& m11) {
    auto& a = psi.amplitudes();
    const std::size_t mask = qubit_mask(psi.n_qubits(), q);
    const std::size_t dim = a.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const std::size_t j = i | mask;
        const cplx lo = a[i], hi = a[j];
        a[i] = m00 * lo + m01 * hi;
        a[j] = m10 * lo + m11 * hi;
    }
}

void apply_diag_z(PureState& psi, int q, const cplx& f0, const cplx& f1) {
    auto& a = psi.amplitudes();
    const std::size_t mask = qubit_mask(psi.n_qubits(), q);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & mask) ? f1 : f0;
}

void apply_diag_zz(PureState& psi, int q1, int q2, const cplx& even,
                   const cplx& odd) {
    auto& a = psi.amplitudes();
    const std::size_t m1 = qubit_mask(psi.n_qubits(), q1);
    const std::size_t m2 = qubit_mask(psi.n_qubits(), q2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool parity = (bool(i & m1)) != (bool(i & m2));
        a[i] *= parity ? odd : even;
    }
}

void apply_cnot(PureState& psi, int control, int target) {
    auto& a = psi.amplitudes();
    const std::size_t mc = qubit_mask(psi.n_qubits(), control);
    const std::size_t mt = qubit_mask(psi.n_qubits(), target);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
    }
}

}  // namespace

void apply_gate(PureState& psi, const GateOp& gate,
                std::span<const double> bound_angles) {
    validate_gate(gate, psi.n_qubits());
    if (static_cast<int>(bound_angles.size()) != gate_angle_count(gate.kind))
        throw BindingError("apply_gate: wrong bound angle count");

    const cplx iu(0.0, 1.0);
    switch (gate.kind) {
        case GateKind::H: {
            constexpr double s = 0.70710678118654752440;
            apply_1q(psi, gate.targets[0], s, s, s, -s);
            return;
        }
        case GateKind::X:
            apply_1q(psi, gate.targets[0], 0.0, 1.0, 1.0, 0.0);
            return;
        case GateKind::CNOT:
            apply_cnot(psi, gate.targets[0], gate.targets[1]);
            return;
        case GateKind::Rx: {
            double c = std::cos(bound_angles[0] / 2);
            double s = std::sin(bound_angles[0] / 2);
            apply_1q(psi, gate.targets[0], c, -iu * s, -iu * s, c);
            return;
        }
        case GateKind::Ry: {
            double c = std::cos(bound_angles[0] / 2);
            double s = std::sin(bound_angles[0] / 2);
            apply_1q(psi, gate.targets[0], c, -s, s, c);
            return;
        }
        case GateKind::Rz: {
            cplx f = std::exp(-iu * (bound_angles[0] / 2));
            apply_diag_z(psi, gate.targets[0], f, std::conj(f));
            return;
        }
        case GateKind::PhaseZ: {
            cplx f = std::exp(iu * bound_angles[0]);
            apply_diag_z(psi, gate.targets[0], f, std::conj(f));
            return;
        }
        case GateKind::PhaseZZ: {
            cplx f = std::exp(iu * bound_angles[0]);
            apply_diag_zz(psi, gate.targets[0], gate.targets[1], f,
                          std::conj(f));
            return;
        }
        case GateKind::U3:
        case GateKind::SU4:
        case GateKind::Unitary: {
            CMat m = gate_matrix(gate.kind, bound_angles, &gate.fixed);
            apply_matrix(psi, m, gate.targets);
            return;
        }
    }
}

PureState simulate(const CircuitProgram& program,
                   std::span<const double> params,
                   std::span<const double> features, const ShiftSpec& shift,
                   const PureState* initial) {
    if (program.n_qubits < 1)
        throw StructuralError("simulate: empty register");
    PureState psi = initial ? *initial : PureState(program.n_qubits);
    if (psi.n_qubits() != program.n_qubits)
        throw StructuralError("simulate: initial state size mismatch");

    for (std::size_t g = 0; g < program.gates.size(); ++g) {
        const GateOp& gate = program.gates[g];
        std::vector<double> bound = bind_angles(gate, params, features);
        if (static_cast<int>(g) == shift.gate_index) {
            if (shift.slot < 0 || shift.slot >= static_cast<int>(bound.size()))
                throw BindingError("shift slot out of range");
            bound[shift.slot] += shift.delta;
        }
        apply_gate(psi, gate, bound);
    }
    return psi;
}

}  // namespace nqsvdd
