#pragma once

#include <array>
#include <optional>

#include "nqsvdd/state.hpp"

namespace nqsvdd {

enum class GateKind {
    H,
    X,
    CNOT,     // targets = {control, target}
    Rx,       // exp(-i theta X / 2)
    Ry,       // exp(-i theta Y / 2)
    Rz,       // exp(-i theta Z / 2)
    PhaseZ,   // exp(+i x Z)
    PhaseZZ,  // exp(+i x Z (x) Z)
    U3,       // Rz(phi) Rx(-pi/2) Rz(theta) Rx(pi/2) Rz(lambda); slots (theta, phi, lambda)
    SU4,      // 15-angle two-qubit block, see su4_matrix
    Unitary,  // fixed k-qubit matrix
};

int gate_arity(GateKind kind);
int gate_angle_count(GateKind kind);
const char* gate_name(GateKind kind);

/// A gate angle: literal value, trainable parameter slot, or feature slot.
struct AngleRef {
    enum class Kind { Literal, Param, Feature } kind = Kind::Literal;
    double value = 0.0;
    int index = -1;

    static AngleRef literal(double v) { return {Kind::Literal, v, -1}; }
    static AngleRef param(int i) { return {Kind::Param, 0.0, i}; }
    static AngleRef feature(int i) { return {Kind::Feature, 0.0, i}; }
};

struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    std::vector<AngleRef> angles;
    CMat fixed;  // only for GateKind::Unitary

    static GateOp h(int q) { return {GateKind::H, {q}, {}, {}}; }
    static GateOp x(int q) { return {GateKind::X, {q}, {}, {}}; }
    static GateOp cnot(int control, int target) {
        return {GateKind::CNOT, {control, target}, {}, {}};
    }
    static GateOp rx(int q, AngleRef a) { return {GateKind::Rx, {q}, {a}, {}}; }
    static GateOp ry(int q, AngleRef a) { return {GateKind::Ry, {q}, {a}, {}}; }
    static GateOp rz(int q, AngleRef a) { return {GateKind::Rz, {q}, {a}, {}}; }
    static GateOp phase_z(int q, AngleRef a) {
        return {GateKind::PhaseZ, {q}, {a}, {}};
    }
    static GateOp phase_zz(int q1, int q2, AngleRef a) {
        return {GateKind::PhaseZZ, {q1, q2}, {a}, {}};
    }
    static GateOp u3(int q, AngleRef theta, AngleRef phi, AngleRef lambda) {
        return {GateKind::U3, {q}, {theta, phi, lambda}, {}};
    }
    static GateOp su4(int q1, int q2, std::vector<AngleRef> angles15);
    static GateOp unitary(std::vector<int> targets, CMat m);
};

/// Matrix of a gate with all angles bound. 2x2 for single-qubit kinds,
/// 4x4 for two-qubit kinds with targets[0] as the most significant bit.
CMat gate_matrix(GateKind kind, std::span<const double> angles,
                 const CMat* fixed = nullptr);

/// d(matrix)/d(angles[slot]) at the given binding.
CMat gate_matrix_derivative(GateKind kind, std::span<const double> angles,
                            int slot);

/// Single-qubit U3 per the definition above; slots (theta, phi, lambda).
CMat u3_matrix(double theta, double phi, double lambda);

/// The 15-angle two-qubit block:
///   U3(a0,a1,a2) on q1 and U3(a3,a4,a5) on q2,
///   CNOT(q1,q2), Ry(a6) q1, Rz(a7) q2, CNOT(q2,q1), Ry(a8) q1, CNOT(q1,q2),
///   U3(a9,a10,a11) on q1 and U3(a12,a13,a14) on q2.
/// Listed in application order; universal for SU(4) up to global phase.
CMat su4_matrix(std::span<const double> angles);

/// Expand U3 and SU4 into elementary gates (Rx/Rz/Ry/CNOT), preserving
/// angle references. Elementary kinds pass through unchanged.
std::vector<GateOp> lower_gate(const GateOp& gate);

}  // namespace nqsvdd
