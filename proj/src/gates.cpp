#include "nqsvdd/gates.hpp"

#include <cmath>

namespace nqsvdd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx kI(0.0, 1.0);

CMat mat2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

CMat rx_matrix(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return mat2(c, -kI * s, -kI * s, c);
}

CMat ry_matrix(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return mat2(c, -s, s, c);
}

CMat rz_matrix(double t) {
    return mat2(std::exp(-kI * (t / 2)), 0.0, 0.0, std::exp(kI * (t / 2)));
}

CMat phase_z_matrix(double x) {
    return mat2(std::exp(kI * x), 0.0, 0.0, std::exp(-kI * x));
}

CMat phase_zz_matrix(double x) {
    CMat m(4, 4);
    m(0, 0) = std::exp(kI * x);
    m(1, 1) = std::exp(-kI * x);
    m(2, 2) = std::exp(-kI * x);
    m(3, 3) = std::exp(kI * x);
    return m;
}

CMat h_matrix() {
    return mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

CMat x_matrix() { return mat2(0.0, 1.0, 1.0, 0.0); }

// targets[0] = control is the most significant sub-index bit.
CMat cnot_matrix() {
    CMat m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

// The SU4 block as (matrix factory, qubit slot, angle slot) steps in
// application order. Qubit slot 0/1 refers to targets[0]/targets[1].
struct Su4Step {
    GateKind kind;
    int qubit;        // 0 or 1; for CNOT: control qubit slot
    int angle_slot;   // -1 for CNOT
};

constexpr Su4Step kSu4Wiring[] = {
    {GateKind::Rz, 0, 2},  {GateKind::Rx, 0, -2}, {GateKind::Rz, 0, 0},
    {GateKind::Rx, 0, -3}, {GateKind::Rz, 0, 1},  // U3(a0,a1,a2) on q1
    {GateKind::Rz, 1, 5},  {GateKind::Rx, 1, -2}, {GateKind::Rz, 1, 3},
    {GateKind::Rx, 1, -3}, {GateKind::Rz, 1, 4},  // U3(a3,a4,a5) on q2
    {GateKind::CNOT, 0, -1},
    {GateKind::Ry, 0, 6},
    {GateKind::Rz, 1, 7},
    {GateKind::CNOT, 1, -1},
    {GateKind::Ry, 0, 8},
    {GateKind::CNOT, 0, -1},
    {GateKind::Rz, 0, 11}, {GateKind::Rx, 0, -2}, {GateKind::Rz, 0, 9},
    {GateKind::Rx, 0, -3}, {GateKind::Rz, 0, 10},  // U3(a9,a10,a11) on q1
    {GateKind::Rz, 1, 14}, {GateKind::Rx, 1, -2}, {GateKind::Rz, 1, 12},
    {GateKind::Rx, 1, -3}, {GateKind::Rz, 1, 13},  // U3(a12,a13,a14) on q2
};
// angle_slot -2 encodes the fixed Rx(+pi/2), -3 the fixed Rx(-pi/2).

double su4_step_angle(const Su4Step& s, std::span<const double> a) {
    if (s.angle_slot == -2) return M_PI / 2;
    if (s.angle_slot == -3) return -M_PI / 2;
    return a[s.angle_slot];
}

CMat su4_step_matrix4(const Su4Step& s, double angle, bool derivative) {
    if (s.kind == GateKind::CNOT) {
        // control = qubit slot s.qubit, target = the other slot.
        CMat m(4, 4);
        if (s.qubit == 0) {
            m = cnot_matrix();
        } else {
            m(0, 0) = 1.0;
            m(1, 3) = 1.0;
            m(2, 2) = 1.0;
            m(3, 1) = 1.0;
        }
        return m;
    }
    CMat g2;
    switch (s.kind) {
        case GateKind::Rx: g2 = rx_matrix(angle); break;
        case GateKind::Ry: g2 = ry_matrix(angle); break;
        case GateKind::Rz: g2 = rz_matrix(angle); break;
        default: throw StructuralError("su4 wiring: unexpected kind");
    }
    if (derivative) {
        // d/dt exp(-i t P / 2) = (-i P / 2) exp(-i t P / 2)
        CMat p = s.kind == GateKind::Rx   ? x_matrix()
                 : s.kind == GateKind::Ry ? mat2(0.0, -kI, kI, 0.0)
                                          : mat2(1.0, 0.0, 0.0, -1.0);
        g2 = matmul((cplx(0.0, -0.5)) * p, g2);
    }
    CMat eye = CMat::identity(2);
    return s.qubit == 0 ? kron(g2, eye) : kron(eye, g2);
}

}  // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::PhaseZ:
        case GateKind::U3: return 1;
        case GateKind::CNOT:
        case GateKind::PhaseZZ:
        case GateKind::SU4: return 2;
        case GateKind::Unitary: return -1;
    }
    return -1;
}

int gate_angle_count(GateKind kind) {
    switch (kind) {
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::PhaseZ:
        case GateKind::PhaseZZ: return 1;
        case GateKind::U3: return 3;
        case GateKind::SU4: return 15;
        default: return 0;
    }
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::Rx: return "Rx";
        case GateKind::Ry: return "Ry";
        case GateKind::Rz: return "Rz";
        case GateKind::PhaseZ: return "PhaseZ";
        case GateKind::PhaseZZ: return "PhaseZZ";
        case GateKind::U3: return "U3";
        case GateKind::SU4: return "SU4";
        case GateKind::Unitary: return "Unitary";
    }
    return "?";
}

GateOp GateOp::su4(int q1, int q2, std::vector<AngleRef> angles15) {
    if (angles15.size() != 15)
        throw StructuralError("su4: expects 15 angles");
    return {GateKind::SU4, {q1, q2}, std::move(angles15), {}};
}

GateOp GateOp::unitary(std::vector<int> targets, CMat m) {
    std::size_t want = std::size_t{1} << targets.size();
    if (m.rows() != want || m.cols() != want)
        throw StructuralError("unitary: matrix dim != 2^#targets");
    if (!m.is_unitary(1e-10))
        throw StructuralError("unitary: matrix is not unitary");
    return {GateKind::Unitary, std::move(targets), {}, std::move(m)};
}

CMat u3_matrix(double theta, double phi, double lambda) {
    CMat m = rz_matrix(lambda);
    m = matmul(rx_matrix(M_PI / 2), m);
    m = matmul(rz_matrix(theta), m);
    m = matmul(rx_matrix(-M_PI / 2), m);
    m = matmul(rz_matrix(phi), m);
    return m;
}

CMat su4_matrix(std::span<const double> angles) {
    if (angles.size() != 15) throw StructuralError("su4_matrix: expects 15 angles");
    CMat u = CMat::identity(4);
    for (const auto& step : kSu4Wiring)
        u = matmul(su4_step_matrix4(step, su4_step_angle(step, angles), false), u);
    return u;
}

namespace {

CMat su4_matrix_derivative(std::span<const double> angles, int slot) {
    CMat u = CMat::identity(4);
    for (const auto& step : kSu4Wiring) {
        bool deriv = (step.angle_slot == slot);
        u = matmul(su4_step_matrix4(step, su4_step_angle(step, angles), deriv),
                   u);
    }
    return u;
}

}  // namespace

CMat gate_matrix(GateKind kind, std::span<const double> angles,
                 const CMat* fixed) {
    switch (kind) {
        case GateKind::H: return h_matrix();
        case GateKind::X: return x_matrix();
        case GateKind::CNOT: return cnot_matrix();
        case GateKind::Rx: return rx_matrix(angles[0]);
        case GateKind::Ry: return ry_matrix(angles[0]);
        case GateKind::Rz: return rz_matrix(angles[0]);
        case GateKind::PhaseZ: return phase_z_matrix(angles[0]);
        case GateKind::PhaseZZ: return phase_zz_matrix(angles[0]);
        case GateKind::U3: return u3_matrix(angles[0], angles[1], angles[2]);
        case GateKind::SU4: return su4_matrix(angles);
        case GateKind::Unitary:
            if (!fixed) throw StructuralError("gate_matrix: missing fixed matrix");
            return *fixed;
    }
    throw StructuralError("gate_matrix: unknown kind");
}

CMat gate_matrix_derivative(GateKind kind, std::span<const double> angles,
                            int slot) {
    switch (kind) {
        case GateKind::Rx:
            return matmul(cplx(0.0, -0.5) * x_matrix(), rx_matrix(angles[0]));
        case GateKind::Ry:
            return matmul(cplx(0.0, -0.5) * mat2(0.0, -kI, kI, 0.0),
                          ry_matrix(angles[0]));
        case GateKind::Rz:
            return matmul(cplx(0.0, -0.5) * mat2(1.0, 0.0, 0.0, -1.0),
                          rz_matrix(angles[0]));
        case GateKind::PhaseZ:
            return matmul(kI * mat2(1.0, 0.0, 0.0, -1.0),
                          phase_z_matrix(angles[0]));
        case GateKind::PhaseZZ: {
            CMat zz(4, 4);
            zz(0, 0) = 1.0;
            zz(1, 1) = -1.0;
            zz(2, 2) = -1.0;
            zz(3, 3) = 1.0;
            return matmul(kI * zz, phase_zz_matrix(angles[0]));
        }
        case GateKind::U3: {
            // Slots (theta, phi, lambda) each appear as one Rz rotation
            // inside the product; reuse the SU4 step machinery on a 2x2.
            CMat u = CMat::identity(2);
            struct Step { int slot; double fixed_angle; };
            const Step steps[] = {{2, 0}, {-3, M_PI / 2}, {0, 0},
                                  {-2, -M_PI / 2}, {1, 0}};
            for (const Step& s : steps) {
                CMat g;
                if (s.slot < 0) {
                    g = rx_matrix(s.fixed_angle);
                } else {
                    g = rz_matrix(angles[s.slot]);
                    if (s.slot == slot)
                        g = matmul(cplx(0.0, -0.5) * mat2(1.0, 0.0, 0.0, -1.0),
                                   g);
                }
                u = matmul(g, u);
            }
            return u;
        }
        case GateKind::SU4: return su4_matrix_derivative(angles, slot);
        default:
            throw StructuralError("gate_matrix_derivative: gate has no angles");
    }
}

std::vector<GateOp> lower_gate(const GateOp& gate) {
    switch (gate.kind) {
        case GateKind::U3: {
            int q = gate.targets[0];
            return {
                GateOp::rz(q, gate.angles[2]),
                GateOp::rx(q, AngleRef::literal(M_PI / 2)),
                GateOp::rz(q, gate.angles[0]),
                GateOp::rx(q, AngleRef::literal(-M_PI / 2)),
                GateOp::rz(q, gate.angles[1]),
            };
        }
        case GateKind::SU4: {
            std::vector<GateOp> out;
            out.reserve(26);
            int qs[2] = {gate.targets[0], gate.targets[1]};
            for (const auto& step : kSu4Wiring) {
                if (step.kind == GateKind::CNOT) {
                    out.push_back(GateOp::cnot(qs[step.qubit], qs[1 - step.qubit]));
                    continue;
                }
                AngleRef a = step.angle_slot == -2
                                 ? AngleRef::literal(M_PI / 2)
                             : step.angle_slot == -3
                                 ? AngleRef::literal(-M_PI / 2)
                                 : gate.angles[step.angle_slot];
                GateOp g{step.kind, {qs[step.qubit]}, {a}, {}};
                out.push_back(std::move(g));
            }
            return out;
        }
        default: return {gate};
    }
}

}  // namespace nqsvdd
