#include "nqsvdd/noise.hpp"

#include <cmath>

namespace nqsvdd {

void BackendParams::validate() const {
    if (p_depol2 < 0.0 || p_depol2 > 1.0)
        throw ChannelError("backend: depolarizing probability out of [0,1]");
    if (gate_len_1q_ns < 0.0 || gate_len_2q_ns < 0.0)
        throw ChannelError("backend: negative gate length");
    if (t1_us <= 0.0 || t2_us <= 0.0)
        throw ChannelError("backend: relaxation times must be positive");
    if (t2_us > 2.0 * t1_us + 1e-12)
        throw ChannelError("backend: T2 > 2*T1 is unphysical");
}

std::vector<CMat> depolarizing2_kraus(double p) {
    if (p < 0.0 || p > 1.0)
        throw ChannelError("depolarizing2_kraus: p out of [0,1]");

    CMat paulis1q[4] = {CMat::identity(2), CMat(2, 2), CMat(2, 2), CMat(2, 2)};
    paulis1q[1](0, 1) = 1.0;
    paulis1q[1](1, 0) = 1.0;
    paulis1q[2](0, 1) = cplx(0.0, -1.0);
    paulis1q[2](1, 0) = cplx(0.0, 1.0);
    paulis1q[3](0, 0) = 1.0;
    paulis1q[3](1, 1) = -1.0;

    std::vector<CMat> kraus;
    kraus.push_back(std::sqrt(1.0 - p) * CMat::identity(4));
    if (p == 0.0) {
        kraus.resize(1);
        return kraus;
    }
    double w = std::sqrt(p / 15.0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (a == 0 && b == 0) continue;
            kraus.push_back(w * kron(paulis1q[a], paulis1q[b]));
        }
    }
    return kraus;
}

std::vector<CMat> thermal_relaxation_kraus(double t1, double t2, double t) {
    if (t1 <= 0.0 || t2 <= 0.0)
        throw ChannelError("thermal_relaxation_kraus: nonpositive T1/T2");
    if (t2 > 2.0 * t1 + 1e-9 * t1)
        throw ChannelError("thermal_relaxation_kraus: T2 > 2*T1");
    if (t < 0.0) throw ChannelError("thermal_relaxation_kraus: negative time");

    double gamma = 1.0 - std::exp(-t / t1);
    // 1/T_phi = 1/T2 - 1/(2 T1) >= 0; dephasing-flip probability q makes the
    // off-diagonal factor (1-2q) e^{-t/(2 T1)} equal exactly e^{-t/T2}.
    double inv_tphi = 1.0 / t2 - 0.5 / t1;
    double q = 0.5 * (1.0 - std::exp(-t * inv_tphi));

    CMat a0(2, 2), a1(2, 2);
    a0(0, 0) = 1.0;
    a0(1, 1) = std::sqrt(1.0 - gamma);
    a1(0, 1) = std::sqrt(gamma);

    CMat z(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;

    std::vector<CMat> kraus;
    auto push_nonzero = [&kraus](CMat m) {
        double norm2 = 0.0;
        for (const auto& v : m.data()) norm2 += std::norm(v);
        if (norm2 > 1e-30) kraus.push_back(std::move(m));
    };
    push_nonzero(std::sqrt(1.0 - q) * a0);
    push_nonzero(std::sqrt(q) * matmul(z, a0));
    push_nonzero(std::sqrt(1.0 - q) * a1);
    push_nonzero(std::sqrt(q) * matmul(z, a1));
    return kraus;
}

ChannelProgram noisify(const CircuitProgram& program,
                       const BackendParams& backend) {
    backend.validate();
    ChannelProgram out;
    out.n_qubits = program.n_qubits;
    out.n_params = program.n_params;
    out.n_features = program.n_features;

    auto relax_1q =
        thermal_relaxation_kraus(backend.t1_ns(), backend.t2_ns(),
                                 backend.gate_len_1q_ns);
    auto relax_2q =
        thermal_relaxation_kraus(backend.t1_ns(), backend.t2_ns(),
                                 backend.gate_len_2q_ns);
    auto depol = depolarizing2_kraus(backend.p_depol2);

    for (const auto& gate : program.gates) {
        int arity = static_cast<int>(gate.targets.size());
        if (arity != 1 && arity != 2)
            throw StructuralError("noisify: only 1- and 2-qubit gates supported");

        ChannelOp g;
        g.type = ChannelOp::Type::Gate;
        g.gate = gate;
        g.targets = gate.targets;
        out.ops.push_back(std::move(g));

        if (arity == 1) {
            ChannelOp r;
            r.type = ChannelOp::Type::Kraus;
            r.kraus = relax_1q;
            r.targets = {gate.targets[0]};
            out.ops.push_back(std::move(r));
        } else {
            ChannelOp d;
            d.type = ChannelOp::Type::Depol2;
            d.kraus = depol;
            d.targets = gate.targets;
            d.p = backend.p_depol2;
            out.ops.push_back(std::move(d));
            for (int t = 0; t < 2; ++t) {
                ChannelOp r;
                r.type = ChannelOp::Type::Kraus;
                r.kraus = relax_2q;
                r.targets = {gate.targets[t]};
                out.ops.push_back(std::move(r));
            }
        }
    }
    return out;
}

namespace {

/// Closed form of the two-qubit depolarizing channel:
/// rho' = (1 - 16p/15) rho + (4p/15) I_pair (x) Tr_pair(rho).
/// Algebraically identical to the 16-term Kraus sum, checked against it in
/// the tests, and self-dual, so it serves the Heisenberg pass unchanged.
void apply_depol2(MixedState& rho, double p, int q1, int q2) {
    if (p == 0.0) return;
    const int n = rho.n_qubits();
    const std::size_t dim = rho.dim();
    const std::size_t m1 = qubit_mask(n, q1);
    const std::size_t m2 = qubit_mask(n, q2);
    const std::size_t pair_mask = m1 | m2;
    const double s = 1.0 - 16.0 * p / 15.0;
    const double mix = 4.0 * p / 15.0;

    // sigma[r0, c0] (pair bits cleared) = sum over the 4 pair-bit values.
    std::vector<cplx> sigma(dim * dim, cplx(0.0));
    auto& d = rho.data();
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t r0 = r & ~pair_mask;
        const std::size_t rb = r & pair_mask;
        for (std::size_t c = 0; c < dim; ++c) {
            if ((c & pair_mask) != rb) continue;
            sigma[r0 * dim + (c & ~pair_mask)] += d[r * dim + c];
        }
    }
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t r0 = r & ~pair_mask;
        const std::size_t rb = r & pair_mask;
        for (std::size_t c = 0; c < dim; ++c) {
            cplx v = s * d[r * dim + c];
            if ((c & pair_mask) == rb)
                v += mix * sigma[r0 * dim + (c & ~pair_mask)];
            d[r * dim + c] = v;
        }
    }
}

void apply_channel_op(MixedState& rho, const ChannelOp& op,
                      std::span<const double> params,
                      std::span<const double> features, int op_index,
                      const ShiftSpec& shift) {
    switch (op.type) {
        case ChannelOp::Type::Gate: {
            std::vector<double> bound = bind_angles(op.gate, params, features);
            if (shift.gate_index >= 0 && op_index == shift.gate_index) {
                if (shift.slot < 0 ||
                    shift.slot >= static_cast<int>(bound.size()))
                    throw BindingError("shift slot out of range");
                bound[shift.slot] += shift.delta;
            }
            CMat u = gate_matrix(op.gate.kind, bound, &op.gate.fixed);
            conjugate(rho, u, op.gate.targets);
            return;
        }
        case ChannelOp::Type::Kraus:
            apply_kraus(rho, op.kraus, op.targets);
            return;
        case ChannelOp::Type::Depol2:
            apply_depol2(rho, op.p, op.targets[0], op.targets[1]);
            return;
    }
}

// Heisenberg-picture adjoint: O <- U^dag O U for gates, O <- sum K^dag O K
// for Kraus channels; the depolarizing twirl is self-dual.
void apply_channel_op_heisenberg(MixedState& obs, const ChannelOp& op,
                                 std::span<const double> params,
                                 std::span<const double> features) {
    switch (op.type) {
        case ChannelOp::Type::Gate: {
            std::vector<double> bound = bind_angles(op.gate, params, features);
            CMat u = gate_matrix(op.gate.kind, bound, &op.gate.fixed);
            left_mul(obs, u.dagger(), op.gate.targets);
            right_mul(obs, u, op.gate.targets);
            return;
        }
        case ChannelOp::Type::Kraus: {
            std::vector<cplx> acc(obs.data().size(), cplx(0.0));
            for (const auto& k : op.kraus) {
                MixedState tmp(obs.n_qubits());
                tmp.data() = obs.data();
                left_mul(tmp, k.dagger(), op.targets);
                right_mul(tmp, k, op.targets);
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] += tmp.data()[i];
            }
            obs.data() = std::move(acc);
            return;
        }
        case ChannelOp::Type::Depol2:
            apply_depol2(obs, op.p, op.targets[0], op.targets[1]);
            return;
    }
}

}  // namespace

MixedState run_channels(const ChannelProgram& program,
                        std::span<const double> params,
                        std::span<const double> features,
                        const ShiftSpec& shift, const MixedState* initial) {
    MixedState rho = initial ? *initial : MixedState(program.n_qubits);
    if (rho.n_qubits() != program.n_qubits)
        throw StructuralError("run_channels: initial state size mismatch");
    for (std::size_t i = 0; i < program.ops.size(); ++i)
        apply_channel_op(rho, program.ops[i], params, features,
                         static_cast<int>(i), shift);
    return rho;
}

std::vector<double> noisy_latent(const ChannelProgram& program,
                                 std::span<const double> params,
                                 std::span<const double> features,
                                 const std::vector<PauliString>& observables,
                                 const MixedState* initial) {
    MixedState rho = run_channels(program, params, features, {}, initial);
    return latent(rho, observables);
}

namespace {

QuantumJacobian make_jacobian(std::size_t d, std::size_t n_params,
                              std::size_t n_features) {
    QuantumJacobian j;
    j.latent.assign(d, 0.0);
    j.d_params.assign(d, std::vector<double>(n_params, 0.0));
    j.d_features.assign(d, std::vector<double>(n_features, 0.0));
    return j;
}

}  // namespace

QuantumJacobian noisy_jacobian_shift(
    const ChannelProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables, const MixedState* initial) {
    QuantumJacobian j =
        make_jacobian(observables.size(), params.size(), features.size());
    j.latent = noisy_latent(program, params, features, observables, initial);

    for (std::size_t g = 0; g < program.ops.size(); ++g) {
        const ChannelOp& op = program.ops[g];
        if (op.type != ChannelOp::Type::Gate) continue;
        for (std::size_t slot = 0; slot < op.gate.angles.size(); ++slot) {
            const AngleRef& a = op.gate.angles[slot];
            if (a.kind == AngleRef::Kind::Literal) continue;
            ShiftRule rule = shift_rule_for(op.gate.kind);
            ShiftSpec plus{static_cast<int>(g), static_cast<int>(slot),
                           rule.delta};
            ShiftSpec minus{static_cast<int>(g), static_cast<int>(slot),
                            -rule.delta};
            auto lp = latent(run_channels(program, params, features, plus,
                                          initial),
                             observables);
            auto lm = latent(run_channels(program, params, features, minus,
                                          initial),
                             observables);
            auto& dest = a.kind == AngleRef::Kind::Param ? j.d_params
                                                         : j.d_features;
            for (std::size_t i = 0; i < observables.size(); ++i)
                dest[i][a.index] += rule.prefactor * (lp[i] - lm[i]);
        }
    }
    return j;
}

QuantumJacobian noisy_jacobian_reverse(
    const ChannelProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables, const MixedState* initial,
    std::size_t checkpoint_stride) {
    const std::size_t n_ops = program.ops.size();
    QuantumJacobian j =
        make_jacobian(observables.size(), params.size(), features.size());

    // Forward pass with checkpoints; stride sized to a ~256 MB budget
    // unless the caller picked one.
    const std::size_t state_bytes =
        (std::size_t{1} << (2 * program.n_qubits)) * sizeof(cplx);
    std::size_t stride = checkpoint_stride;
    if (stride == 0) {
        stride = 1;
        if (n_ops * state_bytes > (std::size_t{256} << 20))
            stride = (n_ops * state_bytes + (std::size_t{256} << 20) - 1) /
                     (std::size_t{256} << 20);
    }

    std::vector<MixedState> checkpoints;  // state BEFORE op k for k % stride == 0
    MixedState rho = initial ? *initial : MixedState(program.n_qubits);
    if (rho.n_qubits() != program.n_qubits)
        throw StructuralError("noisy_jacobian_reverse: initial size mismatch");
    for (std::size_t k = 0; k < n_ops; ++k) {
        if (k % stride == 0) checkpoints.push_back(rho);
        apply_channel_op(rho, program.ops[k], params, features, -1, {});
    }
    j.latent = latent(rho, observables);

    // Heisenberg observables.
    std::vector<MixedState> obs_mats;
    obs_mats.reserve(observables.size());
    for (const auto& p : observables) {
        MixedState o(program.n_qubits);
        CMat m = p.matrix();
        o.data() = m.data();
        obs_mats.push_back(std::move(o));
    }

    // Replay cache for the current checkpoint segment.
    std::vector<MixedState> segment;
    std::size_t segment_start = n_ops;  // invalid

    auto state_before = [&](std::size_t k) -> const MixedState& {
        std::size_t seg = (k / stride) * stride;
        if (seg != segment_start) {
            segment.clear();
            MixedState s = checkpoints[seg / stride];
            for (std::size_t i = seg; i < std::min(seg + stride, n_ops); ++i) {
                segment.push_back(s);
                apply_channel_op(s, program.ops[i], params, features, -1, {});
            }
            segment_start = seg;
        }
        return segment[k - segment_start];
    };

    for (std::size_t rk = n_ops; rk-- > 0;) {
        const ChannelOp& op = program.ops[rk];
        if (op.type == ChannelOp::Type::Gate) {
            bool any_bound = false;
            for (const auto& a : op.gate.angles)
                if (a.kind != AngleRef::Kind::Literal) any_bound = true;
            if (any_bound) {
                std::vector<double> bound =
                    bind_angles(op.gate, params, features);
                CMat u = gate_matrix(op.gate.kind, bound, &op.gate.fixed);
                // B = rho_{k-1} U^dag is shared across angle slots.
                MixedState b = state_before(rk);
                right_mul(b, u.dagger(), op.gate.targets);
                for (std::size_t slot = 0; slot < op.gate.angles.size();
                     ++slot) {
                    const AngleRef& a = op.gate.angles[slot];
                    if (a.kind == AngleRef::Kind::Literal) continue;
                    CMat du = gate_matrix_derivative(
                        op.gate.kind, bound, static_cast<int>(slot));
                    MixedState m = b;
                    left_mul(m, du, op.gate.targets);
                    auto& dest = a.kind == AngleRef::Kind::Param
                                     ? j.d_params
                                     : j.d_features;
                    const std::size_t dim = m.dim();
                    for (std::size_t i = 0; i < obs_mats.size(); ++i) {
                        // 2 Re Tr(O dU rho U^dag)
                        cplx tr = 0.0;
                        const auto& od = obs_mats[i].data();
                        const auto& md = m.data();
                        for (std::size_t r = 0; r < dim; ++r)
                            for (std::size_t c = 0; c < dim; ++c)
                                tr += od[r * dim + c] * md[c * dim + r];
                        dest[i][a.index] += 2.0 * tr.real();
                    }
                }
            }
        }
        for (auto& o : obs_mats)
            apply_channel_op_heisenberg(o, op, params, features);
    }
    return j;
}

}  // namespace nqsvdd
