#include "nqsvdd/diff.hpp"

#include <cmath>

namespace nqsvdd {

ShiftRule shift_rule_for(GateKind kind) {
    switch (kind) {
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::U3:
        case GateKind::SU4: return {M_PI / 2, 0.5};
        case GateKind::PhaseZ:
        case GateKind::PhaseZZ: return {M_PI / 4, 1.0};
        default:
            throw StructuralError(
                std::string("no shift rule for gate ") + gate_name(kind));
    }
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

QuantumJacobian jacobian_shift(const CircuitProgram& program,
                               std::span<const double> params,
                               std::span<const double> features,
                               const std::vector<PauliString>& observables,
                               const PureState* initial) {
    QuantumJacobian j =
        make_jacobian(observables.size(), params.size(), features.size());
    j.latent = latent(simulate(program, params, features, {}, initial),
                      observables);

    for (std::size_t g = 0; g < program.gates.size(); ++g) {
        const GateOp& gate = program.gates[g];
        for (std::size_t slot = 0; slot < gate.angles.size(); ++slot) {
            const AngleRef& a = gate.angles[slot];
            if (a.kind == AngleRef::Kind::Literal) continue;
            ShiftRule rule = shift_rule_for(gate.kind);
            ShiftSpec plus{static_cast<int>(g), static_cast<int>(slot),
                           rule.delta};
            ShiftSpec minus{static_cast<int>(g), static_cast<int>(slot),
                            -rule.delta};
            auto lp = latent(simulate(program, params, features, plus, initial),
                             observables);
            auto lm = latent(simulate(program, params, features, minus, initial),
                             observables);
            auto& dest = a.kind == AngleRef::Kind::Param ? j.d_params
                                                         : j.d_features;
            for (std::size_t i = 0; i < observables.size(); ++i)
                dest[i][a.index] += rule.prefactor * (lp[i] - lm[i]);
        }
    }
    return j;
}

namespace {

// <lambda | G | psi> for the generator G of an elementary parameterized
// gate, computed without materializing G psi.
cplx generator_dot(const GateOp& gate, const PureState& lambda,
                   const PureState& psi) {
    const auto& lv = lambda.amplitudes();
    const auto& pv = psi.amplitudes();
    const int n = psi.n_qubits();
    const cplx mihalf(0.0, -0.5);
    const cplx iu(0.0, 1.0);
    cplx acc = 0.0;

    switch (gate.kind) {
        case GateKind::Rx: {
            // G = -i X / 2
            std::size_t m = qubit_mask(n, gate.targets[0]);
            for (std::size_t i = 0; i < pv.size(); ++i)
                acc += std::conj(lv[i]) * pv[i ^ m];
            return mihalf * acc;
        }
        case GateKind::Ry: {
            // G = -i Y / 2, (Y psi)[i] = (bit ? i : -i) psi[i ^ m]
            std::size_t m = qubit_mask(n, gate.targets[0]);
            for (std::size_t i = 0; i < pv.size(); ++i) {
                cplx ph = (i & m) ? iu : -iu;
                acc += std::conj(lv[i]) * ph * pv[i ^ m];
            }
            return mihalf * acc;
        }
        case GateKind::Rz: {
            // G = -i Z / 2
            std::size_t m = qubit_mask(n, gate.targets[0]);
            for (std::size_t i = 0; i < pv.size(); ++i) {
                double s = (i & m) ? -1.0 : 1.0;
                acc += std::conj(lv[i]) * (s * pv[i]);
            }
            return mihalf * acc;
        }
        case GateKind::PhaseZ: {
            // G = +i Z
            std::size_t m = qubit_mask(n, gate.targets[0]);
            for (std::size_t i = 0; i < pv.size(); ++i) {
                double s = (i & m) ? -1.0 : 1.0;
                acc += std::conj(lv[i]) * (s * pv[i]);
            }
            return iu * acc;
        }
        case GateKind::PhaseZZ: {
            // G = +i Z (x) Z
            std::size_t m1 = qubit_mask(n, gate.targets[0]);
            std::size_t m2 = qubit_mask(n, gate.targets[1]);
            for (std::size_t i = 0; i < pv.size(); ++i) {
                bool odd = (bool(i & m1)) != (bool(i & m2));
                acc += std::conj(lv[i]) * (odd ? -pv[i] : pv[i]);
            }
            return iu * acc;
        }
        default:
            throw StructuralError("generator_dot: unsupported gate");
    }
}

// In-place inverse application of a fully bound elementary gate.
void apply_gate_dagger(PureState& psi, const GateOp& gate,
                       std::span<const double> bound) {
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::CNOT:
            apply_gate(psi, gate, bound);
            return;
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::PhaseZ:
        case GateKind::PhaseZZ: {
            double neg[1] = {-bound[0]};
            apply_gate(psi, gate, neg);
            return;
        }
        case GateKind::Unitary: {
            apply_matrix(psi, gate.fixed.dagger(), gate.targets);
            return;
        }
        default:
            throw StructuralError("apply_gate_dagger: program not lowered");
    }
}

bool is_lowered(const CircuitProgram& program) {
    for (const auto& g : program.gates)
        if (g.kind == GateKind::U3 || g.kind == GateKind::SU4) return false;
    return true;
}

}  // namespace

QuantumJacobian jacobian_adjoint(const CircuitProgram& program,
                                 std::span<const double> params,
                                 std::span<const double> features,
                                 const std::vector<PauliString>& observables,
                                 const PureState* initial) {
    if (!is_lowered(program)) {
        CircuitProgram low = lower(program);
        return jacobian_adjoint(low, params, features, observables, initial);
    }

    QuantumJacobian j =
        make_jacobian(observables.size(), params.size(), features.size());

    PureState psi = simulate(program, params, features, {}, initial);
    j.latent = latent(psi, observables);

    std::vector<PureState> lambdas;
    lambdas.reserve(observables.size());
    for (const auto& p : observables) lambdas.push_back(p.apply(psi));

    for (int k = static_cast<int>(program.gates.size()) - 1; k >= 0; --k) {
        const GateOp& gate = program.gates[k];
        std::vector<double> bound = bind_angles(gate, params, features);

        if (!gate.angles.empty() &&
            gate.angles[0].kind != AngleRef::Kind::Literal) {
            const AngleRef& a = gate.angles[0];
            auto& dest = a.kind == AngleRef::Kind::Param ? j.d_params
                                                         : j.d_features;
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                cplx dot = generator_dot(gate, lambdas[i], psi);
                dest[i][a.index] += 2.0 * dot.real();
            }
        }

        apply_gate_dagger(psi, gate, bound);
        for (auto& l : lambdas) apply_gate_dagger(l, gate, bound);
    }
    return j;
}

std::vector<std::vector<double>> grad_quantum(
    const CircuitProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables) {
    return jacobian_shift(program, params, features, observables).d_params;
}

std::vector<std::vector<double>> grad_inputs(
    const CircuitProgram& program, std::span<const double> params,
    std::span<const double> features,
    const std::vector<PauliString>& observables) {
    return jacobian_shift(program, params, features, observables).d_features;
}

HybridGrads hybrid_backward(const ClassicalNet& net,
                            const std::vector<ClassicalNet::Cache>& caches,
                            const std::vector<std::vector<double>>& d_latent,
                            const std::vector<QuantumJacobian>& jacobians,
                            double lambda) {
    if (caches.size() != d_latent.size() || caches.size() != jacobians.size())
        throw StructuralError("hybrid_backward: batch size mismatch");
    if (caches.empty()) throw StructuralError("hybrid_backward: empty batch");

    std::size_t n_theta = jacobians.front().d_params.empty()
                              ? 0
                              : jacobians.front().d_params.front().size();
    HybridGrads out;
    out.d_theta.assign(n_theta, 0.0);
    for (const auto& w : net.weights()) out.d_weights.push_back(Tensor(w.shape));

    const int z_dim = net.output_dim();
    for (std::size_t s = 0; s < caches.size(); ++s) {
        const auto& jac = jacobians[s];
        const auto& dl = d_latent[s];
        if (dl.size() != jac.latent.size())
            throw StructuralError("hybrid_backward: latent gradient size");

        for (std::size_t i = 0; i < dl.size(); ++i) {
            if (dl[i] == 0.0) continue;
            for (std::size_t p = 0; p < n_theta; ++p)
                out.d_theta[p] += dl[i] * jac.d_params[i][p];
        }

        Tensor dz({z_dim});
        for (std::size_t i = 0; i < dl.size(); ++i) {
            if (dl[i] == 0.0) continue;
            for (int k = 0; k < z_dim; ++k)
                dz.v[k] += dl[i] * jac.d_features[i][k];
        }
        auto wg = net.backward(caches[s], dz);
        for (std::size_t w = 0; w < wg.size(); ++w)
            for (int i2 = 0; i2 < wg[w].numel(); ++i2)
                out.d_weights[w].v[i2] += wg[w].v[i2];
    }

    if (lambda != 0.0) {
        for (std::size_t w = 0; w < out.d_weights.size(); ++w)
            for (int i2 = 0; i2 < out.d_weights[w].numel(); ++i2)
                out.d_weights[w].v[i2] += lambda * net.weights()[w].v[i2];
    }
    return out;
}

}  // namespace nqsvdd
