#include "nqsvdd/embed.hpp"

#include <cmath>

#include "nqsvdd/ansatz.hpp"

namespace nqsvdd {

ZzEmbeddingSpec ZzEmbeddingSpec::complete(int n_qubits, int n_layers) {
    ZzEmbeddingSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    for (int j = 0; j < n_qubits; ++j)
        for (int k = j + 1; k < n_qubits; ++k) spec.pairs.emplace_back(j, k);
    spec.validate();
    return spec;
}

void ZzEmbeddingSpec::validate() const {
    if (n_qubits < 1) throw StructuralError("zz embedding: needs >= 1 qubit");
    if (n_layers < 1) throw StructuralError("zz embedding: needs >= 1 layer");
    for (auto [j, k] : pairs) {
        if (j < 0 || k < 0 || j >= n_qubits || k >= n_qubits || j >= k)
            throw StructuralError("zz embedding: bad pair");
    }
}

namespace {

void append_zz_layer(CircuitProgram& program, const ZzEmbeddingSpec& spec,
                     int feature_base) {
    for (int q = 0; q < spec.n_qubits; ++q) program.append(GateOp::h(q));
    for (int q = 0; q < spec.n_qubits; ++q)
        program.append(GateOp::phase_z(q, AngleRef::feature(feature_base + q)));
    int f = feature_base + spec.n_qubits;
    for (auto [j, k] : spec.pairs)
        program.append(GateOp::phase_zz(j, k, AngleRef::feature(f++)));
}

}  // namespace

CircuitProgram zz_embedding(const ZzEmbeddingSpec& spec) {
    spec.validate();
    CircuitProgram program(spec.n_qubits);
    for (int layer = 0; layer < spec.n_layers; ++layer)
        append_zz_layer(program, spec, layer * spec.features_per_layer());
    return program;
}

CircuitProgram zz_layer(std::span<const double> x,
                        const ZzEmbeddingSpec& spec) {
    spec.validate();
    if (static_cast<int>(x.size()) != spec.features_per_layer())
        throw BindingError("zz_layer: feature count mismatch");
    CircuitProgram program(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) program.append(GateOp::h(q));
    for (int q = 0; q < spec.n_qubits; ++q)
        program.append(GateOp::phase_z(q, AngleRef::literal(x[q])));
    int f = spec.n_qubits;
    for (auto [j, k] : spec.pairs)
        program.append(GateOp::phase_zz(j, k, AngleRef::literal(x[f++])));
    return program;
}

PureState amplitude_encode(std::span<const double> x) {
    if (x.empty()) throw std::domain_error("amplitude_encode: empty input");
    int n = 1;
    while ((std::size_t{1} << n) < x.size()) ++n;
    std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0));
    double norm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        amps[i] = x[i];
        norm2 += x[i] * x[i];
    }
    if (norm2 <= 0.0)
        throw std::domain_error("amplitude_encode: zero vector");
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return PureState(n, std::move(amps));
}

void ReuploadSpec::validate() const {
    embedding.validate();
    if (embedding.n_layers != 1)
        throw StructuralError("reupload: embedding unit must be one layer");
    if (repetitions < 1) throw StructuralError("reupload: repetitions >= 1");
}

CircuitProgram build_reupload_circuit(const ReuploadSpec& spec) {
    spec.validate();
    CircuitProgram program(spec.embedding.n_qubits);
    std::vector<int> all(spec.embedding.n_qubits);
    for (int q = 0; q < spec.embedding.n_qubits; ++q) all[q] = q;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        append_zz_layer(program, spec.embedding, 0);
        if (spec.trainable_layers && spec.embedding.n_qubits >= 2)
            append_conv_layer(program, all, rep * 15);
    }
    return program;
}

}  // namespace nqsvdd
