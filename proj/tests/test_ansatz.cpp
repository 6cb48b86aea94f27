#include <cmath>

#include "doctest.h"
#include "nqsvdd/ansatz.hpp"
#include "nqsvdd/svdd.hpp"
#include "test_helpers.hpp"

using namespace nqsvdd;

TEST_CASE("su4: unitarity for random angles") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> a(15);
        for (auto& v : a) v = rng.uniform(-M_PI, M_PI);
        CMat u = su4_matrix(a);
        CHECK(u.is_unitary(1e-12));

        // The independent product oracle builds the same matrix.
        oracle::Mat ref = oracle::su4_16(a);
        double m = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m = std::max(m, std::abs(u(r, c) - ref[r][c]));
        CHECK(m < 1e-12);
    }
}

TEST_CASE("su4: zero angles give the bare three-cnot skeleton (swap)") {
    std::vector<double> zeros(15, 0.0);
    CMat u = su4_matrix(zeros);
    // Regression pin, first derived from the dense product oracle: with all
    // dressings at U3(0,0,0) = I the alternating cnot core is a SWAP.
    CMat swap(4, 4);
    swap(0, 0) = 1.0;
    swap(1, 2) = 1.0;
    swap(2, 1) = 1.0;
    swap(3, 3) = 1.0;
    CHECK(u.max_abs_diff(swap) < 1e-14);

    oracle::Mat ref = oracle::su4_16(zeros);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(u(r, c) - ref[r][c]) < 1e-14);
}

TEST_CASE("u3(pi, 0, pi) equals X up to global phase") {
    CMat u = u3_matrix(M_PI, 0.0, M_PI);
    // Analytic product of the caption formula gives -iX.
    CMat want(2, 2);
    want(0, 1) = cplx(0.0, -1.0);
    want(1, 0) = cplx(0.0, -1.0);
    CHECK(u.max_abs_diff(want) < 1e-12);
    CHECK(u3_matrix(0, 0, 0).max_abs_diff(CMat::identity(2)) < 1e-14);
}

TEST_CASE("su4 lowering matches the direct matrix") {
    Rng rng(77);
    std::vector<AngleRef> refs(15);
    std::vector<double> vals(15);
    for (int i = 0; i < 15; ++i) {
        vals[i] = rng.uniform(-M_PI, M_PI);
        refs[i] = AngleRef::literal(vals[i]);
    }
    CircuitProgram hi(2), lo(2);
    hi.append(GateOp::su4(0, 1, refs));
    for (const auto& g : lower_gate(hi.gates[0])) lo.append(g);

    PureState random_in(2);
    apply_gate(random_in, GateOp::h(0), {});
    double a[1] = {0.7};
    apply_gate(random_in, GateOp::ry(1, AngleRef::literal(0.7)), a);

    PureState via_hi = simulate(hi, {}, {}, {}, &random_in);
    PureState via_lo = simulate(lo, {}, {}, {}, &random_in);
    for (std::size_t i = 0; i < via_hi.dim(); ++i)
        CHECK(std::abs(via_hi[i] - via_lo[i]) < 1e-12);
}

TEST_CASE("brick pattern: gate counts over active sets") {
    std::vector<int> eight{0, 1, 2, 3, 4, 5, 6, 7};
    auto p8 = brick_pairs(eight);
    CHECK(p8.size() == 8);  // 4 even + 3 odd + ring closure
    CHECK(p8.back() == std::pair<int, int>(7, 0));

    std::vector<int> two{3, 5};
    CHECK(brick_pairs(two).size() == 1);

    std::vector<int> three{0, 2, 4};
    auto p3 = brick_pairs(three);
    CHECK(p3.size() == 2);
    CHECK(p3[0] == std::pair<int, int>(0, 2));
    CHECK(p3[1] == std::pair<int, int>(2, 4));

    std::vector<int> four{0, 2, 4, 6};
    auto p4 = brick_pairs(four);
    CHECK(p4.size() == 4);

    std::vector<int> one{0};
    CHECK_THROWS_AS(brick_pairs(one), StructuralError);
}

TEST_CASE("conv layer: zero angles act as the tensored skeleton") {
    std::vector<int> active{0, 1, 2, 3};
    std::vector<double> zeros(15, 0.0);

    Rng rng(3);
    CircuitProgram prep = testutil::random_circuit(rng, 4, 6);
    PureState psi = simulate(prep, {}, {});
    PureState direct = psi;
    conv_layer(direct, active, zeros);

    CircuitProgram layer(4);
    std::vector<AngleRef> shared(15, AngleRef::literal(0.0));
    for (auto [a, b] : brick_pairs(active))
        layer.append(GateOp::su4(a, b, shared));
    auto u = oracle::circuit_unitary(layer, {}, {});
    auto ref = oracle::apply(u, std::vector<oracle::cd>(psi.amplitudes().begin(),
                                                        psi.amplitudes().end()));
    CHECK(testutil::max_amp_diff(direct, ref) < 1e-12);
}

TEST_CASE("conv layer rejects inactive qubits") {
    PureState psi(3);
    std::vector<int> bad{0, 7};
    std::vector<double> zeros(15, 0.0);
    CHECK_THROWS_AS(conv_layer(psi, bad, zeros), StructuralError);
}

TEST_CASE("pooling keeps every other active qubit") {
    std::vector<int> eight{0, 1, 2, 3, 4, 5, 6, 7};
    auto once = pool(eight);
    CHECK(once == std::vector<int>{0, 2, 4, 6});
    auto twice = pool(once);
    CHECK(twice == std::vector<int>{0, 4});
    std::vector<int> single{2};
    CHECK_THROWS_AS(pool(single), StructuralError);
}

TEST_CASE("pooled-away qubits are ignored by lifted observables") {
    // Expectations supported on kept qubits are identical whether the
    // discarded qubits are traced out or simply carry identity factors.
    Rng rng(12);
    CircuitProgram p = testutil::random_circuit(rng, 3, 8);
    PureState psi = simulate(p, {}, {});

    ObservableSet obs = select_observables(2, 5);
    std::vector<int> active{0, 2};
    auto lifted = lift_observables(obs, active, 3);
    MixedState rho = to_mixed(psi);
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        double pure_val = expectation(psi, lifted[i]);
        double mixed_val = expectation(rho, lifted[i]);
        CHECK(std::abs(pure_val - mixed_val) < 1e-12);
    }
}

TEST_CASE("qcnn schedules reach the documented active counts") {
    QcnnSpec mnist{8, {2, 2}};
    CHECK(mnist.final_active_count() == 4);
    CHECK(mnist.param_count() == 60);

    QcnnSpec credit{6, {2, 1, 0}};
    CHECK(credit.final_active_count() == 2);
    CHECK(credit.param_count() == 45);

    QcnnSpec network{6, {2, 2}};
    CHECK(network.final_active_count() == 3);
    CHECK(network.param_count() == 60);

    CircuitProgram prog(8);
    auto active = append_qcnn(prog, mnist, 0);
    CHECK(active == std::vector<int>{0, 2, 4, 6});
    CHECK(prog.n_params == 60);
    // Gates after pooling touch only active qubits.
    bool saw_pooled_gate = false;
    int seen = 0;
    for (const auto& g : prog.gates) {
        ++seen;
        if (seen > 16) {  // two 8-gate layers at full width come first
            for (int q : g.targets)
                if (q == 1 || q == 3 || q == 5 || q == 7) saw_pooled_gate = true;
        }
    }
    CHECK_FALSE(saw_pooled_gate);
}

TEST_CASE("parameter accounting reproduces the published totals") {
    auto mnist = count_parameters(make_model_spec("mnist", Variant::Nqsvdd));
    CHECK(mnist.classical == 1000);
    CHECK(mnist.embed == 45);
    CHECK(mnist.qcnn == 60);
    CHECK(mnist.quantum() == 105);
    CHECK(mnist.total() == 1105);

    auto mnist_noisy =
        count_parameters(make_model_spec("mnist", Variant::Nqsvdd, -1, 2));
    CHECK(mnist_noisy.total() == 1090);

    auto qsvdd_amp = count_parameters(make_model_spec("mnist", Variant::QsvddAmp));
    CHECK(qsvdd_amp.total() == 75);
    auto qsvdd_zz = count_parameters(make_model_spec("mnist", Variant::QsvddZz));
    CHECK(qsvdd_zz.total() == 75);

    auto credit = count_parameters(make_model_spec("credit", Variant::Nqsvdd));
    CHECK(credit.classical == 120);
    CHECK(credit.quantum() == 90);
    CHECK(credit.total() == 210);

    auto network = count_parameters(make_model_spec("network", Variant::Nqsvdd));
    CHECK(network.classical == 120);
    CHECK(network.quantum() == 105);
    CHECK(network.total() == 225);

    // Reduced DSVDD baselines share the conv backbone plus a dense head.
    CHECK(count_parameters(make_model_spec("mnist", Variant::Dsvdd)).total() ==
          2152);
    CHECK(count_parameters(make_model_spec("credit", Variant::Dsvdd)).total() ==
          288);
    CHECK(count_parameters(make_model_spec("network", Variant::Dsvdd)).total() ==
          456);

    // Noisy tabular variant used by the robustness experiment.
    CHECK(count_parameters(make_model_spec("credit", Variant::Nqsvdd, -1, 2))
              .total() == 195);
}

TEST_CASE("full reduced model circuit matches the dense oracle") {
    // A complete NQSVDD-shaped circuit at n = 4 (reupload t = 2 plus a
    // {1,1} QCNN) against the Kronecker-product oracle, random bindings.
    ReuploadSpec reup;
    reup.embedding = ZzEmbeddingSpec::complete(4, 1);
    reup.repetitions = 2;
    CircuitProgram p = build_reupload_circuit(reup);
    QcnnSpec qcnn{4, {1, 1}};
    append_qcnn(p, qcnn, 30);

    Rng rng(2025);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> theta(p.n_params), z(p.n_features);
        for (auto& t : theta) t = rng.uniform(0.0, 2 * M_PI);
        for (auto& v : z) v = rng.uniform(-1.0, 1.0);

        PureState got = simulate(p, theta, z);
        auto u = oracle::circuit_unitary(p, theta, z);
        auto ref = oracle::apply(u, testutil::zero_state(4));

        // State fidelity |<ref|got>|^2 > 1 - 1e-10.
        oracle::cd overlap(0);
        for (std::size_t i = 0; i < ref.size(); ++i)
            overlap += std::conj(ref[i]) * got[i];
        CHECK(std::norm(overlap) > 1.0 - 1e-10);
        CHECK(testutil::max_amp_diff(got, ref) < 1e-12);
    }
}

TEST_CASE("qcnn reaches n_f in ceil(log2(n/n_f)) pooling stages") {
    for (int n : {2, 4, 6, 8}) {
        std::vector<int> active(n);
        for (int q = 0; q < n; ++q) active[q] = q;
        int stages = 0;
        while (static_cast<int>(active.size()) > 1) {
            active = pool(active);
            ++stages;
            int n_f = static_cast<int>(active.size());
            CHECK(stages == static_cast<int>(std::ceil(
                                std::log2(static_cast<double>(n) / n_f))));
        }
    }
}

TEST_CASE("shared-parameter conv layer: one 15-vector drives every gate") {
    CircuitProgram prog(4);
    std::vector<int> active{0, 1, 2, 3};
    append_conv_layer(prog, active, 0);
    CHECK(prog.n_params == 15);
    for (const auto& g : prog.gates) {
        CHECK(g.kind == GateKind::SU4);
        for (int i = 0; i < 15; ++i) {
            CHECK(g.angles[i].kind == AngleRef::Kind::Param);
            CHECK(g.angles[i].index == i);
        }
    }
}
