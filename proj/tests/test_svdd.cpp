#include <cmath>

#include "doctest.h"
#include "nqsvdd/experiment.hpp"
#include "nqsvdd/svdd.hpp"

using namespace nqsvdd;

TEST_CASE("auc: trivial cases and the pair-count oracle") {
    std::vector<double> t1{0.1, 0.2}, o1{0.3, 0.4};
    CHECK(auc(t1, o1) == 1.0);

    std::vector<double> same(5, 1.0), same2(7, 1.0);
    CHECK(auc(same, same2) == 0.5);

    std::vector<double> empty;
    CHECK_THROWS_AS(auc(empty, o1), std::invalid_argument);
    CHECK_THROWS_AS(auc(t1, empty), std::invalid_argument);

    // Random score sets with deliberate ties: rank route == O(n^2) route,
    // exactly.
    Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t nt = 1 + rng.uniform_index(50);
        std::size_t no = 1 + rng.uniform_index(50);
        std::vector<double> ts(nt), os(no);
        for (auto& v : ts) v = std::floor(rng.uniform(0.0, 8.0)) / 4.0;
        for (auto& v : os) v = std::floor(rng.uniform(0.0, 8.0)) / 4.0;

        double count = 0.0;
        for (double a : ts)
            for (double b : os) {
                if (a < b) count += 1.0;
                else if (a == b) count += 0.5;
            }
        double want = count / (static_cast<double>(nt) * static_cast<double>(no));
        CHECK(auc(ts, os) == want);
    }
}

TEST_CASE("auc is invariant under strictly monotone score transforms") {
    Rng rng(11);
    std::vector<double> ts(30), os(25);
    for (auto& v : ts) v = rng.uniform(0.0, 2.0);
    for (auto& v : os) v = rng.uniform(0.5, 3.0);
    double base = auc(ts, os);
    auto mono = [](double v) { return std::exp(2.0 * v) - 1.0; };
    for (auto& v : ts) v = mono(v);
    for (auto& v : os) v = mono(v);
    CHECK(auc(ts, os) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("center initialization: mean and snapping") {
    ModelSpec spec = make_model_spec("toy", Variant::Dsvdd);
    SvddModel model(spec, 7);

    // All training rows identical: the center is that row's latent, with
    // small coordinates snapped to +-0.1.
    std::vector<std::vector<double>> train(8, {0.9, 0.4});
    model.init_center(train);
    auto lat = model.latent_of(train.front());
    const auto& c = model.center();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(lat[i]) >= 0.1)
            CHECK(c[i] == doctest::Approx(lat[i]).epsilon(1e-12));
        else
            CHECK(std::abs(c[i]) == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(std::abs(c[i]) >= 0.1 - 1e-12);
    }

    std::vector<std::vector<double>> empty;
    SvddModel fresh(spec, 7);
    CHECK_THROWS_AS(fresh.init_center(empty), StructuralError);
}

TEST_CASE("center snapping: exact zero coordinates become +0.1") {
    // A bias-free net maps the zero input to the zero latent, so every
    // center coordinate sits exactly at the snap point.
    SvddModel model(make_model_spec("toy", Variant::Dsvdd), 3);
    std::vector<std::vector<double>> train(4, {0.0, 0.0});
    model.init_center(train);
    for (double c : model.center()) CHECK(c == 0.1);
}

TEST_CASE("center is deterministic in the seed") {
    TaskSizes sizes;
    sizes.train = 40;
    sizes.test_target = 10;
    sizes.test_outlier = 10;
    OccTask task = make_toy_task(3, sizes);

    ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
    SvddModel a(spec, 5), b(spec, 5);
    a.init_center(task.train_x);
    b.init_center(task.train_x);
    CHECK(a.center() == b.center());

    SvddModel other(spec, 6);
    other.init_center(task.train_x);
    CHECK(a.center() != other.center());
}

TEST_CASE("loss: exact values in degenerate configurations") {
    ModelSpec spec = make_model_spec("toy", Variant::Dsvdd);
    SvddModel model(spec, 1);

    std::vector<std::vector<double>> batch{{0.25, 0.75}};
    CHECK_THROWS_AS(model.loss(batch), StateError);  // center not initialized

    model.init_center(batch);
    auto lat = model.latent_of(batch.front());
    // c snaps small coordinates, so reconstruct the expected distance.
    double want = 0.0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        double d = lat[i] - model.center()[i];
        want += d * d;
    }
    // lambda defaults to 1e-6; with weights ~1 the term is ~1e-6 w^2.
    double frob = 0.0;
    for (const auto& w : model.net().weights())
        for (double v : w.v) frob += v * v;
    CHECK(model.loss(batch) ==
          doctest::Approx(want + 0.5e-6 * frob).epsilon(1e-9));
}

TEST_CASE("score: relation to r2star and ordering invariance") {
    TaskSizes sizes;
    sizes.train = 30;
    sizes.test_target = 8;
    sizes.test_outlier = 8;
    OccTask task = make_toy_task(21, sizes);

    ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
    SvddModel model(spec, 21);
    CHECK_THROWS_AS(model.score(task.test_x.front()), StateError);

    TrainConfig tc;
    tc.steps = 5;
    tc.batch = 8;
    TrainResult tr = model.train(task.train_x, tc);

    // The training point attaining the max distance has decision value 0.
    double max_seen = 0.0;
    int argmax = 0;
    for (std::size_t i = 0; i < task.train_x.size(); ++i) {
        double s = model.score(task.train_x[i]).first;
        if (s > max_seen) {
            max_seen = s;
            argmax = static_cast<int>(i);
        }
    }
    CHECK(max_seen == doctest::Approx(tr.r2star).epsilon(1e-12));
    CHECK(model.score(task.train_x[argmax]).second ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Scores are pure: same inputs, same outputs, any order.
    auto s1 = model.score(task.test_x[3]);
    auto s2 = model.score(task.test_x[5]);
    CHECK(model.score(task.test_x[3]).first == s1.first);
    CHECK(model.score(task.test_x[5]).first == s2.first);

    // Quantum-variant score bound: 0 <= score <= sum_i (1+|c_i|)^2.
    double bound = 0.0;
    for (double ci : model.center()) bound += (1.0 + std::abs(ci)) * (1.0 + std::abs(ci));
    for (const auto& x : task.test_x) {
        double s = model.score(x).first;
        CHECK(s >= 0.0);
        CHECK(s <= bound + 1e-9);
    }
}

TEST_CASE("train: zero steps computes r2star and keeps parameters") {
    TaskSizes sizes;
    sizes.train = 20;
    sizes.test_target = 5;
    sizes.test_outlier = 5;
    OccTask task = make_toy_task(8, sizes);

    ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
    SvddModel model(spec, 8);
    auto theta_before = model.theta();
    TrainResult tr = model.train(task.train_x, [] {
        TrainConfig c;
        c.steps = 0;
        return c;
    }());
    CHECK(model.theta() == theta_before);
    CHECK(tr.loss_history.empty());
    CHECK(tr.r2star > 0.0);
    CHECK(model.trained());
}

TEST_CASE("train: loss history is reproducible for a fixed seed") {
    TaskSizes sizes;
    sizes.train = 24;
    sizes.test_target = 6;
    sizes.test_outlier = 6;
    OccTask task = make_toy_task(13, sizes);

    TrainConfig tc;
    tc.steps = 12;
    tc.batch = 6;

    ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
    SvddModel m1(spec, 13), m2(spec, 13);
    auto h1 = m1.train(task.train_x, tc);
    auto h2 = m2.train(task.train_x, tc);
    CHECK(h1.loss_history == h2.loss_history);  // bitwise
    CHECK(h1.r2star == h2.r2star);
}

TEST_CASE("toy task reaches auc 1.0 within 200 steps on three seeds") {
    TrainConfig tc;
    tc.steps = 200;
    tc.batch = 16;
    tc.restart_period = 100;

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        TaskSizes sizes;
        sizes.train = 60;
        sizes.test_target = 30;
        sizes.test_outlier = 30;
        OccTask task = make_toy_task(seed, sizes);

        ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
        SvddModel model(spec, seed);
        model.train(task.train_x, tc);

        std::vector<double> ts, os;
        for (std::size_t i = 0; i < task.test_x.size(); ++i)
            (task.test_is_outlier[i] ? os : ts)
                .push_back(model.score(task.test_x[i]).first);
        CHECK(auc(ts, os) == 1.0);
    }
}

TEST_CASE("training loss trends down on the toy task") {
    TaskSizes sizes;
    sizes.train = 48;
    sizes.test_target = 10;
    sizes.test_outlier = 10;
    OccTask task = make_toy_task(5, sizes);

    TrainConfig tc;
    tc.steps = 120;
    tc.batch = 12;
    tc.restart_period = 60;

    ModelSpec spec = make_model_spec("toy", Variant::Nqsvdd, -1, 1);
    SvddModel model(spec, 5);
    auto tr = model.train(task.train_x, tc);

    // Soft monotonicity: compare window means over a 30-step window.
    int window = 30, good = 0, total = 0;
    for (int start = 0; start + 2 * window <= tc.steps; start += window) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < window; ++i) {
            a += tr.loss_history[start + i];
            b += tr.loss_history[start + window + i];
        }
        if (b <= a) ++good;
        ++total;
    }
    CHECK(good * 5 >= total * 4);  // >= 80% of windows improve
    CHECK(tr.loss_history.back() < tr.loss_history.front());
}

TEST_CASE("dsvdd variant trains on the toy task") {
    TaskSizes sizes;
    sizes.train = 40;
    sizes.test_target = 20;
    sizes.test_outlier = 20;
    OccTask task = make_toy_task(2, sizes);

    TrainConfig tc;
    tc.steps = 150;
    tc.batch = 10;
    tc.restart_period = 75;

    SvddModel model(make_model_spec("toy", Variant::Dsvdd), 2);
    model.train(task.train_x, tc);
    std::vector<double> ts, os;
    for (std::size_t i = 0; i < task.test_x.size(); ++i)
        (task.test_is_outlier[i] ? os : ts)
            .push_back(model.score(task.test_x[i]).first);
    CHECK(auc(ts, os) > 0.95);
}

TEST_CASE("divergence produces a diagnostic state error") {
    TaskSizes sizes;
    sizes.train = 10;
    sizes.test_target = 5;
    sizes.test_outlier = 5;
    OccTask task = make_toy_task(1, sizes);

    SvddModel model(make_model_spec("toy", Variant::Dsvdd), 1);
    model.init_center(task.train_x);
    // Poison a weight to force a NaN loss.
    model.net_mut().weights()[0].v[0] = std::nan("");
    TrainConfig tc;
    tc.steps = 1;
    tc.batch = 4;
    CHECK_THROWS_AS(model.train(task.train_x, tc), StateError);
}
