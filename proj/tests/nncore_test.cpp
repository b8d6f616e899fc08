#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "nncore/layers.hpp"
#include "nncore/params.hpp"
#include "nncore/rng.hpp"
#include "nncore/serialize.hpp"
#include "nncore/tape.hpp"
#include "support/gradcheck.hpp"

using namespace nncore;

namespace {
Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}
}  // namespace

TEST_CASE("dense_forward basics") {
    Matrix I2 = Matrix::Identity(2, 2);
    CHECK(dense_forward(I2, Vector::Zero(2), vec({-1, 2}), Activation::relu) == vec({0, 2}));

    Matrix W0 = Matrix::Zero(3, 2);
    Vector out = dense_forward(W0, Vector::Zero(3), vec({7, -4}), Activation::sigmoid);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(out(i) == doctest::Approx(0.5));

    Matrix W(1, 2);
    W << 1, 1;
    CHECK(dense_forward(W, vec({1}), vec({2, 3}), Activation::identity)(0) == doctest::Approx(6));

    CHECK_THROWS_AS(dense_forward(W, vec({1, 2}), vec({2, 3}), Activation::identity),
                    std::invalid_argument);
    CHECK_THROWS_AS(dense_forward(W, vec({1}), vec({2, 3, 4}), Activation::identity),
                    std::invalid_argument);
}

TEST_CASE("lstm_step zero parameters give zero state") {
    LstmSpec spec{"cell", 3, 2};
    std::vector<ParamLayout> layout;
    spec.declare(layout);
    ParamSet ps = init_params(layout, 1, 0.0, 0.0);
    LstmState out = lstm_step(ps, spec, vec({5, -2, 100}), LstmState::zeros(2));
    CHECK(out.hidden.isZero());
    CHECK(out.cell.isZero());
}

TEST_CASE("lstm_step saturated gates") {
    // b = 50 on every gate, zero weights, prev cell 1: the gates saturate at 1,
    // so s = 1 + tanh(50) ~ 2 and h = tanh(2).
    LstmSpec spec{"cell", 1, 1};
    std::vector<ParamLayout> layout;
    spec.declare(layout);
    ParamSet ps = init_params(layout, 1, 0.0, 0.0);
    for (const char* g : {"f", "g", "q", "c"}) ps.value("cell.b" + std::string(g))(0, 0) = 50.0;
    LstmState prev{vec({0}), vec({1})};
    LstmState out = lstm_step(ps, spec, vec({0}), prev);
    CHECK(out.cell(0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(out.hidden(0) == doctest::Approx(std::tanh(2.0)).epsilon(1e-9));
}

TEST_CASE("lstm_step matches a scalar straight-line trace") {
    LstmSpec spec{"cell", 1, 1};
    std::vector<ParamLayout> layout;
    spec.declare(layout);
    ParamSet ps = init_params(layout, 1, 0.0, 0.0);
    auto set = [&](const char* n, double v) { ps.value("cell." + std::string(n))(0, 0) = v; };
    set("Uf", 0.1), set("Wf", 0.2), set("bf", 0.05);
    set("Ug", -0.3), set("Wg", 0.1), set("bg", 0.0);
    set("Uq", 0.2), set("Wq", -0.1), set("bq", 0.1);
    set("Uc", 0.4), set("Wc", 0.3), set("bc", -0.2);

    const double x = 0.5, h0 = 0.3, s0 = -0.2;
    auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    const double f = sig(0.05 + 0.1 * x + 0.2 * h0);
    const double g = sig(0.0 - 0.3 * x + 0.1 * h0);
    const double q = sig(0.1 + 0.2 * x - 0.1 * h0);
    const double cand = std::tanh(-0.2 + 0.4 * x + 0.3 * h0);
    const double s1 = f * s0 + g * cand;
    const double h1 = std::tanh(s1) * q;

    LstmState out = lstm_step(ps, spec, vec({x}), LstmState{vec({h0}), vec({s0})});
    CHECK(out.cell(0) == doctest::Approx(s1).epsilon(1e-15));
    CHECK(out.hidden(0) == doctest::Approx(h1).epsilon(1e-15));
}

TEST_CASE("backward on linear and sigmoid scalars") {
    ParamSet ps;
    ps.add("w", 1, 1).value(0, 0) = 0.7;

    Tape t;
    Tape::Var loss = t.matvec(ps.at("w"), t.input(vec({3})));
    t.backward(loss);
    CHECK(ps.at("w").grad(0, 0) == doctest::Approx(3.0));
    CHECK(ps.at("w").touched);

    ps.zero_grads();
    ps.value("w")(0, 0) = 0.0;
    t.reset();
    Tape::Var s = t.sigmoid(t.matvec(ps.at("w"), t.input(vec({1}))));
    t.backward(s);
    CHECK(ps.at("w").grad(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("backward leaves off-path parameters at zero, unflagged") {
    ParamSet ps;
    ps.add("used", 1, 2).value << 1, 2;
    ps.add("unused", 3, 3).value.setConstant(5.0);
    Tape t;
    Tape::Var loss = t.matvec(ps.at("used"), t.input(vec({1, 1})));
    t.backward(loss);
    CHECK(ps.at("used").touched);
    CHECK_FALSE(ps.at("unused").touched);
    CHECK(ps.at("unused").grad.isZero());
}

TEST_CASE("gradient check: dense, lstm, dual-lstm architectures") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto dense = testsupport::make_dense_case(seed);
        auto lstm = testsupport::make_lstm_case(seed);
        auto dual = testsupport::make_dual_lstm_case(seed);
        CHECK(testsupport::max_grad_rel_error(dense) < 1e-4);
        CHECK(testsupport::max_grad_rel_error(lstm) < 1e-4);
        CHECK(testsupport::max_grad_rel_error(dual) < 1e-4);
    }
}

TEST_CASE("rmsprop single hand-computed step") {
    ParamSet ps;
    ps.add("w", 1, 1).value(0, 0) = 1.0;
    ps.at("w").grad(0, 0) = 1.0;
    int skipped = rmsprop_update(ps, 0.1, StepDirection::descend);
    CHECK(skipped == 0);
    CHECK(ps.at("w").rms(0, 0) == doctest::Approx(0.1));
    CHECK(ps.value("w")(0, 0) == doctest::Approx(1.0 - 0.1 / std::sqrt(0.1 + 1e-8)));
    CHECK(ps.at("w").grad(0, 0) == 0.0);
}

TEST_CASE("rmsprop zero gradient leaves parameters unchanged") {
    ParamSet ps;
    ps.add("w", 2, 2).value.setConstant(0.3);
    rmsprop_update(ps, 0.1, StepDirection::descend);
    CHECK(ps.value("w").isConstant(0.3));
}

TEST_CASE("rmsprop ascend and descend are exact negations") {
    auto make = [] {
        ParamSet ps;
        ps.add("w", 2, 1).value << 0.5, -0.25;
        ps.at("w").grad << 0.8, -1.3;
        return ps;
    };
    ParamSet up = make(), down = make();
    rmsprop_update(up, 0.05, StepDirection::ascend);
    rmsprop_update(down, 0.05, StepDirection::descend);
    Matrix du = up.value("w") - make().value("w");
    Matrix dd = down.value("w") - make().value("w");
    CHECK((du + dd).isZero(1e-15));
    CHECK(du.norm() > 0.0);
}

TEST_CASE("rmsprop skips and counts nonfinite gradients") {
    ParamSet ps;
    ps.add("ok", 1, 1).value(0, 0) = 1.0;
    ps.at("ok").grad(0, 0) = 1.0;
    ps.add("bad", 1, 1).value(0, 0) = 2.0;
    ps.at("bad").grad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    int skipped = rmsprop_update(ps, 0.1, StepDirection::descend);
    CHECK(skipped == 1);
    CHECK(ps.value("bad")(0, 0) == 2.0);
    CHECK(ps.value("ok")(0, 0) < 1.0);
}

TEST_CASE("clip_params clamps, keeps interior points, idempotent") {
    ParamSet ps;
    ps.add("w", 3, 1).value << 0.02, -0.005, -0.3;
    clip_params(ps, 0.01);
    CHECK(ps.value("w")(0) == 0.01);
    CHECK(ps.value("w")(1) == -0.005);
    CHECK(ps.value("w")(2) == -0.01);

    Matrix once = ps.value("w");
    clip_params(ps, 0.01);
    CHECK(ps.value("w") == once);

    ParamSet zero;
    zero.add("w", 2, 2);
    clip_params(zero, 0.01);
    CHECK(zero.value("w").isZero());

    ParamSet boundary;
    boundary.add("w", 2, 1).value.setConstant(0.01);
    clip_params(boundary, 0.01);
    CHECK(boundary.value("w").isConstant(0.01));

    CHECK_THROWS_AS(clip_params(ps, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(clip_params(ps, -1.0), std::invalid_argument);
}

TEST_CASE("init_params determinism and ranges") {
    std::vector<ParamLayout> layout = {{"a", 4, 3}, {"b", 2, 1}};
    ParamSet p1 = init_params(layout, 42);
    ParamSet p2 = init_params(layout, 42);
    CHECK(p1.value("a") == p2.value("a"));
    CHECK(p1.value("b") == p2.value("b"));

    ParamSet p3 = init_params(layout, 43);
    CHECK(p1.value("a") != p3.value("a"));

    ParamSet critic = init_params(layout, 7, -0.01, 0.01);
    CHECK(critic.max_abs_value() <= 0.01);
    CHECK(p1.max_abs_value() <= 0.05);
}

TEST_CASE("snapshot round-trip is exact") {
    std::vector<ParamLayout> layout = {{"enc.W", 3, 4}, {"dec.b", 2, 1}};
    Snapshot snap;
    snap.params = init_params(layout, 99, -1.0, 1.0);
    snap.fields["kind"] = "demo";
    snap.fields["l"] = "10";

    std::stringstream ss;
    write_snapshot(ss, snap);
    Snapshot back = read_snapshot(ss);
    CHECK(back.fields.at("kind") == "demo");
    CHECK(back.fields.at("l") == "10");
    CHECK(back.params.value("enc.W") == snap.params.value("enc.W"));
    CHECK(back.params.value("dec.b") == snap.params.value("dec.b"));
}

TEST_CASE("taped forward is deterministic and matches the plain path") {
    LstmSpec spec{"enc", 3, 5};
    std::vector<ParamLayout> layout;
    spec.declare(layout);
    ParamSet ps = init_params(layout, 11, -0.4, 0.4);
    Rng rng(5);
    auto window = testsupport::random_window(rng, 4, 3);

    Vector plain = lstm_encode(ps, spec, window);
    Tape t;
    Vector taped1 = t.value(lstm_encode_taped(t, ps, spec, window));
    t.reset();
    Vector taped2 = t.value(lstm_encode_taped(t, ps, spec, window));
    CHECK((plain - taped1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(taped1 == taped2);
}
