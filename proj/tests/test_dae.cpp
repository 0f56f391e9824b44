#include "doctest.h"

#include "hdgwave/dae/dense_dae.hpp"
#include "hdgwave/dae/integrators.hpp"

#include <cmath>
#include <vector>

using namespace hdgwave;

namespace {

Vector scalar(double x) { return Vector::Constant(1, x); }

/// du/dt = -u, v = u
DenseDae decay()
{
    return DenseDae(
        Matrix::Identity(1, 1), 1, [](const Vector& u, const Vector&, double) { return Vector(u); },
        [](const Vector& u, const Vector& v, double) { return Vector(v - u); });
}

double final_error(const std::string& scheme, double dt)
{
    DenseDae dae = decay();
    TimeIntegrator ti(dae, TimeScheme::parse(scheme), dt);
    ti.initialize(0.0, scalar(1.0), scalar(1.0));
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < n; ++i)
        ti.step();
    return std::abs(ti.u()(0) - std::exp(-1.0));
}

std::vector<double> observed_orders(const std::string& scheme)
{
    std::vector<double> err;
    for (int k = 0; k <= 4; ++k)
        err.push_back(final_error(scheme, 0.1 / (1 << k)));
    std::vector<double> p;
    for (std::size_t k = 1; k < err.size(); ++k)
        p.push_back(std::log2(err[k - 1] / err[k]));
    return p;
}

}

TEST_CASE("backward Euler step on linear decay")
{
    DenseDae dae = decay();
    const auto res = bdf_step(dae, {scalar(1.0)}, scalar(1.0), make_bdf(1), 0.1, 0.1);
    CHECK(res.u(0) == doctest::Approx(1.0 / 1.1).epsilon(1e-13));
    CHECK(res.v(0) == doctest::Approx(1.0 / 1.1).epsilon(1e-13));
    CHECK(res.v_at_step);
}

TEST_CASE("one-stage tableau reproduces backward Euler")
{
    DenseDae dae = decay();
    const auto bdf = bdf_step(dae, {scalar(1.0)}, scalar(1.0), make_bdf(1), 0.1, 0.1);
    const auto irk = dirk_step(dae, scalar(1.0), scalar(1.0), make_backward_euler(), 0.1, 0.0);
    CHECK(std::abs(irk.u(0) - bdf.u(0)) < 1e-15);
    CHECK(std::abs(irk.u(0) - 1.0 / 1.1) < 1e-13);
}

TEST_CASE("observed temporal orders on linear decay")
{
    struct Expect {
        const char* scheme;
        double order;
        double tol;
    };
    for (const Expect& e : {Expect{"bdf1", 1.0, 0.15}, Expect{"bdf2", 2.0, 0.1}, Expect{"bdf3", 3.0, 0.15},
                            Expect{"dirk33", 3.0, 0.15}}) {
        CAPTURE(e.scheme);
        const auto p = observed_orders(e.scheme);
        CHECK(std::abs(p.back() - e.order) < e.tol);
    }
}

TEST_CASE("zero dynamics keep the state fixed")
{
    Matrix m(2, 2);
    m << 2.0, 0.5, 0.5, 1.0;
    DenseDae dae(
        m, 2, [](const Vector& u, const Vector&, double) { return Vector(Vector::Zero(u.size())); },
        [](const Vector&, const Vector& v, double) { return Vector(v); });
    Vector u0(2);
    u0 << 0.3, -1.7;
    for (const char* name : {"bdf1", "bdf2", "bdf3", "dirk33", "backward_euler"}) {
        CAPTURE(name);
        TimeIntegrator ti(dae, TimeScheme::parse(name), 0.05);
        ti.initialize(0.0, u0, Vector::Zero(2));
        for (int i = 0; i < 6; ++i)
            ti.step(true);
        CHECK(ti.u() == u0);
        CHECK(ti.v() == Vector::Zero(2));
    }
}

TEST_CASE("polynomial solutions are reproduced")
{
    SUBCASE("DIRK(3,3) with linear forcing")
    {
        DenseDae dae(
            Matrix::Identity(1, 1), 1, [](const Vector&, const Vector&, double t) { return scalar(-2.0 * t); },
            [](const Vector& u, const Vector& v, double) { return Vector(v - u); });
        TimeIntegrator ti(dae, TimeScheme::parse("dirk33"), 0.1);
        ti.initialize(0.0, scalar(0.0), scalar(0.0));
        for (int i = 0; i < 10; ++i) {
            ti.step(true);
            CHECK(std::abs(ti.u()(0) - ti.time() * ti.time()) < 1e-12);
            CHECK(std::abs(ti.v()(0) - ti.time() * ti.time()) < 1e-12);
        }
    }
    SUBCASE("BDF from exact history")
    {
        for (int s = 1; s <= 3; ++s) {
            CAPTURE(s);
            const BdfScheme scheme = make_bdf(s);
            CHECK(std::abs(scheme.a.sum()) < 1e-15);
            DenseDae dae(
                Matrix::Identity(1, 1), 1,
                [s](const Vector&, const Vector&, double t) { return scalar(-s * std::pow(t, s - 1)); },
                [](const Vector& u, const Vector& v, double) { return Vector(v - u); });
            const double dt = 0.2, t0 = 0.3;
            std::vector<Vector> hist;
            for (int i = 0; i < s; ++i)
                hist.push_back(scalar(std::pow(t0 + i * dt, s)));
            const double t = t0 + s * dt;
            const auto res = bdf_step(dae, hist, scalar(0.0), scheme, dt, t);
            CHECK(std::abs(res.u(0) - std::pow(t, s)) < 1e-12);
        }
    }
}

TEST_CASE("DIRK(3,3) tableau")
{
    const double g = dirk33_gamma();
    CHECK(g > 1.0 / 6.0);
    CHECK(g < 0.5);
    CHECK(std::abs(((g - 3.0) * g + 1.5) * g - 1.0 / 6.0) < 1e-14);
    CHECK(std::abs(g - 0.435866521508459) < 1e-14);

    const ButcherTableau t = make_dirk33();
    REQUIRE(t.stages == 3);
    CHECK(std::abs(t.b.sum() - 1.0) < 1e-12);
    CHECK(std::abs(t.b.dot(t.c) - 0.5) < 1e-12);
    CHECK(std::abs(t.b.dot(t.c.cwiseProduct(t.c)) - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(t.b.dot(t.a * t.c) - 1.0 / 6.0) < 1e-12);
    CHECK((t.d * t.a - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((t.a * t.d - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((t.e - t.d.transpose() * t.b).norm() < 1e-15);
    for (int i = 0; i < 3; ++i)
        CHECK(t.a(i, i) == g);

    double worst = 0.0;
    for (int k = -2000; k <= 2000; ++k)
        worst = std::max(worst, std::abs(stability_function(t, {0.0, k * 0.05})));
    CHECK(worst <= 1.0 + 1e-14);
    CHECK(std::abs(stability_function(t, -1e8)) < 1e-6);
}

TEST_CASE("trace post-processing leaves the DIRK update unchanged")
{
    auto f = [](const Vector& u, const Vector& v, double t) {
        Vector r(2);
        r << u(0) * u(0) * u(0) + v(0) - std::cos(t), 0.5 * u(1) - u(0) * v(0);
        return r;
    };
    auto g = [](const Vector& u, const Vector& v, double) { return scalar(v(0) - std::sin(u(0) + u(1))); };
    Matrix m(2, 2);
    m << 1.0, 0.2, 0.2, 2.0;
    Vector u0(2);
    u0 << 0.4, -0.1;
    DenseDae with(m, 1, f, g), without(m, 1, f, g);
    Predictor pw(1), po(1);
    TimeIntegrator a(with, TimeScheme::parse("dirk33"), 0.05, {&pw});
    TimeIntegrator b(without, TimeScheme::parse("dirk33"), 0.05, {&po});
    a.initialize(0.0, u0, scalar(std::sin(0.3)));
    b.initialize(0.0, u0, scalar(std::sin(0.3)));
    for (int i = 0; i < 8; ++i) {
        a.step(true);
        b.step(false);
        CHECK(a.u() == b.u());
        CHECK(a.v_current());
        CHECK_FALSE(b.v_current());
        CHECK(std::abs(a.v()(0) - std::sin(a.u().sum())) < 1e-12);
    }
    CHECK(with.constraint_solves() == 8);
    CHECK(without.constraint_solves() == 0);
}

TEST_CASE("stage failures are reported with the stage index")
{
    const double dt = 0.1;
    const double threshold = 0.6 * dt;
    DenseDae dae(
        Matrix::Identity(1, 1), 1, [](const Vector& u, const Vector&, double) { return Vector(u); },
        [threshold](const Vector&, const Vector& v, double t) {
            return scalar(v(0) * v(0) + (t > threshold ? 1.0 : -1.0));
        },
        {1e-12, 1e-14, 8});
    try {
        dirk_step(dae, scalar(1.0), scalar(1.0), make_dirk33(), dt, 0.0);
        FAIL("expected a step failure");
    } catch (const StepFailure& e) {
        CHECK(e.stage() == 1);
        CHECK_FALSE(e.report().converged);
        CHECK(e.report().residuals.size() == 9);
    }
    CHECK_THROWS_AS(bdf_step(dae, {scalar(1.0)}, scalar(1.0), make_bdf(1), dt, dt), StepFailure);
}

TEST_CASE("invalid schemes are rejected")
{
    CHECK_THROWS_AS(make_bdf(0), ConfigError);
    CHECK_THROWS_AS(make_bdf(4), ConfigError);
    CHECK_THROWS_AS(TimeScheme::parse("rk4"), ConfigError);
    Matrix upper = Matrix::Identity(2, 2);
    upper(0, 1) = 0.5;
    CHECK_THROWS_AS(make_tableau(upper, Vector::Ones(2)), ConfigError);
    Matrix singular = Matrix::Identity(2, 2);
    singular(1, 1) = 0.0;
    CHECK_THROWS_AS(make_tableau(singular, Vector::Ones(2)), ConfigError);
    DenseDae dae = decay();
    CHECK_THROWS_AS(TimeIntegrator(dae, TimeScheme::parse("bdf2"), 0.0), ConfigError);
}

TEST_CASE("predictor extrapolation")
{
    Predictor none(0);
    Vector u = scalar(5.0), v = scalar(6.0);
    none.predict(1.0, u, v);
    CHECK(u(0) == 5.0);

    none.record(0.0, scalar(1.0), scalar(2.0));
    none.record(0.1, scalar(3.0), scalar(4.0));
    none.predict(0.2, u, v);
    CHECK(u(0) == 3.0);
    CHECK(v(0) == 4.0);

    Predictor constant(2);
    for (int i = 0; i < 4; ++i)
        constant.record(0.1 * i, scalar(7.0), scalar(-1.0));
    constant.predict(0.4, u, v);
    CHECK(std::abs(u(0) - 7.0) < 1e-14);
    CHECK(std::abs(v(0) + 1.0) < 1e-14);

    auto linear_error = [](double dt) {
        Predictor p(1);
        for (int i = 0; i < 3; ++i)
            p.record(i * dt, scalar(std::sin(i * dt)), scalar(std::cos(i * dt)));
        Vector u, v;
        p.predict(3 * dt, u, v);
        return std::abs(u(0) - std::sin(3 * dt)) + std::abs(v(0) - std::cos(3 * dt));
    };
    const double ratio = linear_error(0.02) / linear_error(0.01);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}
