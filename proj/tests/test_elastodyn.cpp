#include "doctest.h"

#include "hdgwave/dae/integrators.hpp"
#include "hdgwave/elastodyn/monitors.hpp"
#include "hdgwave/elastodyn/plate_case.hpp"
#include "test_meshes.hpp"
#include "test_models.hpp"

#include <numbers>
#include <random>

using namespace hdgwave;
using namespace hdgwave::testing;

namespace {

const ElasticMaterial mat{1.5, 1.0, 1.0};

Tensor random_tensor(std::mt19937& gen, double scale)
{
    std::uniform_real_distribution<double> dist(-scale, scale);
    Tensor t;
    for (int c = 0; c < 9; ++c)
        t(c / 3, c % 3) = dist(gen);
    return t;
}

Tensor random_rotation(std::mt19937& gen)
{
    const Eigen::HouseholderQR<Tensor> qr(random_tensor(gen, 1.0));
    Tensor q = qr.householderQ();
    if (q.determinant() < 0)
        q.col(0) *= -1.0;
    return q;
}

/// sixth-order central difference of fn(h) at h = 0
template <class Fn>
auto central6(Fn&& fn, double step)
{
    using T = decltype(fn(0.0));
    const T out = (45.0 * (fn(step) - fn(-step)) - 9.0 * (fn(2 * step) - fn(-2 * step)) +
                   (fn(3 * step) - fn(-3 * step))) / (60.0 * step);
    return out;
}

}

TEST_CASE("Cauchy stress examples")
{
    CHECK(cauchy_stress(Tensor::Identity(), mat).norm() == 0.0);
    Tensor shear = Tensor::Identity();
    shear(0, 1) = 0.3;
    Tensor expected = Tensor::Zero();
    expected(0, 1) = expected(1, 0) = 0.3;
    CHECK((cauchy_stress(shear, mat) - expected).norm() < 1e-15);
    const Tensor stretch = 1.01 * Tensor::Identity();
    CHECK((cauchy_stress(stretch, mat) - 0.065 * Tensor::Identity()).norm() < 1e-14);
}

TEST_CASE("linear stress is affine")
{
    std::mt19937 gen(1);
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor f1 = random_tensor(gen, 2.0), f2 = random_tensor(gen, 2.0);
        const Tensor lhs = cauchy_stress(f1 + f2, mat) + cauchy_stress(Tensor::Zero(), mat);
        const Tensor rhs = cauchy_stress(f1, mat) + cauchy_stress(f2, mat);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("SVK stress examples")
{
    const SvkStress s0 = svk_stress(Tensor::Identity(), mat);
    CHECK(s0.strain.norm() == 0.0);
    CHECK(s0.second.norm() == 0.0);
    CHECK(s0.first.norm() == 0.0);

    std::mt19937 gen(2);
    Tensor g = random_tensor(gen, 1.0);
    g = 0.5 * (g + g.transpose()).eval();
    const double eps = 1e-4;
    const SvkStress s = svk_stress(Tensor::Identity() + eps * g, mat);
    const Tensor lin = mat.lambda * eps * g.trace() * Tensor::Identity() + 2.0 * mat.mu * eps * g;
    CHECK((s.second - lin).norm() < 1e-3 * lin.norm());
}

TEST_CASE("SVK stress is the derivative of the energy")
{
    std::mt19937 gen(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Tensor f = Tensor::Identity() + random_tensor(gen, 0.4);
        Tensor fd;
        for (int c = 0; c < 9; ++c) {
            auto psi = [&](double h) {
                Tensor g = f;
                g(c / 3, c % 3) += h;
                return svk_energy_density(g, mat);
            };
            fd(c / 3, c % 3) = central6(psi, 1e-3);
        }
        const Tensor p = svk_stress(f, mat).first;
        CHECK((fd - p).norm() < 1e-6 * p.norm());
    }
}

TEST_CASE("SVK tangent matches finite differences")
{
    std::mt19937 gen(4);
    for (int trial = 0; trial < 5; ++trial) {
        const Tensor f = Tensor::Identity() + random_tensor(gen, 0.4);
        Tangent fd;
        for (int kl = 0; kl < 9; ++kl) {
            auto p = [&](double h) {
                Tensor g = f;
                g(kl / 3, kl % 3) += h;
                return Tensor(svk_stress(g, mat).first);
            };
            const Tensor col = central6(p, 1e-3);
            for (int ij = 0; ij < 9; ++ij)
                fd(ij, kl) = col(ij / 3, ij % 3);
        }
        const Tangent t = svk_tangent(f, mat);
        CHECK((fd - t).norm() < 1e-6 * t.norm());
    }
    CHECK((svk_tangent(Tensor::Identity(), mat) - linear_tangent(mat)).norm() < 1e-15);
}

TEST_CASE("SVK second stress is frame indifferent")
{
    std::mt19937 gen(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor f = Tensor::Identity() + random_tensor(gen, 0.5);
        const Tensor q = random_rotation(gen);
        const Tensor s = svk_stress(f, mat).second, sq = svk_stress(q * f, mat).second;
        CHECK((s - sq).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("material and stabilisation")
{
    CHECK(mat.cp() > mat.cs());
    CHECK(mat.cp() == doctest::Approx(std::sqrt(3.5)));
    CHECK(Stabilization{}.value(mat) == doctest::Approx(2.0));
    CHECK(Stabilization{ImpedanceMode::compressional, 1.0}.value(mat) == doctest::Approx(std::sqrt(3.5)));
    CHECK_THROWS_AS((ElasticMaterial{1.0, 0.0, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ElasticMaterial{1.0, 1.0, -1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((ElasticMaterial{-1.0, 1.0, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS(LinearElastodynamics(mat, {ImpedanceMode::shear, 0.0}, all_dirichlet()), ConfigError);
}

TEST_CASE("plate exact solution")
{
    const double pi = std::numbers::pi;
    PlateCase lin{mat, false}, svk{mat, true};
    std::mt19937 gen(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const Point x(unit(gen), unit(gen), 0.01 * unit(gen));
        CHECK((lin.gradient(x, 0.0) - Tensor::Identity()).norm() == 0.0);
        CHECK((lin.velocity(x, 0.0) - Point(0, 0, 0.4 * pi * std::sin(pi * x(0)) * std::sin(pi * x(1)))).norm() <
              1e-15);
        const double t = 2.0 * unit(gen);
        // v = d phi / dt, F = I + grad u, a = dv/dt
        CHECK((central6([&](double h) { return Point(lin.displacement(x, t + h)); }, 1e-3) - lin.velocity(x, t))
                  .norm() < 1e-10);
        CHECK((central6([&](double h) { return Point(lin.velocity(x, t + h)); }, 1e-3) - lin.acceleration(x, t))
                  .norm() < 1e-10);
        for (int j = 0; j < 3; ++j) {
            const Point du = central6(
                [&](double h) {
                    Point y = x;
                    y(j) += h;
                    return Point(lin.displacement(y, t));
                },
                1e-3);
            CHECK((du - (lin.gradient(x, t) - Tensor::Identity()).col(j)).norm() < 1e-10);
        }
        // strong form rho dv/dt - div P - f with div P from finite differences
        for (const PlateCase* pc : {&lin, &svk}) {
            Point div = Point::Zero();
            for (int j = 0; j < 3; ++j)
                div += central6(
                    [&](double h) {
                        Point y = x;
                        y(j) += h;
                        return Point(pc->stress(y, t).col(j));
                    },
                    2e-3);
            const Point res = mat.rho * pc->acceleration(x, t) - div - pc->body_force(x, t);
            CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
        }
        const Point n(0, 0, 1);
        CHECK((svk.traction(x, n, t) - svk.stress(x, t) * n).norm() == 0.0);
    }
    CHECK(PlateCase::cells(0.125) == 8);
    CHECK(PlateCase::cells(1.0 / 3.0) == 3);
    CHECK(PlateCase::cells(0.1666) == 6);
    CHECK_THROWS_AS(PlateCase::cells(0.4), ConfigError);
    const Mesh m = lin.mesh(0.25);
    CHECK(m.num_elements() == 16);
}

TEST_CASE("plate data is consistent with the discretisation")
{
    // exact fields projected at t = 0.3 give a small residual that shrinks with h
    PlateCase pc{mat, true};
    double prev = 0.0;
    for (double h : {0.5, 0.25}) {
        const Mesh mesh = pc.mesh(h);
        SvkElastodynamics model(mat, {}, pc.data());
        HdgOptions opt;
        opt.degree = 2;
        HdgSystem sys(mesh, model, opt);
        const double t = 0.3;
        const Vector u = project_elasto_state(sys, [&](const Point& x) { return pc.gradient(x, t); },
                                              [&](const Point& x) { return pc.velocity(x, t); });
        Vector v = Vector::Zero(sys.trace_size());
        sys.solve_constraint(u, t, v);
        Vector h_, g;
        const Vector rhs = [&] {
            Vector dudt = project_elasto_state(
                sys,
                [&](const Point& x) {
                    return Tensor(central6([&](double s) { return Tensor(pc.gradient(x, t + s)); }, 1e-3));
                },
                [&](const Point& x) { return pc.acceleration(x, t); });
            Vector m;
            sys.apply_mass(dudt, m);
            return Vector(-m);
        }();
        sys.residual(0.0, rhs, t, u, v, h_, g);
        const double r = h_.norm();
        if (prev > 0.0)
            CHECK(r < 0.5 * prev);
        prev = r;
    }
}

TEST_CASE("SVK reduces to the linear model at the reference state")
{
    const Mesh mesh = box({1, 1, 0.5}, {2, 1, 1});
    LinearElastodynamics lin(mat, {}, clamped_sides_free_faces());
    SvkElastodynamics svk(mat, {}, clamped_sides_free_faces());
    HdgOptions opt;
    opt.degree = 2;
    HdgSystem a(mesh, lin, opt), b(mesh, svk, opt);
    Vector u = random_elasto_state(a, 1, 0.0);
    u += random_vector(u.size(), 2).cwiseProduct(
        [&] {
            Vector mask = Vector::Zero(u.size());
            for (Index e = 0; e < mesh.num_elements(); ++e)
                mask.segment(e * a.element_size() + a.field_offset(1), 3 * a.basis().num_nodes()).setOnes();
            return mask;
        }());
    const Vector v = random_vector(a.trace_size(), 3);
    Vector ha, ga, hb, gb;
    a.residual(1.0, Vector(), 0.0, u, v, ha, ga);
    b.residual(1.0, Vector(), 0.0, u, v, hb, gb);
    CHECK((ha - hb).norm() < 1e-12 * ha.norm());
    CHECK((ga - gb).norm() < 1e-12 * ga.norm());
    const Matrix ja = a.dense_jacobian(1.0, 0.0, u, v), jb = b.dense_jacobian(1.0, 0.0, u, v);
    CHECK((ja - jb).norm() < 1e-12 * ja.norm());
}

TEST_CASE("energy monitor")
{
    const Mesh mesh = box({1, 1, 0.5}, {2, 2, 1});
    LinearElastodynamics model(mat, {}, all_dirichlet());
    HdgSystem sys(mesh, model, {});
    const Vector zero = random_elasto_state(sys, 1, 0.0);
    CHECK(elasto_energy(sys, model, zero).total() < 1e-30);
    CHECK(jump_dissipation(sys, model, zero, Vector::Zero(sys.trace_size())) == 0.0);
    const Vector u = random_vector(sys.local_size(), 2), v = random_vector(sys.trace_size(), 3);
    CHECK(jump_dissipation(sys, model, u, v) > 0.0);
    const ElastoEnergy en = elasto_energy(sys, model, u);
    CHECK(en.kinetic > 0.0);
    CHECK(en.potential >= 0.0);

    // a uniform velocity and stretch are evaluated exactly
    const Vector w = project_elasto_state(sys, [](const Point&) { return Tensor(1.01 * Tensor::Identity()); },
                                          [](const Point&) { return Point(1.0, 2.0, 0.0); });
    const ElastoEnergy ew = elasto_energy(sys, model, w);
    CHECK(ew.kinetic == doctest::Approx(0.5 * 5.0 * 0.5).epsilon(1e-12));
    CHECK(ew.potential == doctest::Approx(0.5 * 0.065 * 0.03 * 0.5).epsilon(1e-12));
}

namespace {

/// maximum relative energy increase over `steps` steps from random data
double max_energy_growth(const ElastodynamicsModel& model, double amplitude, int steps, double dt, double& decay)
{
    const Mesh mesh = box({1, 1, 0.5}, {2, 2, 1});
    HdgOptions opt;
    opt.degree = 2;
    opt.newton.abs_tol = 1e-13;
    opt.newton.rel_tol = 1e-12;
    opt.gmres.tolerance = 1e-13;
    HdgSystem sys(mesh, model, opt);
    const Vector u0 = random_elasto_state(sys, 7, amplitude);
    Vector v0 = Vector::Zero(sys.trace_size());
    sys.solve_constraint(u0, 0.0, v0);
    TimeIntegrator integ(sys, TimeScheme::parse("dirk33"), dt);
    integ.initialize(0.0, u0, v0);
    double e = elasto_energy(sys, model, u0).total();
    const double e0 = e;
    double growth = -1.0;
    for (int n = 0; n < steps; ++n) {
        integ.step();
        const double en = elasto_energy(sys, model, integ.u()).total();
        growth = std::max(growth, (en - e) / e);
        e = en;
    }
    decay = e / e0;
    return growth;
}

}

TEST_CASE("energy does not grow without data")
{
    double decay = 0.0;
    SUBCASE("linear")
    {
        LinearElastodynamics model(mat, {}, all_dirichlet());
        CHECK(max_energy_growth(model, 0.1, 10, 0.02, decay) <= 1e-8);
        CHECK(decay < 1.0);
    }
    SUBCASE("SVK")
    {
        SvkElastodynamics model(mat, {}, all_dirichlet());
        CHECK(max_energy_growth(model, 0.1, 10, 0.02, decay) <= 1e-8);
        CHECK(decay < 1.0);
    }
}

TEST_CASE("energy rate equals minus the jump dissipation")
{
    const Mesh mesh = box({1, 1, 0.5}, {2, 2, 1});
    SvkElastodynamics model(mat, {}, all_dirichlet());
    HdgOptions opt;
    opt.degree = 2;
    opt.newton.abs_tol = 1e-13;
    opt.gmres.tolerance = 1e-13;
    HdgSystem sys(mesh, model, opt);
    const Vector u0 = random_elasto_state(sys, 9, 0.1);
    Vector v0 = Vector::Zero(sys.trace_size());
    sys.solve_constraint(u0, 0.0, v0);
    const double diss0 = jump_dissipation(sys, model, u0, v0);
    double errs[2];
    int i = 0;
    for (double dt : {1e-3, 5e-4}) {
        TimeIntegrator integ(sys, TimeScheme::parse("dirk33"), dt);
        integ.initialize(0.0, u0, v0);
        integ.step(true);
        const double diss1 = jump_dissipation(sys, model, integ.u(), integ.v());
        const double rate = (elasto_energy(sys, model, integ.u()).total() - elasto_energy(sys, model, u0).total()) / dt;
        errs[i++] = std::abs(rate + 0.5 * (diss0 + diss1)) / diss0;
    }
    CHECK(errs[1] < 1e-3);
    CHECK(errs[1] < 0.5 * errs[0]);
}

TEST_CASE("overlap does not slow down the plate trace solve")
{
    PlateCase pc{mat, false};
    const Mesh mesh = pc.mesh(0.125);
    LinearElastodynamics model(mat, {}, pc.data());
    int iters[2];
    for (int delta : {0, 1}) {
        HdgOptions opt;
        opt.degree = 2;
        opt.ras.subdomains = 4;
        opt.ras.overlap = delta;
        opt.gmres.tolerance = 1e-10;
        HdgSystem sys(mesh, model, opt);
        const Vector u = project_elasto_state(sys, [&](const Point& x) { return pc.gradient(x, 0.2); },
                                              [&](const Point& x) { return pc.velocity(x, 0.2); });
        Vector h, g, du, dv;
        const Vector v = Vector::Zero(sys.trace_size());
        const double alpha = 1.0 / (0.435866521508459 * 0.01);
        sys.residual(alpha, Vector(), 0.2, u, v, h, g);
        const CorrectionReport rep = sys.correction(alpha, 0.2, u, v, h, g, du, dv);
        CHECK(rep.gmres_converged);
        iters[delta] = rep.gmres_iterations;
    }
    MESSAGE("GMRES iterations delta=0: " << iters[0] << ", delta=1: " << iters[1]);
    CHECK(iters[1] <= iters[0]);
}
