#include "hdgwave/mesh/geometry.hpp"
#include "hdgwave/spaces/element_basis.hpp"
#include "hdgwave/spaces/fields.hpp"
#include "hdgwave/spaces/polynomial.hpp"
#include "hdgwave/spaces/trace_space.hpp"

#include "test_meshes.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

using namespace hdgwave;
using testing::box;

namespace {

// distinct physical locations of face nodes, optionally merged across faces
std::array<long long, 3> rounded(const Point& x)
{
    return {std::llround(x[0] * 1e9), std::llround(x[1] * 1e9), std::llround(x[2] * 1e9)};
}

}

TEST_CASE("gauss rules integrate polynomials exactly")
{
    for (int n = 1; n <= 8; ++n) {
        const Rule1d r = gauss_legendre(n);
        for (int m = 0; m <= 2 * n - 1; ++m) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += r.weights[i] * std::pow(r.points[i], m);
            const double exact = m % 2 == 1 ? 0.0 : 2.0 / (m + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
    }
}

TEST_CASE("lobatto nodes")
{
    const auto x3 = gauss_lobatto_nodes(3);
    CHECK(x3[1] == doctest::Approx(0.0));
    const auto x4 = gauss_lobatto_nodes(4);
    CHECK(std::abs(x4[1] + std::sqrt(0.2)) < 1e-15);
    CHECK(std::abs(x4[2] - std::sqrt(0.2)) < 1e-15);
    const auto x5 = gauss_lobatto_nodes(5);
    CHECK(std::abs(x5[3] - std::sqrt(3.0 / 7.0)) < 1e-15);
}

TEST_CASE("basis sizes, nodal property, quadrature")
{
    const ElementBasis b(3, 3);
    CHECK(b.num_nodes() == 64);
    CHECK(b.quad_points_per_axis() == 5);
    CHECK(b.num_face_nodes() == 16);
    CHECK_THROWS_AS(ElementBasis(3, -1), std::invalid_argument);

    for (int i = 0; i < b.num_nodes(); ++i) {
        const auto row = b.evaluate(b.nodes()[i]);
        for (int j = 0; j < b.num_nodes(); ++j)
            CHECK(std::abs(row[j] - (i == j ? 1.0 : 0.0)) < 1e-13);
    }

    double s = 0.0;
    for (int q = 0; q < b.num_quad(); ++q) {
        const Point& x = b.rule().points[q];
        s += b.rule().weights[q] * x[0] * x[0] * x[1] * x[1];
    }
    CHECK(std::abs(s - 8.0 / 9.0) < 1e-14);
}

TEST_CASE("gradients sum to zero")
{
    for (int k = 1; k <= 4; ++k)
        for (int dim = 2; dim <= 3; ++dim) {
            const ElementBasis b(dim, k);
            for (const Point& x : b.nodes()) {
                const Matrix g = b.evaluate_gradient(x);
                CHECK(g.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
            }
        }
}

TEST_CASE("gradients match finite differences")
{
    const ElementBasis b(3, 3);
    const Point x(0.17, -0.33, 0.61);
    const Matrix g = b.evaluate_gradient(x);
    const double eps = 1e-6;
    for (int r = 0; r < 3; ++r) {
        Point xp = x, xm = x;
        xp[r] += eps;
        xm[r] -= eps;
        const Eigen::RowVectorXd fd = (b.evaluate(xp) - b.evaluate(xm)) / (2 * eps);
        CHECK((fd - g.row(r)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("face restriction of the volume basis")
{
    const ElementBasis b(3, 2);
    for (int f = 0; f < 6; ++f) {
        const Matrix& fv = b.face_values(f);
        const auto& nodes = b.face_volume_nodes(f);
        // only face nodes are nonzero on the face, and they restrict to the trace basis
        Matrix restricted = Matrix::Zero(fv.rows(), b.num_face_nodes());
        for (int j = 0; j < b.num_face_nodes(); ++j)
            restricted.col(j) = fv.col(nodes[j]);
        CHECK((restricted - b.trace_values()).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(std::abs(fv.cwiseAbs().sum() - restricted.cwiseAbs().sum()) < 1e-12);
    }
}

TEST_CASE("trace dof counts")
{
    const Mesh m = box({1, 1, 1}, {2, 2, 1});
    const TraceSpace hdg(m, 1, 3, TraceVariant::hdg);
    CHECK(hdg.num_dofs() == 240);
    CHECK(hdg.block_size() == 12);

    for (int k = 1; k <= 3; ++k) {
        const TraceSpace h(m, k, 3, TraceVariant::hdg);
        const TraceSpace i(m, k, 3, TraceVariant::iedg);
        const TraceSpace e(m, k, 3, TraceVariant::edg);
        CHECK(h.num_dofs() > i.num_dofs());
        CHECK(i.num_dofs() > e.num_dofs());
        CHECK(i.globally_coupled_dofs() < e.num_dofs());
    }

    const Mesh one = box({1, 1, 1}, {1, 1, 1});
    for (int k = 0; k <= 3; ++k) {
        const TraceSpace h(one, k, 2, TraceVariant::hdg);
        const TraceSpace i(one, k, 2, TraceVariant::iedg);
        CHECK(h.num_dofs() == i.num_dofs());
    }
    // k = 0 has no shared nodes at all
    const TraceSpace h0(m, 0, 1, TraceVariant::hdg);
    const TraceSpace e0(m, 0, 1, TraceVariant::edg);
    CHECK(h0.num_dofs() == e0.num_dofs());
}

TEST_CASE("continuous trace counts match distinct node locations")
{
    const Mesh m = box({1, 1, 1}, {3, 2, 2});
    const GeometricMap map(m);
    for (int k = 1; k <= 3; ++k) {
        const ElementBasis b(3, k);
        std::set<std::array<long long, 3>> all, interior;
        Index boundary_nodes = 0;
        for (Index f = 0; f < m.num_faces(); ++f) {
            const FaceSide& s = m.face(f).left;
            for (int j = 0; j < b.num_face_nodes(); ++j) {
                const Point x = map.point(s.element, b.nodes()[b.face_volume_nodes(s.local_face)[j]]);
                all.insert(rounded(x));
                if (m.face(f).is_boundary())
                    ++boundary_nodes;
                else
                    interior.insert(rounded(x));
            }
        }
        const TraceSpace e(m, k, 2, TraceVariant::edg);
        const TraceSpace i(m, k, 2, TraceVariant::iedg);
        CHECK(e.num_dofs() == 2 * static_cast<Index>(all.size()));
        CHECK(i.num_dofs() == 2 * static_cast<Index>(interior.size() + boundary_nodes));
        CHECK(i.globally_coupled_dofs() == 2 * static_cast<Index>(interior.size()));
    }
}

TEST_CASE("element trace dofs agree on physical location")
{
    const Mesh m = testing::scrambled_curved_cube(3, 2, 17);
    const GeometricMap map(m);
    for (auto variant : {TraceVariant::hdg, TraceVariant::edg, TraceVariant::iedg}) {
        const int k = 2;
        const ElementBasis b(3, k);
        const TraceSpace t(m, k, 2, variant);
        std::map<Index, Point> seen;
        for (Index e = 0; e < m.num_elements(); ++e) {
            const auto dofs = t.element_dofs(e);
            for (int lf = 0; lf < 6; ++lf)
                for (int c = 0; c < 2; ++c)
                    for (int j = 0; j < b.num_face_nodes(); ++j) {
                        const Index d = dofs[(lf * 2 + c) * b.num_face_nodes() + j];
                        const Point x = map.point(e, b.nodes()[b.face_volume_nodes(lf)[j]]);
                        auto [it, fresh] = seen.emplace(d, x);
                        if (!fresh)
                            CHECK((it->second - x).norm() < 1e-12);
                        if (variant != TraceVariant::hdg)
                            CHECK(d % 2 == c);
                    }
        }
        CHECK(static_cast<Index>(seen.size()) == t.num_dofs());
    }
}

TEST_CASE("tangential trace frame")
{
    const Mesh m = box({1, 1, 1}, {2, 2, 1});
    CHECK_THROWS_AS(TraceSpace(m, 1, 2, TraceVariant::maxwell_tangential), std::invalid_argument);
    const TraceSpace t(m, 1, 3, TraceVariant::maxwell_tangential);
    CHECK(t.stored_components() == 2);
    CHECK(t.num_dofs() == 20 * 4 * 2);

    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        Point n(g(rng), g(rng), g(rng));
        n.normalize();
        const auto [t1, t2] = tangent_frame(n);
        CHECK(std::abs(t1.norm() - 1.0) < 1e-14);
        CHECK(std::abs(t2.norm() - 1.0) < 1e-14);
        CHECK(std::abs(t1.dot(t2)) < 1e-14);
        const Point mu = g(rng) * t1 + g(rng) * t2;
        CHECK(std::abs(mu.dot(n)) < 1e-14);
    }
    const auto [a, b] = tangent_frame(Point(0, 0, 1));
    CHECK((a - Point(1, 0, 0)).norm() == 0.0);
    CHECK((b - Point(0, 1, 0)).norm() == 0.0);
    // rounding noise in an axis-aligned normal does not change the frame
    for (double noise : {1e-16, -1e-16, 3e-15}) {
        const auto [c, d] = tangent_frame(Point(1.0, noise, -noise));
        CHECK(tangent_axis(Point(1.0, noise, -noise)) == 1);
        CHECK((c - Point(0, 1, 0)).norm() < 1e-14);
        CHECK((d - Point(0, 0, 1)).norm() < 1e-14);
    }
}

TEST_CASE("interpolation reproduces polynomials")
{
    const Mesh m = box({1, 2, 1}, {2, 1, 3});
    const GeometricMap map(m);
    const int k = 2;
    const ElementBasis b(3, k);
    auto poly = [](const Point& x) {
        Vector v(2);
        v << 1 + x[0] * x[1] - x[2] * x[2], x[0] * x[0] * x[1] * x[2];
        return v;
    };
    for (auto kind : {Projection::nodal, Projection::l2}) {
        const Vector u = interpolate(map, b, 2, poly, kind);
        CHECK(l2_error(map, b, {2 * b.num_nodes(), 0, 2}, u, poly) < 1e-12);
    }
}

TEST_CASE("interpolation error decays with order k+1")
{
    const int k = 2;
    const ElementBasis b(3, k);
    auto f = [](const Point& x) {
        Vector v(1);
        v[0] = std::sin(std::numbers::pi * x[0]);
        return v;
    };
    double prev = 0.0;
    for (int n : {2, 4, 8}) {
        const Mesh m = box({1, 1, 1}, {n, 1, 1});
        const GeometricMap map(m);
        const Vector u = interpolate(map, b, 1, f, Projection::l2);
        const double err = l2_error(map, b, {b.num_nodes(), 0, 1}, u, f);
        if (prev > 0.0) {
            CHECK(prev / err > 8.0 * 0.85);
            CHECK(prev / err < 8.0 * 1.15);
        }
        prev = err;
    }
}
