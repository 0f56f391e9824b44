#include "hdgwave/elastodyn/plate_case.hpp"

#include <cmath>
#include <numbers>

namespace hdgwave {

namespace {

constexpr double pi = std::numbers::pi;

}

Point PlateCase::displacement(const Point& x, double t) const
{
    return {0.0, 0.0, amplitude * std::sin(pi * t) * std::sin(pi * x(0)) * std::sin(pi * x(1))};
}

Point PlateCase::velocity(const Point& x, double t) const
{
    return {0.0, 0.0, amplitude * pi * std::cos(pi * t) * std::sin(pi * x(0)) * std::sin(pi * x(1))};
}

Point PlateCase::acceleration(const Point& x, double t) const
{
    return {0.0, 0.0, -amplitude * pi * pi * std::sin(pi * t) * std::sin(pi * x(0)) * std::sin(pi * x(1))};
}

Tensor PlateCase::gradient(const Point& x, double t) const
{
    const double a = amplitude * pi * std::sin(pi * t);
    Tensor f = Tensor::Identity();
    f(2, 0) = a * std::cos(pi * x(0)) * std::sin(pi * x(1));
    f(2, 1) = a * std::sin(pi * x(0)) * std::cos(pi * x(1));
    return f;
}

std::array<Tensor, 3> PlateCase::gradient_derivatives(const Point& x, double t) const
{
    const double a = amplitude * pi * pi * std::sin(pi * t);
    const double sx = std::sin(pi * x(0)), cx = std::cos(pi * x(0));
    const double sy = std::sin(pi * x(1)), cy = std::cos(pi * x(1));
    std::array<Tensor, 3> d{Tensor::Zero(), Tensor::Zero(), Tensor::Zero()};
    d[0](2, 0) = -a * sx * sy;
    d[0](2, 1) = a * cx * cy;
    d[1](2, 0) = a * cx * cy;
    d[1](2, 1) = -a * sx * sy;
    return d;
}

Tensor PlateCase::stress(const Point& x, double t) const
{
    const Tensor f = gradient(x, t);
    return nonlinear ? svk_stress(f, material).first : cauchy_stress(f, material);
}

Point PlateCase::stress_divergence(const Point& x, double t) const
{
    const Tensor f = gradient(x, t);
    const Tangent tan = nonlinear ? svk_tangent(f, material) : linear_tangent(material);
    const auto df = gradient_derivatives(x, t);
    Point div = Point::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    div(i) += tan(3 * i + j, 3 * k + l) * df[j](k, l);
    return div;
}

Point PlateCase::body_force(const Point& x, double t) const
{
    return material.rho * acceleration(x, t) - stress_divergence(x, t);
}

Point PlateCase::traction(const Point& x, const Point& normal, double t) const { return stress(x, t) * normal; }

ElastoData PlateCase::data() const
{
    ElastoData d;
    for (int tag = 0; tag < 4; ++tag)
        d.boundary[tag] = BoundaryKind::dirichlet;
    d.boundary[4] = d.boundary[5] = BoundaryKind::neumann;
    const PlateCase self = *this;
    d.body_force = [self](const Point& x, double t) { return self.body_force(x, t); };
    d.velocity = [self](const Point& x, double t) { return self.velocity(x, t); };
    d.traction = [self](const Point& x, const Point& n, double t) { return self.traction(x, n, t); };
    return d;
}

int PlateCase::cells(double h)
{
    if (!(h > 0.0) || h > 1.0)
        throw ConfigError("plate mesh size must lie in (0, 1]");
    const int n = static_cast<int>(std::lround(1.0 / h));
    if (std::abs(n * h - 1.0) > 1e-2)
        throw ConfigError("plate mesh size must be the reciprocal of an integer");
    return n;
}

Mesh PlateCase::mesh(double h, int geometric_degree) const
{
    const int n = cells(h);
    const double ext[3] = {1.0, 1.0, thickness};
    const int c[3] = {n, n, 1};
    return build_structured_box(ext, c, geometric_degree);
}

}
