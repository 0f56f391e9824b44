#include "hdgwave/maxwell/cavity_case.hpp"

#include <cmath>
#include <numbers>

namespace hdgwave {

Point CavityCase::electric(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    return std::sin(w * t) * Point(sy * sz, sx * sz, sx * sy);
}

Point CavityCase::magnetic(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    const double cx = std::cos(w * x(0)), cy = std::cos(w * x(1)), cz = std::cos(w * x(2));
    return std::cos(w * t) * Point(sx * (cy - cz), sy * (cz - cx), sz * (cx - cy));
}

Point CavityCase::electric_curl(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    const double cx = std::cos(w * x(0)), cy = std::cos(w * x(1)), cz = std::cos(w * x(2));
    return w * std::sin(w * t) * Point(sx * (cy - cz), sy * (cz - cx), sz * (cx - cy));
}

Point CavityCase::magnetic_curl(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    return 2.0 * w * std::cos(w * t) * Point(sy * sz, sx * sz, sx * sy);
}

Point CavityCase::electric_rate(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    return w * std::cos(w * t) * Point(sy * sz, sx * sz, sx * sy);
}

Point CavityCase::magnetic_rate(const Point& x, double t) const
{
    const double w = omega;
    const double sx = std::sin(w * x(0)), sy = std::sin(w * x(1)), sz = std::sin(w * x(2));
    const double cx = std::cos(w * x(0)), cy = std::cos(w * x(1)), cz = std::cos(w * x(2));
    return -w * std::sin(w * t) * Point(sx * (cy - cz), sy * (cz - cx), sz * (cx - cy));
}

Point CavityCase::current(const Point& x, double t) const
{
    return magnetic_curl(x, t) - material.epsilon * electric_rate(x, t);
}

void CavityCase::validate() const
{
    material.validate();
    glm.validate();
    if (std::abs(material.mu - 1.0) > 1e-14)
        throw ConfigError("the cavity solution requires unit permeability");
    if (!(omega > 0.0))
        throw ConfigError("cavity frequency must be positive");
    if (!(std::abs(distortion) < 0.1))
        throw ConfigError("cavity mesh distortion must satisfy |d| < 0.1");
}

MaxwellData CavityCase::data() const
{
    validate();
    MaxwellData d;
    const CavityCase self = *this;
    if (std::abs(material.epsilon - 2.0) > 1e-14)
        d.current = [self](const Point& x, double t) { return self.current(x, t); };
    d.incident = [self](const Point& x, double t) { return Point(-self.electric(x, t)); };
    return d;
}

int CavityCase::cells(double h)
{
    if (!(h > 0.0) || h > 1.0)
        throw ConfigError("cavity mesh size must lie in (0, 1]");
    const int n = static_cast<int>(std::lround(1.0 / h));
    if (std::abs(n * h - 1.0) > 1e-2)
        throw ConfigError("cavity mesh size must be the reciprocal of an integer");
    return n;
}

Mesh CavityCase::mesh(double h, int geometric_degree) const
{
    const int n = cells(h);
    const double ext[3] = {1.0, 1.0, 1.0};
    const int c[3] = {n, n, n};
    Mesh box = build_structured_box(ext, c, geometric_degree);
    if (distortion == 0.0)
        return box;
    std::vector<Point> nodes;
    nodes.reserve(box.num_nodes());
    for (Index i = 0; i < box.num_nodes(); ++i) {
        const Point& x = box.node(i);
        const double b = distortion * std::sin(std::numbers::pi * x(0)) * std::sin(std::numbers::pi * x(1)) *
                         std::sin(std::numbers::pi * x(2));
        nodes.push_back(x + b * Point(1.0, -1.0, 0.5));
    }
    std::vector<std::vector<Index>> elements;
    elements.reserve(box.num_elements());
    for (Index e = 0; e < box.num_elements(); ++e)
        elements.push_back(box.element_nodes(e));
    auto tagger = [](const Point&, const Point& n) {
        int axis = 0;
        for (int a = 1; a < 3; ++a)
            if (std::abs(n(a)) > std::abs(n(axis)))
                axis = a;
        return 2 * axis + (n(axis) > 0.0 ? 1 : 0);
    };
    return Mesh(3, geometric_degree, std::move(nodes), std::move(elements), tagger);
}

}
