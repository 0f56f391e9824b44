#pragma once

#include "hdgwave/elastodyn/models.hpp"
#include "hdgwave/mesh/mesh.hpp"

#include <array>

namespace hdgwave {

/// Vibrating plate [0,1]^2 x [0,thickness] with the exact motion
///   x = X + (0, 0, A sin(pi t) sin(pi X) sin(pi Y)).
/// Lateral faces (tags 0-3) are clamped, the faces Z = 0 and Z = thickness
/// (tags 4, 5) carry the exact traction; the body force balances the exact
/// motion for the chosen constitutive law.
struct PlateCase {
    ElasticMaterial material;
    bool nonlinear = false;
    double amplitude = 0.4;
    double thickness = 0.01;

    Point displacement(const Point& x, double t) const;
    Point velocity(const Point& x, double t) const;
    Point acceleration(const Point& x, double t) const;
    Tensor gradient(const Point& x, double t) const;
    /// d F / d X_j
    std::array<Tensor, 3> gradient_derivatives(const Point& x, double t) const;
    /// first Piola-Kirchhoff stress of the exact motion (sigma(F) in the linear case)
    Tensor stress(const Point& x, double t) const;
    Point stress_divergence(const Point& x, double t) const;
    /// f = rho dv/dt - div P
    Point body_force(const Point& x, double t) const;
    Point traction(const Point& x, const Point& normal, double t) const;

    ElastoData data() const;
    /// elements per in-plane axis for mesh size h (1/h rounded; throws
    /// ConfigError if h is not the reciprocal of an integer)
    static int cells(double h);
    Mesh mesh(double h, int geometric_degree = 1) const;
};

}
