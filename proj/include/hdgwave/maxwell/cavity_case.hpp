#pragma once

#include "hdgwave/maxwell/glm_model.hpp"
#include "hdgwave/mesh/mesh.hpp"

namespace hdgwave {

/// Standing wave in the unit cube:
///   e = sin(w t) (sin(w y) sin(w z), sin(w x) sin(w z), sin(w x) sin(w y))
///   h = cos(w t) (sin(w x)(cos(w y) - cos(w z)), ...)
/// The multiplier is zero. The current j = curl h - eps de/dt vanishes for
/// eps = 2; the boundary data reproduces the exact tangential field.
struct CavityCase {
    EmMaterial material;
    GlmParameters glm;
    double omega = 1.0;
    /// interior vertex displacement d sin(pi x) sin(pi y) sin(pi z) (1, -1, 1/2)
    /// applied to the structured mesh; 0 keeps axis-aligned cells
    double distortion = 0.0;

    Point electric(const Point& x, double t) const;
    Point magnetic(const Point& x, double t) const;
    Point electric_curl(const Point& x, double t) const;
    Point magnetic_curl(const Point& x, double t) const;
    Point electric_rate(const Point& x, double t) const;
    Point magnetic_rate(const Point& x, double t) const;
    /// curl h - eps de/dt
    Point current(const Point& x, double t) const;

    /// Throws ConfigError unless mu = 1 (the exact field has no magnetic source)
    /// and |distortion| < 0.1 (cells stay convex).
    void validate() const;
    MaxwellData data() const;
    static int cells(double h);
    Mesh mesh(double h, int geometric_degree = 1) const;
};

}
