#pragma once

#include "hdgwave/mesh/geometry.hpp"
#include "hdgwave/spaces/element_basis.hpp"

#include <functional>

namespace hdgwave {

/// Vector-valued function of position, returning `components` values.
using FieldFunction = std::function<Vector(const Point&)>;

/// Location of one field inside an element-blocked coefficient vector: element
/// e owns [e*stride, (e+1)*stride), the field starts at `offset` and stores
/// its components one after another, num_nodes values each.
struct FieldLayout {
    Index stride = 0;
    Index offset = 0;
    int components = 1;
};

enum class Projection { nodal, l2 };

/// Writes the interpolant (or L2 projection) of `fn` into the slots of
/// `layout` inside `dofs`.
void interpolate(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout,
                 const FieldFunction& fn, Vector& dofs, Projection kind = Projection::nodal);

/// Convenience overload for a vector holding only this field.
Vector interpolate(const GeometricMap& map, const ElementBasis& basis, int components, const FieldFunction& fn,
                   Projection kind = Projection::nodal);

/// sqrt(sum_K int_K |u_h - u|^2) with `quad_points` Gauss points per axis
/// (default degree + 3).
double l2_error(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout, const Vector& dofs,
                const FieldFunction& exact, int quad_points = -1);

/// sqrt(sum_K int_K |u_h|^2)
double l2_norm(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout, const Vector& dofs,
               int quad_points = -1);

/// Element mass matrix int_K phi_i phi_j on the basis' own quadrature.
Matrix mass_matrix(const GeometricMap& map, const ElementBasis& basis, Index e);

}
