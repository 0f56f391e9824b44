#pragma once

#include "hdgwave/mesh/geometry.hpp"
#include "hdgwave/spaces/element_basis.hpp"
#include "hdgwave/spaces/trace_space.hpp"

#include <vector>

namespace hdgwave {

/// One local face of an element with its quadrature data.
struct FaceContext {
    int local_face = 0;
    Index face = -1;
    bool boundary = false;
    int tag = -1;
    /// the element is the face's left side (owner of the reference normal)
    bool left = true;
    /// quadrature weight times surface measure
    Vector wdet;
    /// outward unit normal, 3 x num_face_quad
    Matrix normal;
    /// physical points, 3 x num_face_quad
    Matrix points;
    /// physical direction of each stored trace component, 3 x num_face_quad
    std::vector<Matrix> directions;
};

/// Quadrature data of one element in physical space.
struct ElementContext {
    ElementContext(const GeometricMap& map, const ElementBasis& basis, const TraceSpace& trace, Index element);

    Index element;
    const ElementBasis* basis;
    int num_nodes;
    int num_quad;
    int num_face_nodes;
    int num_face_quad;
    int trace_components;

    /// quadrature weight times |det J|
    Vector wdet;
    /// physical points, 3 x num_quad
    Matrix points;
    /// physical derivatives d/dx_d of the basis, num_quad x num_nodes
    std::array<Matrix, 3> grad;
    std::vector<FaceContext> faces;

    const Matrix& values() const { return basis->values(); }
    const Matrix& face_values(int f) const { return basis->face_values(f); }
    const Matrix& trace_values() const { return basis->trace_values(); }
    /// offset of local face f, stored component s in the element trace vector
    Index trace_offset(int f, int s) const { return (static_cast<Index>(f) * trace_components + s) * num_face_nodes; }
    Index trace_size() const { return static_cast<Index>(faces.size()) * trace_components * num_face_nodes; }

    /// int_K phi_i phi_j
    Matrix mass() const;
    /// Physical trace at the face quadrature points (3 x num_face_quad) from
    /// element trace coefficients.
    Matrix trace_at_quad(int f, const Vector& trace) const;
};

}
