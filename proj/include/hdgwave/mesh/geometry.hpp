#pragma once

#include "hdgwave/mesh/mesh.hpp"
#include "hdgwave/spaces/element_basis.hpp"

#include <vector>

namespace hdgwave {

/// Evaluates the isoparametric element maps of a mesh.
class GeometricMap {
public:
    explicit GeometricMap(const Mesh& mesh);

    const Mesh& mesh() const { return *mesh_; }

    Point point(Index e, const Point& xi) const;
    /// dx_i/dxi_j; in 2D the (2,2) entry is 1
    Tensor jacobian(Index e, const Point& xi) const;

private:
    const Mesh* mesh_;
    ElementBasis shape_;
};

struct FaceGeometry {
    std::vector<Point> points;
    std::vector<Point> normals;
    /// surface measure factor dS / dA_ref
    std::vector<double> measure;
};

/// Geometry of local face `local_face` of element e at the given face
/// parameters (in that element's local face parametrisation). Normals point
/// out of element e.
FaceGeometry element_face_geometry(const GeometricMap& map, Index e, int local_face,
                                   const std::vector<Point>& params);

/// Face geometry seen from the left (right_view = false) or right element, at
/// points given in canonical face parameters.
FaceGeometry face_geometry(const GeometricMap& map, Index face, const std::vector<Point>& canonical_params,
                           bool right_view = false);

/// Outward unit normal and surface factor from a Jacobian on local face f.
void face_normal(const Tensor& jac, int dim, int local_face, Point& normal, double& measure);

}
