#include "hdgwave/mesh/geometry.hpp"

#include <cmath>

namespace hdgwave {

GeometricMap::GeometricMap(const Mesh& mesh)
    : mesh_(&mesh), shape_(mesh.dim(), mesh.geometric_degree(), 1)
{
}

Point GeometricMap::point(Index e, const Point& xi) const
{
    const Eigen::RowVectorXd n = shape_.evaluate(xi);
    const auto& nodes = mesh_->element_nodes(e);
    Point x = Point::Zero();
    for (int a = 0; a < n.size(); ++a)
        x += n[a] * mesh_->node(nodes[a]);
    return x;
}

Tensor GeometricMap::jacobian(Index e, const Point& xi) const
{
    const Matrix g = shape_.evaluate_gradient(xi);
    const auto& nodes = mesh_->element_nodes(e);
    Tensor j = Tensor::Zero();
    const int dim = mesh_->dim();
    for (int a = 0; a < g.cols(); ++a) {
        const Point& x = mesh_->node(nodes[a]);
        for (int r = 0; r < dim; ++r)
            for (int i = 0; i < dim; ++i)
                j(i, r) += x[i] * g(r, a);
    }
    if (dim == 2)
        j(2, 2) = 1.0;
    return j;
}

void face_normal(const Tensor& jac, int dim, int local_face, Point& normal, double& measure)
{
    const int axis = local_face / 2;
    const double sign = (local_face % 2 == 0) ? -1.0 : 1.0;
    const Tensor jinv_t = jac.inverse().transpose();
    Point n = jinv_t.col(axis);
    if (dim == 2)
        n[2] = 0.0;
    const double len = n.norm();
    const double det = jac.determinant();
    normal = sign * (det > 0 ? 1.0 : -1.0) * n / len;
    measure = std::abs(det) * len;
}

FaceGeometry element_face_geometry(const GeometricMap& map, Index e, int local_face, const std::vector<Point>& params)
{
    const int dim = map.mesh().dim();
    FaceGeometry g;
    g.points.reserve(params.size());
    g.normals.reserve(params.size());
    g.measure.reserve(params.size());
    for (const Point& st : params) {
        const Point xi = face_to_volume(dim, local_face, st[0], st[1]);
        g.points.push_back(map.point(e, xi));
        Point n;
        double m = 0.0;
        face_normal(map.jacobian(e, xi), dim, local_face, n, m);
        g.normals.push_back(n);
        g.measure.push_back(m);
    }
    return g;
}

FaceGeometry face_geometry(const GeometricMap& map, Index face, const std::vector<Point>& canonical_params, bool right_view)
{
    const Face& f = map.mesh().face(face);
    const FaceSide& side = right_view ? f.right : f.left;
    if (side.element < 0)
        throw std::invalid_argument("face_geometry: boundary face has no right element");
    std::vector<Point> local;
    local.reserve(canonical_params.size());
    for (const Point& c : canonical_params) {
        const auto st = invert_orientation(side.orientation, c[0], c[1]);
        local.emplace_back(st[0], st[1], 0.0);
    }
    return element_face_geometry(map, side.element, side.local_face, local);
}

}
