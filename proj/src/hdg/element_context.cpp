#include "hdgwave/hdg/element_context.hpp"

namespace hdgwave {

ElementContext::ElementContext(const GeometricMap& map, const ElementBasis& b, const TraceSpace& trace, Index e)
    : element(e), basis(&b), num_nodes(b.num_nodes()), num_quad(b.num_quad()), num_face_nodes(b.num_face_nodes()),
      num_face_quad(b.num_face_quad()), trace_components(trace.stored_components())
{
    const Mesh& mesh = map.mesh();
    if (mesh.dim() != 3)
        throw ConfigError("physics models require a three-dimensional mesh");
    const auto& rule = b.rule();
    wdet.resize(num_quad);
    points.resize(3, num_quad);
    for (auto& g : grad)
        g.resize(num_quad, num_nodes);
    for (int q = 0; q < num_quad; ++q) {
        const Tensor jac = map.jacobian(e, rule.points[q]);
        wdet(q) = rule.weights[q] * std::abs(jac.determinant());
        points.col(q) = map.point(e, rule.points[q]);
        const Tensor jinv = jac.inverse();
        for (int d = 0; d < 3; ++d)
            grad[d].row(q) = jinv(0, d) * b.gradient(0).row(q) + jinv(1, d) * b.gradient(1).row(q) +
                             jinv(2, d) * b.gradient(2).row(q);
    }

    const auto& frule = b.face_rule();
    const bool tangential = trace.variant() == TraceVariant::maxwell_tangential;
    faces.resize(b.num_faces());
    for (int f = 0; f < b.num_faces(); ++f) {
        FaceContext& fc = faces[f];
        fc.local_face = f;
        fc.face = mesh.element_face(e, f);
        const Face& face = mesh.face(fc.face);
        fc.boundary = face.is_boundary();
        fc.tag = face.boundary_tag;
        fc.left = face.left.element == e && face.left.local_face == f;
        const FaceGeometry geo = element_face_geometry(map, e, f, frule.points);
        fc.wdet.resize(num_face_quad);
        fc.normal.resize(3, num_face_quad);
        fc.points.resize(3, num_face_quad);
        fc.directions.assign(trace_components, Matrix::Zero(3, num_face_quad));
        // one reference axis per face, from the normal seen by the left element
        Point mean = Point::Zero();
        for (int q = 0; q < num_face_quad; ++q)
            mean += frule.weights[q] * geo.normals[q];
        const int axis = tangent_axis(fc.left ? mean : Point(-mean));
        for (int q = 0; q < num_face_quad; ++q) {
            fc.wdet(q) = frule.weights[q] * geo.measure[q];
            fc.normal.col(q) = geo.normals[q];
            fc.points.col(q) = geo.points[q];
            if (tangential) {
                const auto [t1, t2] = tangent_frame(fc.left ? geo.normals[q] : Point(-geo.normals[q]), axis);
                fc.directions[0].col(q) = t1;
                fc.directions[1].col(q) = t2;
            } else {
                for (int s = 0; s < trace_components; ++s)
                    fc.directions[s](s, q) = 1.0;
            }
        }
    }
}

Matrix ElementContext::mass() const
{
    const Matrix& phi = basis->values();
    return phi.transpose() * wdet.asDiagonal() * phi;
}

Matrix ElementContext::trace_at_quad(int f, const Vector& trace) const
{
    const FaceContext& fc = faces[f];
    Matrix out = Matrix::Zero(3, num_face_quad);
    for (int s = 0; s < trace_components; ++s) {
        const Vector vals = trace_values() * trace.segment(trace_offset(f, s), num_face_nodes);
        out += fc.directions[s] * vals.asDiagonal();
    }
    return out;
}

}
