#include "hdgwave/spaces/fields.hpp"

#include <cmath>

namespace hdgwave {

Matrix mass_matrix(const GeometricMap& map, const ElementBasis& basis, Index e)
{
    const auto& rule = basis.rule();
    Vector w(basis.num_quad());
    for (int q = 0; q < basis.num_quad(); ++q)
        w[q] = rule.weights[q] * map.jacobian(e, rule.points[q]).determinant();
    return basis.values().transpose() * w.asDiagonal() * basis.values();
}

void interpolate(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout,
                 const FieldFunction& fn, Vector& dofs, Projection kind)
{
    const Index nn = basis.num_nodes();
    const Index ne = map.mesh().num_elements();
    for (Index e = 0; e < ne; ++e) {
        auto slot = [&](int c) { return dofs.segment(e * layout.stride + layout.offset + c * nn, nn); };
        if (kind == Projection::nodal) {
            for (Index i = 0; i < nn; ++i) {
                const Vector v = fn(map.point(e, basis.nodes()[i]));
                for (int c = 0; c < layout.components; ++c)
                    slot(c)[i] = v[c];
            }
        }
        else {
            const auto& rule = basis.rule();
            Matrix rhs = Matrix::Zero(nn, layout.components);
            Vector w(basis.num_quad());
            for (int q = 0; q < basis.num_quad(); ++q) {
                const Tensor j = map.jacobian(e, rule.points[q]);
                w[q] = rule.weights[q] * j.determinant();
                const Vector v = fn(map.point(e, rule.points[q]));
                for (int c = 0; c < layout.components; ++c)
                    rhs.col(c) += w[q] * v[c] * basis.values().row(q).transpose();
            }
            const Matrix m = basis.values().transpose() * w.asDiagonal() * basis.values();
            const Matrix sol = m.llt().solve(rhs);
            for (int c = 0; c < layout.components; ++c)
                slot(c) = sol.col(c);
        }
    }
}

Vector interpolate(const GeometricMap& map, const ElementBasis& basis, int components, const FieldFunction& fn,
                   Projection kind)
{
    const Index stride = static_cast<Index>(components) * basis.num_nodes();
    Vector dofs = Vector::Zero(stride * map.mesh().num_elements());
    interpolate(map, basis, FieldLayout{stride, 0, components}, fn, dofs, kind);
    return dofs;
}

namespace {

double squared_integral(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout,
                        const Vector& dofs, const FieldFunction* exact, int quad_points)
{
    const int q1 = quad_points < 0 ? basis.degree() + 3 : quad_points;
    const ElementBasis eval(basis.dim(), basis.degree(), q1);
    const auto& rule = eval.rule();
    const Index nn = basis.num_nodes();
    double sum = 0.0;
    for (Index e = 0; e < map.mesh().num_elements(); ++e) {
        Matrix coeffs(nn, layout.components);
        for (int c = 0; c < layout.components; ++c)
            coeffs.col(c) = dofs.segment(e * layout.stride + layout.offset + c * nn, nn);
        const Matrix uh = eval.values() * coeffs;
        for (int q = 0; q < eval.num_quad(); ++q) {
            const double w = rule.weights[q] * map.jacobian(e, rule.points[q]).determinant();
            Eigen::RowVectorXd diff = uh.row(q);
            if (exact)
                diff -= (*exact)(map.point(e, rule.points[q])).transpose();
            sum += w * diff.squaredNorm();
        }
    }
    return sum;
}

}

double l2_error(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout, const Vector& dofs,
                const FieldFunction& exact, int quad_points)
{
    return std::sqrt(squared_integral(map, basis, layout, dofs, &exact, quad_points));
}

double l2_norm(const GeometricMap& map, const ElementBasis& basis, const FieldLayout& layout, const Vector& dofs,
               int quad_points)
{
    return std::sqrt(squared_integral(map, basis, layout, dofs, nullptr, quad_points));
}

}
