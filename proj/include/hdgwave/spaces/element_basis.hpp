#pragma once

#include "hdgwave/common.hpp"
#include "hdgwave/spaces/polynomial.hpp"

#include <array>
#include <vector>

namespace hdgwave {

/// Tensor-product Gauss rule on [-1,1]^dim (x index fastest).
struct TensorRule {
    int dim = 0;
    std::vector<Point> points;
    std::vector<double> weights;
};

TensorRule tensor_gauss_rule(int dim, int points_per_axis);

/// Reference parameter of a point on local face `face` of the reference
/// cube, given the face parameters (s, t) in [-1,1]^(dim-1).
Point face_to_volume(int dim, int face, double s, double t);

/// Nodal tensor-product Lagrange basis on Gauss-Lobatto nodes of the
/// reference square/cube, together with Gauss quadrature on the volume and on
/// each face. Local faces are numbered 2*axis + side, side 0 at xi=-1.
class ElementBasis {
public:
    ElementBasis(int dim, int degree, int quad_points = -1);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int quad_points_per_axis() const { return nq1_; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_quad() const { return static_cast<int>(rule_.points.size()); }
    int num_faces() const { return 2 * dim_; }
    int num_face_nodes() const { return nfn_; }
    int num_face_quad() const { return static_cast<int>(face_rule_.points.size()); }

    const std::vector<double>& nodes_1d() const { return lagrange_.nodes(); }
    const std::vector<Point>& nodes() const { return nodes_; }
    const TensorRule& rule() const { return rule_; }
    /// Face rule in face parameters (s, t); z component unused.
    const TensorRule& face_rule() const { return face_rule_; }

    /// num_quad x num_nodes
    const Matrix& values() const { return values_; }
    /// reference derivative d/dxi_r, num_quad x num_nodes
    const Matrix& gradient(int r) const { return grads_[r]; }
    /// volume basis at the quadrature points of local face f, num_face_quad x num_nodes
    const Matrix& face_values(int f) const { return face_values_[f]; }
    /// reference derivatives of the volume basis at face quadrature points
    const Matrix& face_gradient(int f, int r) const { return face_grads_[f][r]; }
    /// face Lagrange basis (local face parametrisation), num_face_quad x num_face_nodes
    const Matrix& trace_values() const { return trace_values_; }
    /// volume nodes lying on face f, in local face node order
    const std::vector<int>& face_volume_nodes(int f) const { return face_nodes_[f]; }

    Eigen::RowVectorXd evaluate(const Point& xi) const;
    /// dim x num_nodes
    Matrix evaluate_gradient(const Point& xi) const;
    Eigen::RowVectorXd evaluate_trace(double s, double t) const;

private:
    int dim_;
    int degree_;
    int nq1_;
    int nfn_;
    Lagrange1d lagrange_;
    std::vector<Point> nodes_;
    TensorRule rule_;
    TensorRule face_rule_;
    Matrix values_;
    std::array<Matrix, 3> grads_;
    std::vector<Matrix> face_values_;
    std::vector<std::array<Matrix, 3>> face_grads_;
    Matrix trace_values_;
    std::vector<std::vector<int>> face_nodes_;
};

}
