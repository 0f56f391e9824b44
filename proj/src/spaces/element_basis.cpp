#include "hdgwave/spaces/element_basis.hpp"

#include <stdexcept>

namespace hdgwave {

TensorRule tensor_gauss_rule(int dim, int n)
{
    const Rule1d r = gauss_legendre(n);
    TensorRule t;
    t.dim = dim;
    const int nz = dim > 2 ? n : 1;
    const int ny = dim > 1 ? n : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < n; ++i) {
                Point p = Point::Zero();
                double w = r.weights[i];
                p[0] = r.points[i];
                if (dim > 1) {
                    p[1] = r.points[j];
                    w *= r.weights[j];
                }
                if (dim > 2) {
                    p[2] = r.points[k];
                    w *= r.weights[k];
                }
                t.points.push_back(p);
                t.weights.push_back(w);
            }
    return t;
}

Point face_to_volume(int dim, int face, double s, double t)
{
    const int axis = face / 2;
    Point xi = Point::Zero();
    xi[axis] = (face % 2 == 0) ? -1.0 : 1.0;
    double params[2] = {s, t};
    int used = 0;
    for (int a = 0; a < dim; ++a)
        if (a != axis)
            xi[a] = params[used++];
    return xi;
}

namespace {

std::vector<double> basis_nodes_1d(int degree)
{
    if (degree == 0)
        return {0.0};
    return gauss_lobatto_nodes(degree + 1);
}

int ipow(int b, int e)
{
    int r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

}

ElementBasis::ElementBasis(int dim, int degree, int quad_points)
    : dim_(dim), degree_(degree), nq1_(quad_points < 0 ? degree + 2 : quad_points), nfn_(0),
      lagrange_(degree >= 0 ? basis_nodes_1d(degree) : std::vector<double>{})
{
    if (dim < 2 || dim > 3)
        throw std::invalid_argument("ElementBasis: dimension must be 2 or 3");
    if (degree < 0)
        throw std::invalid_argument("ElementBasis: polynomial degree must be non-negative");
    if (nq1_ < 1)
        throw std::invalid_argument("ElementBasis: need at least one quadrature point per axis");

    const int n1 = degree + 1;
    nfn_ = ipow(n1, dim - 1);
    const std::vector<double>& x = lagrange_.nodes();
    const int nn = ipow(n1, dim);
    for (int idx = 0; idx < nn; ++idx) {
        Point p = Point::Zero();
        p[0] = x[idx % n1];
        p[1] = x[(idx / n1) % n1];
        if (dim == 3)
            p[2] = x[idx / (n1 * n1)];
        nodes_.push_back(p);
    }

    rule_ = tensor_gauss_rule(dim, nq1_);
    face_rule_ = tensor_gauss_rule(dim - 1, nq1_);

    const int nq = num_quad();
    values_.resize(nq, nn);
    for (int r = 0; r < dim; ++r)
        grads_[r].resize(nq, nn);
    for (int q = 0; q < nq; ++q) {
        values_.row(q) = evaluate(rule_.points[q]);
        const Matrix g = evaluate_gradient(rule_.points[q]);
        for (int r = 0; r < dim; ++r)
            grads_[r].row(q) = g.row(r);
    }

    const int nqf = num_face_quad();
    face_values_.resize(num_faces());
    face_grads_.resize(num_faces());
    face_nodes_.resize(num_faces());
    for (int f = 0; f < num_faces(); ++f) {
        face_values_[f].resize(nqf, nn);
        for (int r = 0; r < dim; ++r)
            face_grads_[f][r].resize(nqf, nn);
        for (int q = 0; q < nqf; ++q) {
            const Point& st = face_rule_.points[q];
            const Point xi = face_to_volume(dim, f, st[0], st[1]);
            face_values_[f].row(q) = evaluate(xi);
            const Matrix g = evaluate_gradient(xi);
            for (int r = 0; r < dim; ++r)
                face_grads_[f][r].row(q) = g.row(r);
        }
        const int axis = f / 2;
        const int fixed = (f % 2 == 0) ? 0 : degree;
        for (int b = 0; b < (dim == 3 ? n1 : 1); ++b)
            for (int a = 0; a < n1; ++a) {
                int idx[3] = {0, 0, 0};
                idx[axis] = fixed;
                int free_axes[2];
                int used = 0;
                for (int ax = 0; ax < dim; ++ax)
                    if (ax != axis)
                        free_axes[used++] = ax;
                idx[free_axes[0]] = a;
                if (dim == 3)
                    idx[free_axes[1]] = b;
                face_nodes_[f].push_back(idx[0] + n1 * (idx[1] + n1 * idx[2]));
            }
    }

    trace_values_.resize(nqf, nfn_);
    for (int q = 0; q < nqf; ++q) {
        const Point& st = face_rule_.points[q];
        trace_values_.row(q) = evaluate_trace(st[0], st[1]);
    }
}

Eigen::RowVectorXd ElementBasis::evaluate(const Point& xi) const
{
    const int n1 = degree_ + 1;
    std::array<std::vector<double>, 3> l;
    for (int a = 0; a < dim_; ++a) {
        l[a].resize(n1);
        lagrange_.values(xi[a], l[a].data());
    }
    Eigen::RowVectorXd v(num_nodes());
    for (int idx = 0; idx < num_nodes(); ++idx) {
        double val = l[0][idx % n1] * l[1][(idx / n1) % n1];
        if (dim_ == 3)
            val *= l[2][idx / (n1 * n1)];
        v[idx] = val;
    }
    return v;
}

Matrix ElementBasis::evaluate_gradient(const Point& xi) const
{
    const int n1 = degree_ + 1;
    std::array<std::vector<double>, 3> l, dl;
    for (int a = 0; a < dim_; ++a) {
        l[a].resize(n1);
        dl[a].resize(n1);
        lagrange_.values(xi[a], l[a].data());
        lagrange_.derivatives(xi[a], dl[a].data());
    }
    Matrix g(dim_, num_nodes());
    for (int idx = 0; idx < num_nodes(); ++idx) {
        const int i[3] = {idx % n1, (idx / n1) % n1, dim_ == 3 ? idx / (n1 * n1) : 0};
        for (int r = 0; r < dim_; ++r) {
            double val = 1.0;
            for (int a = 0; a < dim_; ++a)
                val *= (a == r) ? dl[a][i[a]] : l[a][i[a]];
            g(r, idx) = val;
        }
    }
    return g;
}

Eigen::RowVectorXd ElementBasis::evaluate_trace(double s, double t) const
{
    const int n1 = degree_ + 1;
    std::vector<double> ls(n1), lt(n1, 1.0);
    lagrange_.values(s, ls.data());
    if (dim_ == 3)
        lagrange_.values(t, lt.data());
    Eigen::RowVectorXd v(nfn_);
    for (int idx = 0; idx < nfn_; ++idx)
        v[idx] = ls[idx % n1] * (dim_ == 3 ? lt[idx / n1] : 1.0);
    return v;
}

}
