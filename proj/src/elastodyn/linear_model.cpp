#include "hdgwave/elastodyn/models.hpp"

#include <utility>

namespace hdgwave {

Matrix element_gradient_coefficients(const Vector& u, int num_nodes)
{
    return Eigen::Map<const Matrix>(u.data(), num_nodes, 9);
}

ElastodynamicsModel::ElastodynamicsModel(ElasticMaterial material, Stabilization stab, ElastoData data)
    : material_(material), stab_(stab), data_(std::move(data))
{
    material_.validate();
    if (!(stab_.factor > 0.0))
        throw ConfigError("stabilisation factor must be positive");
    s_ = stab_.value(material_);
    fields_ = {{"F", 9, 1.0}, {"v", 3, material_.rho}};
}

void ElastodynamicsModel::check_boundary_tag(int tag) const
{
    if (!data_.boundary.count(tag))
        throw ConfigError("no boundary condition for boundary tag " + std::to_string(tag));
}

bool ElastodynamicsModel::dirichlet(const FaceContext& fc) const
{
    return fc.boundary && data_.boundary.at(fc.tag) == BoundaryKind::dirichlet;
}

void ElastodynamicsModel::residual(const ElementContext& ctx, double t, const Vector& u, const Vector& trace,
                                   Vector& h, Vector& g) const
{
    const int nn = ctx.num_nodes, nfn = ctx.num_face_nodes, nqf = ctx.num_face_quad;
    const Matrix& phi = ctx.values();
    const Matrix& psi = ctx.trace_values();
    h = Vector::Zero(12 * nn);
    g = Vector::Zero(ctx.trace_size());
    const Matrix fco = element_gradient_coefficients(u, nn);
    const Eigen::Map<const Matrix> vco(u.data() + 9 * nn, nn, 3);
    const Matrix s = stress(ctx, fco);

    const Matrix vq = phi * vco;
    const Matrix sq = phi * s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            h.segment((3 * i + j) * nn, nn).noalias() += ctx.grad[j].transpose() * ctx.wdet.cwiseProduct(vq.col(i));
            h.segment((9 + i) * nn, nn).noalias() +=
                ctx.grad[j].transpose() * ctx.wdet.cwiseProduct(sq.col(3 * i + j));
        }
    if (data_.body_force) {
        Matrix fq(ctx.num_quad, 3);
        for (int q = 0; q < ctx.num_quad; ++q)
            fq.row(q) = data_.body_force(ctx.points.col(q), t).transpose();
        for (int i = 0; i < 3; ++i)
            h.segment((9 + i) * nn, nn).noalias() -= phi.transpose() * ctx.wdet.cwiseProduct(fq.col(i));
    }

    for (std::size_t f = 0; f < ctx.faces.size(); ++f) {
        const FaceContext& fc = ctx.faces[f];
        const Matrix& phif = ctx.face_values(static_cast<int>(f));
        const Matrix vf = phif * vco;
        const Matrix sf = phif * s;
        Matrix vhat(nqf, 3);
        for (int i = 0; i < 3; ++i)
            vhat.col(i) = psi * trace.segment(ctx.trace_offset(static_cast<int>(f), i), nfn);
        const bool dir = dirichlet(fc);
        for (int i = 0; i < 3; ++i) {
            Vector flux = -s_ * (vf.col(i) - vhat.col(i));
            for (int j = 0; j < 3; ++j) {
                const Vector wn = fc.wdet.cwiseProduct(fc.normal.row(j).transpose());
                h.segment((3 * i + j) * nn, nn).noalias() -= phif.transpose() * wn.cwiseProduct(vhat.col(i));
                flux += sf.col(3 * i + j).cwiseProduct(fc.normal.row(j).transpose());
            }
            h.segment((9 + i) * nn, nn).noalias() -= phif.transpose() * fc.wdet.cwiseProduct(flux);
            auto gi = g.segment(ctx.trace_offset(static_cast<int>(f), i), nfn);
            if (dir) {
                Vector jump = vhat.col(i);
                if (data_.velocity)
                    for (int q = 0; q < nqf; ++q)
                        jump(q) -= data_.velocity(fc.points.col(q), t)(i);
                gi.noalias() += psi.transpose() * fc.wdet.cwiseProduct(jump);
            } else {
                if (fc.boundary && data_.traction)
                    for (int q = 0; q < nqf; ++q)
                        flux(q) -= data_.traction(fc.points.col(q), fc.normal.col(q), t)(i);
                gi.noalias() += psi.transpose() * fc.wdet.cwiseProduct(flux);
            }
        }
    }
}

void ElastodynamicsModel::jacobian(const ElementContext& ctx, double, const Vector& u, const Vector&, Matrix& a,
                                   Matrix& b, Matrix& c, Matrix& d) const
{
    const int nn = ctx.num_nodes, nfn = ctx.num_face_nodes;
    const Index nt = ctx.trace_size();
    const int nf = static_cast<int>(ctx.faces.size());
    const Matrix& phi = ctx.values();
    const Matrix& psi = ctx.trace_values();
    a = Matrix::Zero(12 * nn, 12 * nn);
    b = Matrix::Zero(12 * nn, nt);
    c = Matrix::Zero(nt, 12 * nn);
    d = Matrix::Zero(nt, nt);

    const Matrix wphi = ctx.wdet.asDiagonal() * phi;
    const Index r = nn + static_cast<Index>(nf) * nfn;
    std::array<Matrix, 3> l;
    for (int j = 0; j < 3; ++j) {
        l[j] = Matrix::Zero(r, nn);
        l[j].topRows(nn) = ctx.grad[j].transpose() * wphi;
        for (int i = 0; i < 3; ++i)
            a.block((3 * i + j) * nn, (9 + i) * nn, nn, nn) = l[j].topRows(nn);
    }
    Matrix smass = Matrix::Zero(nn, nn);
    for (int f = 0; f < nf; ++f) {
        const FaceContext& fc = ctx.faces[f];
        const Matrix& phif = ctx.face_values(f);
        const bool dir = dirichlet(fc);
        for (int j = 0; j < 3; ++j) {
            const Vector wn = fc.wdet.cwiseProduct(fc.normal.row(j).transpose());
            l[j].topRows(nn).noalias() -= phif.transpose() * wn.asDiagonal() * phif;
            if (!dir)
                l[j].middleRows(nn + f * nfn, nfn) = psi.transpose() * wn.asDiagonal() * phif;
            const Matrix bf = -(phif.transpose() * wn.asDiagonal() * psi);
            for (int i = 0; i < 3; ++i)
                b.block((3 * i + j) * nn, ctx.trace_offset(f, i), nn, nfn) = bf;
        }
        smass.noalias() += phif.transpose() * fc.wdet.asDiagonal() * phif;
        const Matrix pw = phif.transpose() * fc.wdet.asDiagonal() * psi;
        const Matrix tmass = psi.transpose() * fc.wdet.asDiagonal() * psi;
        for (int i = 0; i < 3; ++i) {
            const Index off = ctx.trace_offset(f, i);
            b.block((9 + i) * nn, off, nn, nfn) = -s_ * pw;
            if (dir) {
                d.block(off, off, nfn, nfn) = tmass;
            } else {
                c.block(off, (9 + i) * nn, nfn, nn) = -s_ * pw.transpose();
                d.block(off, off, nfn, nfn) = s_ * tmass;
            }
        }
    }
    for (int i = 0; i < 3; ++i)
        a.block((9 + i) * nn, (9 + i) * nn, nn, nn) += s_ * smass;

    const Matrix sj = stress_jacobian(ctx, element_gradient_coefficients(u, nn), l);
    for (int i = 0; i < 3; ++i) {
        a.block((9 + i) * nn, 0, nn, 9 * nn) = sj.block(i * r, 0, nn, 9 * nn);
        for (int f = 0; f < nf; ++f)
            c.block(ctx.trace_offset(f, i), 0, nfn, 9 * nn) = sj.block(i * r + nn + f * nfn, 0, nfn, 9 * nn);
    }
}

Matrix LinearElastodynamics::stress(const ElementContext&, const Matrix& f) const
{
    Matrix s(f.rows(), 9);
    for (Index a = 0; a < f.rows(); ++a) {
        Tensor fa;
        for (int c = 0; c < 9; ++c)
            fa(c / 3, c % 3) = f(a, c);
        const Tensor sa = cauchy_stress(fa, material_);
        for (int c = 0; c < 9; ++c)
            s(a, c) = sa(c / 3, c % 3);
    }
    return s;
}

Matrix LinearElastodynamics::stress_jacobian(const ElementContext&, const Matrix& f,
                                             const std::array<Matrix, 3>& l) const
{
    const Index r = l[0].rows(), nn = f.rows();
    const Tangent tan = linear_tangent(material_);
    Matrix out = Matrix::Zero(3 * r, 9 * nn);
    for (int i = 0; i < 3; ++i)
        for (int kl = 0; kl < 9; ++kl)
            for (int j = 0; j < 3; ++j) {
                const double cij = tan(3 * i + j, kl);
                if (cij != 0.0)
                    out.block(i * r, kl * nn, r, nn) += cij * l[j];
            }
    return out;
}

}
