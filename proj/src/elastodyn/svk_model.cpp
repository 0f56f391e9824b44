#include "hdgwave/elastodyn/models.hpp"

#include <Eigen/Cholesky>

namespace hdgwave {

namespace {

Tensor to_tensor(const Eigen::Ref<const Eigen::RowVectorXd>& row)
{
    Tensor t;
    for (int c = 0; c < 9; ++c)
        t(c / 3, c % 3) = row(c);
    return t;
}

}

Matrix SvkElastodynamics::stress(const ElementContext& ctx, const Matrix& f) const
{
    const Matrix fq = ctx.values() * f;
    Matrix gq(ctx.num_quad, 9);
    for (int q = 0; q < ctx.num_quad; ++q) {
        const Tensor p = svk_stress(to_tensor(fq.row(q)), material_).first;
        for (int c = 0; c < 9; ++c)
            gq(q, c) = ctx.wdet(q) * p(c / 3, c % 3);
    }
    return ctx.mass().llt().solve(ctx.values().transpose() * gq);
}

Matrix SvkElastodynamics::stress_jacobian(const ElementContext& ctx, const Matrix& f,
                                          const std::array<Matrix, 3>& l) const
{
    const Index r = l[0].rows(), nn = f.rows(), nq = ctx.num_quad;
    const Matrix& phi = ctx.values();
    const Eigen::LLT<Matrix> mass(ctx.mass());
    std::array<Matrix, 3> rj;
    for (int j = 0; j < 3; ++j)
        rj[j] = mass.solve(l[j].transpose()).transpose() * phi.transpose();

    const Matrix fq = phi * f;
    std::vector<Tangent> tq(nq);
    for (Index q = 0; q < nq; ++q)
        tq[q] = ctx.wdet(q) * svk_tangent(to_tensor(fq.row(q)), material_);

    Matrix out(3 * r, 9 * nn);
    Matrix x(r, nq);
    Eigen::RowVectorXd w(nq);
    for (int i = 0; i < 3; ++i)
        for (int kl = 0; kl < 9; ++kl) {
            x.setZero();
            for (int j = 0; j < 3; ++j) {
                for (Index q = 0; q < nq; ++q)
                    w(q) = tq[q](3 * i + j, kl);
                x.array() += rj[j].array().rowwise() * w.array();
            }
            out.block(i * r, kl * nn, r, nn).noalias() = x * phi;
        }
    return out;
}

}
