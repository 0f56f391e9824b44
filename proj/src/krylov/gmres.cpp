#include "hdgwave/krylov/gmres.hpp"

#include <cmath>

namespace hdgwave::krylov {

double cgs_orthogonalize(const Matrix& V, Index k, Vector& w, Eigen::Ref<Vector> h)
{
    if (k > 0) {
        const Vector c = V.leftCols(k).transpose() * w;
        w.noalias() -= V.leftCols(k) * c;
        h.head(k) = c;
    }
    return w.norm();
}

double icgs_orthogonalize(const Matrix& V, Index k, Vector& w, Eigen::Ref<Vector> h)
{
    if (k == 0)
        return w.norm();
    h.head(k).setZero();
    for (int pass = 0; pass < 2; ++pass) {
        const Vector c = V.leftCols(k).transpose() * w;
        w.noalias() -= V.leftCols(k) * c;
        h.head(k) += c;
    }
    return w.norm();
}

namespace {

void apply_preconditioned(const LinearOperator& a, const LinearOperator* m, const Vector& x, Vector& y, Vector& tmp)
{
    if (m) {
        a.apply(x, tmp);
        m->apply(tmp, y);
    }
    else {
        a.apply(x, y);
    }
}

}

GmresResult gmres(const LinearOperator& a, const Vector& b, const LinearOperator* m, const GmresOptions& opt,
                  const Vector* x0)
{
    const Index n = a.size();
    GmresResult res;
    res.x = x0 ? *x0 : Vector::Zero(n);
    const int restart = std::max(1, opt.restart);

    Vector tmp(n), w(n), r(n);
    Matrix V(n, restart + 1);
    Matrix H = Matrix::Zero(restart + 1, restart);
    Vector cs(restart), sn(restart), g(restart + 1);

    auto preconditioned_residual = [&](Vector& out) {
        a.apply(res.x, tmp);
        Vector raw = b - tmp;
        if (m)
            m->apply(raw, out);
        else
            out = raw;
    };

    preconditioned_residual(r);
    double beta = r.norm();
    const double ref = beta;
    res.residuals.push_back(beta);
    const double target = std::max(opt.tolerance * ref, opt.absolute_tolerance);
    if (beta <= target || beta < opt.breakdown) {
        res.converged = true;
        return res;
    }

    while (res.iterations < opt.max_iterations) {
        V.col(0) = r / beta;
        g.setZero();
        g[0] = beta;
        H.setZero();
        int j = 0;
        bool lucky_stop = false;
        for (; j < restart && res.iterations < opt.max_iterations; ++j) {
            apply_preconditioned(a, m, V.col(j), w, tmp);
            const double hn = icgs_orthogonalize(V, j + 1, w, H.col(j).head(j + 1));
            H(j + 1, j) = hn;
            const bool lucky = hn < opt.breakdown;
            lucky_stop = lucky;
            if (!lucky)
                V.col(j + 1) = w / hn;
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            const double denom = std::hypot(H(j, j), H(j + 1, j));
            cs[j] = denom > 0 ? H(j, j) / denom : 1.0;
            sn[j] = denom > 0 ? H(j + 1, j) / denom : 0.0;
            H(j, j) = denom;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            ++res.iterations;
            const double est = std::abs(g[j + 1]);
            res.residuals.push_back(est);
            if (est <= target || lucky) {
                ++j;
                break;
            }
        }
        if (opt.monitor_orthogonality && j > 0) {
            const Index cols = lucky_stop ? j : j + 1;
            const Matrix gram = V.leftCols(cols).transpose() * V.leftCols(cols);
            res.orthogonality_loss = std::max(
                res.orthogonality_loss, (gram - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff());
        }
        // x += V y with H y = g (upper triangular)
        const Vector y =
            H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
        res.x.noalias() += V.leftCols(j) * y;
        preconditioned_residual(r);
        beta = r.norm();
        if (beta <= target) {
            res.converged = true;
            return res;
        }
    }
    res.converged = beta <= target;
    return res;
}

}
