#include "hdgwave/dae/dense_dae.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <utility>

namespace hdgwave {

namespace {

using Map = std::function<Vector(const Vector&)>;

Matrix fd_jacobian(const Map& r, const Vector& x, const Vector& r0)
{
    Matrix j(r0.size(), x.size());
    Vector xp = x;
    for (Index k = 0; k < x.size(); ++k) {
        const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
        xp(k) = x(k) + h;
        const Vector rp = r(xp);
        xp(k) = x(k) - h;
        j.col(k) = (rp - r(xp)) / (2.0 * h);
        xp(k) = x(k);
    }
    return j;
}

class DenseProblem : public NewtonProblem {
public:
    DenseProblem(Index nu, Map r, bool trace_only) : nu_(nu), r_(std::move(r)), trace_only_(trace_only) {}

    double residual(const Vector& u, const Vector& v) override
    {
        x_ = pack(u, v);
        r0_ = r_(x_);
        return r0_.norm();
    }

    int correction(const Vector& u, const Vector& v, Vector& du, Vector& dv) override
    {
        const Matrix j = fd_jacobian(r_, x_, r0_);
        const Vector dx = -j.fullPivLu().solve(r0_);
        if (trace_only_) {
            du = Vector::Zero(u.size());
            dv = dx;
        } else {
            du = dx.head(nu_);
            dv = dx.tail(v.size());
        }
        return 0;
    }

private:
    Vector pack(const Vector& u, const Vector& v) const
    {
        if (trace_only_)
            return v;
        Vector x(u.size() + v.size());
        x << u, v;
        return x;
    }

    Index nu_;
    Map r_;
    bool trace_only_;
    Vector x_, r0_;
};

}

DenseDae::DenseDae(Matrix mass, Index trace_size, Residual f, Residual g, NewtonOptions newton)
    : mass_(std::move(mass)), trace_size_(trace_size), f_(std::move(f)), g_(std::move(g)), newton_(newton)
{
}

NewtonReport DenseDae::solve_stage(double alpha, const Vector& rhs, double t, Vector& u, Vector& v)
{
    const Index nu = u.size(), nv = v.size();
    auto r = [&](const Vector& x) {
        const Vector xu = x.head(nu), xv = x.tail(nv);
        Vector out(nu + nv);
        out << alpha * (mass_ * xu) + f_(xu, xv, t) - rhs, g_(xu, xv, t);
        return out;
    };
    DenseProblem problem(nu, r, false);
    return newton_solve(problem, u, v, newton_);
}

NewtonReport DenseDae::solve_constraint(const Vector& u, double t, Vector& v)
{
    ++constraint_solves_;
    auto r = [&](const Vector& x) { return Vector(g_(u, x, t)); };
    DenseProblem problem(u.size(), r, true);
    Vector uu = u;
    return newton_solve(problem, uu, v, newton_);
}

}
