#include "hdgwave/hdg/newton.hpp"

#include <algorithm>
#include <cmath>

namespace hdgwave {

NewtonReport newton_solve(NewtonProblem& problem, Vector& u, Vector& v, const NewtonOptions& opt)
{
    NewtonReport rep;
    const double r0 = problem.residual(u, v);
    rep.residuals.push_back(r0);
    if (!std::isfinite(r0))
        return rep;
    if (r0 < opt.abs_tol) {
        rep.converged = true;
        return rep;
    }
    Vector du, dv;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        rep.linear_iterations += problem.correction(u, v, du, dv);
        u += du;
        v += dv;
        const double r = problem.residual(u, v);
        rep.residuals.push_back(r);
        rep.iterations = it;
        if (!std::isfinite(r))
            return rep;
        if (r < opt.abs_tol || r < opt.rel_tol * r0) {
            rep.converged = true;
            return rep;
        }
    }
    return rep;
}

Predictor::Predictor(int order, int capacity) : order_(order), capacity_(std::max(capacity, order + 1)) {}

void Predictor::record(double t, const Vector& u, const Vector& v)
{
    if (!times_.empty() && times_.back() == t) {
        us_.back() = u;
        vs_.back() = v;
        return;
    }
    times_.push_back(t);
    us_.push_back(u);
    vs_.push_back(v);
    if (static_cast<int>(times_.size()) > capacity_) {
        times_.erase(times_.begin());
        us_.erase(us_.begin());
        vs_.erase(vs_.begin());
    }
}

std::vector<double> extrapolation_weights(const std::vector<double>& times, double t)
{
    const std::size_t n = times.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                w[i] *= (t - times[j]) / (times[i] - times[j]);
    return w;
}

void Predictor::predict(double t, Vector& u, Vector& v) const
{
    if (times_.empty())
        return;
    const int n = std::min<int>(order_ + 1, static_cast<int>(times_.size()));
    const std::size_t first = times_.size() - n;
    const std::vector<double> nodes(times_.begin() + first, times_.end());
    const auto w = extrapolation_weights(nodes, t);
    u = w[0] * us_[first];
    v = w[0] * vs_[first];
    for (int i = 1; i < n; ++i) {
        u += w[i] * us_[first + i];
        v += w[i] * vs_[first + i];
    }
}

}
