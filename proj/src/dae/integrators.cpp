#include "hdgwave/dae/integrators.hpp"

#include <utility>

namespace hdgwave {

StepFailure::StepFailure(int stage, double time, NewtonReport report)
    : SolverError("nonlinear solve failed in stage " + std::to_string(stage) + " at t = " + std::to_string(time) +
                  " after " + std::to_string(report.iterations) + " iterations (residual " +
                  std::to_string(report.residuals.empty() ? 0.0 : report.residuals.back()) + ")"),
      stage_(stage), time_(time), report_(std::move(report))
{
}

StepResult bdf_step(DaeSystem& dae, const std::vector<Vector>& history, const Vector& v_guess,
                    const BdfScheme& scheme, double dt, double t, const StepOptions& options)
{
    if (static_cast<int>(history.size()) != scheme.steps)
        throw ConfigError("BDF history length does not match the step count");
    const double scale = 1.0 / (dt * scheme.b);
    Vector weighted = scheme.a(0) * history[0];
    for (int i = 1; i < scheme.steps; ++i)
        weighted += scheme.a(i) * history[i];
    Vector rhs;
    dae.apply_mass(weighted, rhs);
    rhs *= -scale;

    StepResult res;
    res.u = history.back();
    res.v = v_guess;
    if (options.predictor)
        options.predictor->predict(t, res.u, res.v);
    NewtonReport rep = dae.solve_stage(scheme.a(scheme.steps) * scale, rhs, t, res.u, res.v);
    if (!rep.converged)
        throw StepFailure(0, t, std::move(rep));
    if (options.predictor)
        options.predictor->record(t, res.u, res.v);
    res.solves.push_back(std::move(rep));
    res.v_at_step = true;
    return res;
}

StepResult dirk_step(DaeSystem& dae, const Vector& u_n, const Vector& v_guess, const ButcherTableau& tab,
                     double dt, double t_n, const StepOptions& options)
{
    const int s = tab.stages;
    Vector mu_n;
    dae.apply_mass(u_n, mu_n);
    std::vector<Vector> dstage(s); // M (U_j - u^n)

    StepResult res;
    Vector u = u_n, v = v_guess, increment = Vector::Zero(u_n.size()), rhs;
    for (int i = 0; i < s; ++i) {
        const double ti = t_n + tab.c(i) * dt;
        rhs = tab.d(i, i) * mu_n;
        for (int j = 0; j < i; ++j)
            rhs -= tab.d(i, j) * dstage[j];
        rhs /= dt;
        if (options.predictor)
            options.predictor->predict(ti, u, v);
        NewtonReport rep = dae.solve_stage(tab.d(i, i) / dt, rhs, ti, u, v);
        if (!rep.converged)
            throw StepFailure(i, ti, std::move(rep));
        if (options.predictor)
            options.predictor->record(ti, u, v);
        res.solves.push_back(std::move(rep));
        const Vector diff = u - u_n;
        increment += tab.e(i) * diff;
        if (i + 1 < s)
            dae.apply_mass(diff, dstage[i]);
    }
    res.u = u_n + increment;
    res.v = v;
    if (options.compute_trace) {
        const double t1 = t_n + dt;
        NewtonReport rep = dae.solve_constraint(res.u, t1, res.v);
        if (!rep.converged)
            throw StepFailure(s, t1, std::move(rep));
        res.solves.push_back(std::move(rep));
        res.v_at_step = true;
    }
    return res;
}

TimeScheme TimeScheme::parse(const std::string& name)
{
    TimeScheme s;
    if (name == "bdf1" || name == "bdf2" || name == "bdf3") {
        s.kind = SchemeKind::bdf;
        s.bdf_steps = name.back() - '0';
    } else if (name == "dirk33") {
        s.kind = SchemeKind::dirk;
        s.tableau = make_dirk33();
    } else if (name == "backward_euler") {
        s.kind = SchemeKind::dirk;
        s.tableau = make_backward_euler();
    } else {
        throw ConfigError("unknown time scheme '" + name + "'");
    }
    return s;
}

int TimeScheme::order() const
{
    if (kind == SchemeKind::bdf)
        return bdf_steps;
    return tableau.stages == 1 ? 1 : 3;
}

TimeIntegrator::TimeIntegrator(DaeSystem& dae, TimeScheme scheme, double dt, StepOptions options)
    : dae_(dae), scheme_(std::move(scheme)), dt_(dt), options_(options)
{
    if (!(dt > 0.0))
        throw ConfigError("time step must be positive");
    if (scheme_.kind == SchemeKind::bdf) {
        bdf_ = make_bdf(scheme_.bdf_steps);
        startup_ = make_dirk33();
    }
}

void TimeIntegrator::initialize(double t0, const Vector& u0, const Vector& v0)
{
    t0_ = t_ = t0;
    n_ = 0;
    u_ = u0;
    v_ = v0;
    v_current_ = true;
    history_.assign(1, u0);
    if (options_.predictor) {
        options_.predictor->clear();
        options_.predictor->record(t0, u0, v0);
    }
}

const StepResult& TimeIntegrator::step(bool want_trace)
{
    StepOptions opt = options_;
    opt.compute_trace = want_trace;
    const double t_next = t0_ + (n_ + 1) * dt_;
    if (scheme_.kind == SchemeKind::dirk)
        last_ = dirk_step(dae_, u_, v_, scheme_.tableau, dt_, t_, opt);
    else if (n_ + 1 < bdf_.steps)
        last_ = dirk_step(dae_, u_, v_, startup_, dt_, t_, opt);
    else
        last_ = bdf_step(dae_, history_, v_, bdf_, dt_, t_next, opt);
    u_ = last_.u;
    v_ = last_.v;
    v_current_ = last_.v_at_step;
    ++n_;
    t_ = t0_ + n_ * dt_;
    if (scheme_.kind == SchemeKind::bdf) {
        history_.push_back(u_);
        if (static_cast<int>(history_.size()) > bdf_.steps)
            history_.erase(history_.begin());
    }
    return last_;
}

}
