#pragma once

#include "hdgwave/dae/dae_system.hpp"
#include "hdgwave/dae/schemes.hpp"

#include <string>
#include <vector>

namespace hdgwave {

struct StepOptions {
    /// extrapolates stage guesses from previously converged stages
    Predictor* predictor = nullptr;
    /// solve g(u^{n+1}, v^{n+1}) = 0 after a DIRK step
    bool compute_trace = false;
};

struct StepResult {
    Vector u;
    /// trace at the new time; for DIRK without compute_trace the last stage trace
    Vector v;
    bool v_at_step = false;
    std::vector<NewtonReport> solves;
};

/// history holds u^n .. u^{n+s-1} (oldest first); t is the time of the new state.
StepResult bdf_step(DaeSystem& dae, const std::vector<Vector>& history, const Vector& v_guess,
                    const BdfScheme& scheme, double dt, double t, const StepOptions& options = {});

StepResult dirk_step(DaeSystem& dae, const Vector& u_n, const Vector& v_guess, const ButcherTableau& tableau,
                     double dt, double t_n, const StepOptions& options = {});

enum class SchemeKind { bdf, dirk };

struct TimeScheme {
    SchemeKind kind = SchemeKind::dirk;
    int bdf_steps = 1;
    ButcherTableau tableau;
    /// parses "bdf1".."bdf3", "dirk33", "backward_euler"
    static TimeScheme parse(const std::string& name);
    int order() const;
};

/// Fixed-step driver; BDF with s > 1 starts with s - 1 DIRK(3,3) steps.
class TimeIntegrator {
public:
    TimeIntegrator(DaeSystem& dae, TimeScheme scheme, double dt, StepOptions options = {});

    void initialize(double t0, const Vector& u0, const Vector& v0);
    /// one step; fills v() at the new time when want_trace (always for BDF)
    const StepResult& step(bool want_trace = false);

    double time() const { return t_; }
    int steps_taken() const { return n_; }
    double dt() const { return dt_; }
    const Vector& u() const { return u_; }
    const Vector& v() const { return v_; }
    bool v_current() const { return v_current_; }

private:
    DaeSystem& dae_;
    TimeScheme scheme_;
    BdfScheme bdf_;
    ButcherTableau startup_;
    double dt_;
    StepOptions options_;
    double t0_ = 0.0, t_ = 0.0;
    int n_ = 0;
    Vector u_, v_;
    bool v_current_ = true;
    std::vector<Vector> history_;
    StepResult last_;
};

}
