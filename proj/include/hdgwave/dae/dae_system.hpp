#pragma once

#include "hdgwave/common.hpp"
#include "hdgwave/hdg/newton.hpp"

#include <string>

namespace hdgwave {

/// Semi-discrete index-1 DAE  M du/dt + f(u, v, t) = 0,  g(u, v, t) = 0.
/// Integrators reach it only through the two nonlinear solves below.
class DaeSystem {
public:
    virtual ~DaeSystem() = default;

    virtual Index local_size() const = 0;
    virtual Index trace_size() const = 0;
    virtual void apply_mass(const Vector& u, Vector& mu) const = 0;

    /// Solves  alpha M u + f(u, v, t) = rhs,  g(u, v, t) = 0  for (u, v);
    /// (u, v) carry the initial guess on entry.
    virtual NewtonReport solve_stage(double alpha, const Vector& rhs, double t, Vector& u, Vector& v) = 0;
    /// Solves g(u, v, t) = 0 for v with u fixed; v carries the initial guess.
    virtual NewtonReport solve_constraint(const Vector& u, double t, Vector& v) = 0;
};

class StepFailure : public SolverError {
public:
    StepFailure(int stage, double time, NewtonReport report);

    /// 0-based stage index (0 for BDF and constraint solves)
    int stage() const { return stage_; }
    double time() const { return time_; }
    const NewtonReport& report() const { return report_; }

private:
    int stage_;
    double time_;
    NewtonReport report_;
};

}
