#pragma once

#include "hdgwave/dae/dae_system.hpp"

#include <functional>

namespace hdgwave {

/// Small dense DAE given by callbacks, with finite-difference Jacobians.
class DenseDae : public DaeSystem {
public:
    using Residual = std::function<Vector(const Vector& u, const Vector& v, double t)>;

    DenseDae(Matrix mass, Index trace_size, Residual f, Residual g, NewtonOptions newton = {1e-13, 1e-14, 30});

    Index local_size() const override { return mass_.rows(); }
    Index trace_size() const override { return trace_size_; }
    void apply_mass(const Vector& u, Vector& mu) const override { mu = mass_ * u; }

    NewtonReport solve_stage(double alpha, const Vector& rhs, double t, Vector& u, Vector& v) override;
    NewtonReport solve_constraint(const Vector& u, double t, Vector& v) override;

    int constraint_solves() const { return constraint_solves_; }

private:
    Matrix mass_;
    Index trace_size_;
    Residual f_, g_;
    NewtonOptions newton_;
    int constraint_solves_ = 0;
};

}
