#pragma once

#include "hdgwave/common.hpp"

#include <vector>

namespace hdgwave {

struct NewtonOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_iterations = 20;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    int linear_iterations = 0;
    /// ||(h, g)||_2 before the first and after every iteration
    std::vector<double> residuals;
};

/// Residual/correction callbacks for a Newton solve on the pair (u, v).
class NewtonProblem {
public:
    virtual ~NewtonProblem() = default;
    /// Evaluates the residual at (u, v), keeps it for the next correction and
    /// returns its Euclidean norm.
    virtual double residual(const Vector& u, const Vector& v) = 0;
    /// Newton correction at the last evaluated state; returns the number of
    /// linear iterations spent.
    virtual int correction(const Vector& u, const Vector& v, Vector& du, Vector& dv) = 0;
};

/// Newton iteration until ||r|| < abs_tol or ||r|| < rel_tol ||r_0||.
NewtonReport newton_solve(NewtonProblem& problem, Vector& u, Vector& v, const NewtonOptions& options);

/// Extrapolates a sequence of converged states in time. With order q the
/// prediction is the degree-q polynomial through the last q+1 recorded states
/// (fewer if the history is short); q = 0 returns the latest state.
class Predictor {
public:
    explicit Predictor(int order = 0, int capacity = 4);

    int order() const { return order_; }
    void record(double t, const Vector& u, const Vector& v);
    void clear() { times_.clear(), us_.clear(), vs_.clear(); }
    bool empty() const { return times_.empty(); }
    /// Writes the prediction at time t into (u, v); leaves them untouched if
    /// nothing was recorded.
    void predict(double t, Vector& u, Vector& v) const;

private:
    int order_;
    int capacity_;
    std::vector<double> times_;
    std::vector<Vector> us_, vs_;
};

/// Lagrange extrapolation weights of the nodes `times` evaluated at t.
std::vector<double> extrapolation_weights(const std::vector<double>& times, double t);

}
