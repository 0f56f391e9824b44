#pragma once

#include "hdgwave/hdg/element_context.hpp"

#include <string>
#include <vector>

namespace hdgwave {

/// One volume field of a model; `mass` scales its time derivative (0 for an
/// algebraic field).
struct FieldSpec {
    std::string name;
    int components = 1;
    double mass = 1.0;
};

/// Per-element weak form of a hybridised model. Local unknowns are laid out
/// [field][component][node]; the element trace vector is laid out
/// [local face][stored component][local face node]. Time-derivative terms are
/// added by the caller from the field mass coefficients.
class PhysicsModel {
public:
    virtual ~PhysicsModel() = default;

    virtual std::string name() const = 0;
    virtual const std::vector<FieldSpec>& fields() const = 0;
    /// physical components of the trace unknown
    virtual int trace_components() const { return 3; }
    virtual bool tangential_trace() const { return false; }
    virtual bool linear() const = 0;
    /// Number of leading field components whose Jacobian block (mass term
    /// included) has no coupling between components.
    virtual int decoupled_leading_components() const { return 0; }
    /// Throws ConfigError if boundary faces tagged `tag` have no condition.
    virtual void check_boundary_tag(int tag) const = 0;

    /// Local residual h (size local) and this element's contribution g to the
    /// global trace equations (size element trace).
    virtual void residual(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Vector& h,
                          Vector& g) const = 0;
    /// A = dh/du, B = dh/dtrace, C = dg/du, D = dg/dtrace
    virtual void jacobian(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Matrix& a,
                          Matrix& b, Matrix& c, Matrix& d) const = 0;
};

}
