#pragma once

#include "hdgwave/elastodyn/models.hpp"
#include "hdgwave/hdg/hdg_system.hpp"

#include <functional>

namespace hdgwave {

using TensorFunction = std::function<Tensor(const Point&)>;
using PointFunction = std::function<Point(const Point&)>;

/// L2 projection of (F, v) into the element unknowns of an elastodynamics system.
Vector project_elasto_state(const HdgSystem& sys, const TensorFunction& gradient, const PointFunction& velocity);

struct ElastoErrors {
    double velocity = 0.0;
    double gradient = 0.0;
};

/// L2 errors of v_h and F_h against exact fields.
ElastoErrors elasto_errors(const HdgSystem& sys, const Vector& u, const TensorFunction& gradient,
                           const PointFunction& velocity);

struct ElastoEnergy {
    double kinetic = 0.0;
    double potential = 0.0;
    double total() const { return kinetic + potential; }
};

/// int rho |v_h|^2 / 2 and int psi(F_h) on the element quadrature.
ElastoEnergy elasto_energy(const HdgSystem& sys, const ElastodynamicsModel& model, const Vector& u);

/// sum_K <S (v_h - vhat_h), v_h - vhat_h>_dK
double jump_dissipation(const HdgSystem& sys, const ElastodynamicsModel& model, const Vector& u, const Vector& v);

}
