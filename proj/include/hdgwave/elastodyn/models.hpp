#pragma once

#include "hdgwave/elastodyn/material.hpp"
#include "hdgwave/hdg/physics_model.hpp"

#include <functional>
#include <map>

namespace hdgwave {

enum class BoundaryKind { dirichlet, neumann };

using VectorField = std::function<Point(const Point& x, double t)>;
using TractionField = std::function<Point(const Point& x, const Point& normal, double t)>;

/// Forcing and boundary data; empty functions stand for zero.
struct ElastoData {
    std::map<int, BoundaryKind> boundary;
    VectorField body_force;
    VectorField velocity;
    TractionField traction;
};

/// Velocity / deformation-gradient hybridised elastodynamics. Fields are the
/// deformation gradient F (component 3i+j holds F_ij) and the velocity v; the
/// trace is the velocity on the skeleton. The stress entering the momentum
/// equation is represented by nodal coefficients supplied by the material
/// law of the derived class.
class ElastodynamicsModel : public PhysicsModel {
public:
    ElastodynamicsModel(ElasticMaterial material, Stabilization stab, ElastoData data);

    const std::vector<FieldSpec>& fields() const override { return fields_; }
    int decoupled_leading_components() const override { return 9; }
    void check_boundary_tag(int tag) const override;

    void residual(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Vector& h,
                  Vector& g) const override;
    void jacobian(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Matrix& a, Matrix& b,
                  Matrix& c, Matrix& d) const override;

    const ElasticMaterial& material() const { return material_; }
    const ElastoData& data() const { return data_; }
    /// scalar value of the stabilisation matrix S = s I
    double stabilization() const { return s_; }

    /// Nodal stress coefficients (num_nodes x 9) for nodal F coefficients.
    virtual Matrix stress(const ElementContext& ctx, const Matrix& f) const = 0;
    /// sum_j L_j d(stress_ij)/dF_kl for row operators L_j (r x num_nodes),
    /// returned as (3 r) x (9 num_nodes) with row block i and column block 3k+l.
    virtual Matrix stress_jacobian(const ElementContext& ctx, const Matrix& f, const std::array<Matrix, 3>& l) const = 0;
    /// stored elastic energy density at a point
    virtual double energy_density(const Tensor& f) const = 0;

protected:
    bool dirichlet(const FaceContext& fc) const;

    ElasticMaterial material_;
    Stabilization stab_;
    ElastoData data_;
    double s_;
    std::vector<FieldSpec> fields_;
};

/// sigma(F) = mu (F + F^T) + (lambda (tr F - 3) - 2 mu) I, applied pointwise.
class LinearElastodynamics : public ElastodynamicsModel {
public:
    using ElastodynamicsModel::ElastodynamicsModel;

    std::string name() const override { return "linear-elastodyn"; }
    bool linear() const override { return true; }
    Matrix stress(const ElementContext& ctx, const Matrix& f) const override;
    Matrix stress_jacobian(const ElementContext& ctx, const Matrix& f, const std::array<Matrix, 3>& l) const override;
    double energy_density(const Tensor& f) const override { return linear_energy_density(f, material_); }
};

/// Saint Venant-Kirchhoff material. The first Piola-Kirchhoff stress is the
/// local L2 projection of F S(F), which solves the mixed stress equation of
/// the formulation exactly inside each element.
class SvkElastodynamics : public ElastodynamicsModel {
public:
    using ElastodynamicsModel::ElastodynamicsModel;

    std::string name() const override { return "svk-elastodyn"; }
    bool linear() const override { return false; }
    Matrix stress(const ElementContext& ctx, const Matrix& f) const override;
    Matrix stress_jacobian(const ElementContext& ctx, const Matrix& f, const std::array<Matrix, 3>& l) const override;
    double energy_density(const Tensor& f) const override { return svk_energy_density(f, material_); }
};

/// Nodal F coefficients of one element (num_nodes x 9).
Matrix element_gradient_coefficients(const Vector& u, int num_nodes);

}
