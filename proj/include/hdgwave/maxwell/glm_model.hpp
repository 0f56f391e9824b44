#pragma once

#include "hdgwave/hdg/hdg_system.hpp"
#include "hdgwave/hdg/physics_model.hpp"

#include <functional>

namespace hdgwave {

struct EmMaterial {
    double epsilon = 2.0;
    double mu = 1.0;
    double epsilon0 = 1.0;

    /// Throws ConfigError unless all are positive.
    void validate() const;
};

struct GlmParameters {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double alpha3 = 1.0;
    double tau = 2.0;

    void validate() const;
};

using EmVectorField = std::function<Point(const Point& x, double t)>;
using EmScalarField = std::function<double(const Point& x, double t)>;

/// Sources and boundary data; empty functions stand for zero. Every boundary
/// face carries n x e x n = -n x e_inc x n.
struct MaxwellData {
    EmVectorField current;
    EmScalarField charge;
    EmVectorField incident;
};

/// Hybridised Maxwell system with tangential electric trace. Fields are
/// h (magnetic), e (electric) and, with the divergence correction, the scalar
/// multiplier phi; the trace is the tangential electric field on the skeleton.
/// Without the correction phi and its equation are dropped.
class MaxwellModel : public PhysicsModel {
public:
    MaxwellModel(EmMaterial material, GlmParameters glm, MaxwellData data, bool corrected = true);

    std::string name() const override { return corrected_ ? "maxwell-glm" : "maxwell-uncorrected"; }
    const std::vector<FieldSpec>& fields() const override { return fields_; }
    bool tangential_trace() const override { return true; }
    bool linear() const override { return true; }
    int decoupled_leading_components() const override { return 3; }
    void check_boundary_tag(int) const override {}

    void residual(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Vector& h,
                  Vector& g) const override;
    void jacobian(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Matrix& a, Matrix& b,
                  Matrix& c, Matrix& d) const override;

    bool corrected() const { return corrected_; }
    const EmMaterial& material() const { return material_; }
    const GlmParameters& glm() const { return glm_; }
    const MaxwellData& data() const { return data_; }

private:
    EmMaterial material_;
    GlmParameters glm_;
    MaxwellData data_;
    bool corrected_;
    std::vector<FieldSpec> fields_;
};

/// Local elimination of the multiplier from an element system
///   [A_uu A_up; A_pu A_pp] [x_u; x_p] = [r_u; r_p]
/// where p (the trailing `phi_size` unknowns) has no trace coupling.
class PhiElimination {
public:
    PhiElimination(const Matrix& a, Index phi_size);

    /// A_uu - A_up A_pp^-1 A_pu
    const Matrix& reduced() const { return reduced_; }
    /// r_u - A_up A_pp^-1 r_p
    Vector reduce(const Vector& r) const;
    /// x_p = A_pp^-1 (r_p - A_pu x_u)
    Vector recover(const Vector& r, const Vector& xu) const;

private:
    Index nu_ = 0, np_ = 0;
    Matrix reduced_, apu_, aup_;
    Eigen::PartialPivLU<Matrix> app_;
};

/// broken L2 norm of div e_h
double divergence_norm(const HdgSystem& sys, const Vector& u);

/// (eps e_h, e_h)/2 + (mu h_h, h_h)/2 + (phi_h, phi_h)/(2 alpha1^2)
double em_energy(const HdgSystem& sys, const MaxwellModel& model, const Vector& u);

/// broken H(curl) error sqrt(|u - u_h|^2 + |curl u - curl u_h|^2) of field
/// `field` (0 = h, 1 = e) on the element quadrature
double hcurl_error(const HdgSystem& sys, const Vector& u, int field, const std::function<Point(const Point&)>& exact,
                   const std::function<Point(const Point&)>& exact_curl);

}
