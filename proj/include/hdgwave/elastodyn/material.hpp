#pragma once

#include "hdgwave/common.hpp"

namespace hdgwave {

struct ElasticMaterial {
    double lambda = 1.5;
    double mu = 1.0;
    double rho = 1.0;

    double cp() const;
    double cs() const;
    /// Throws ConfigError unless mu > 0, rho > 0 and lambda + 2 mu / 3 >= 0.
    void validate() const;
};

enum class ImpedanceMode { compressional, shear };

/// S = factor * rho * c I with c the compressional or shear wave speed.
struct Stabilization {
    ImpedanceMode mode = ImpedanceMode::shear;
    double factor = 2.0;

    double value(const ElasticMaterial& m) const;
};

/// Fourth-order tangent stored as 9 x 9 with row 3i+j, column 3k+l.
using Tangent = Eigen::Matrix<double, 9, 9>;

/// sigma(F) = mu (F + F^T) + (lambda (tr F - 3) - 2 mu) I
Tensor cauchy_stress(const Tensor& f, const ElasticMaterial& m);
/// d sigma_ij / d F_kl
Tangent linear_tangent(const ElasticMaterial& m);
/// 1/2 sigma(F) : (F - I)
double linear_energy_density(const Tensor& f, const ElasticMaterial& m);

struct SvkStress {
    Tensor strain; // E = (F^T F - I) / 2
    Tensor second; // S = lambda tr(E) I + 2 mu E
    Tensor first;  // P = F S
};

SvkStress svk_stress(const Tensor& f, const ElasticMaterial& m);
/// psi = lambda / 2 tr(E)^2 + mu tr(E^2)
double svk_energy_density(const Tensor& f, const ElasticMaterial& m);
/// d P_ij / d F_kl
Tangent svk_tangent(const Tensor& f, const ElasticMaterial& m);

}
