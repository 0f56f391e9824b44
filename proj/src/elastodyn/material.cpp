#include "hdgwave/elastodyn/material.hpp"

#include <cmath>

namespace hdgwave {

double ElasticMaterial::cp() const { return std::sqrt((lambda + 2.0 * mu) / rho); }

double ElasticMaterial::cs() const { return std::sqrt(mu / rho); }

void ElasticMaterial::validate() const
{
    if (!(mu > 0.0))
        throw ConfigError("shear modulus must be positive");
    if (!(rho > 0.0))
        throw ConfigError("density must be positive");
    if (!(lambda + 2.0 * mu / 3.0 >= 0.0))
        throw ConfigError("bulk modulus must be non-negative");
}

double Stabilization::value(const ElasticMaterial& m) const
{
    return factor * m.rho * (mode == ImpedanceMode::compressional ? m.cp() : m.cs());
}

Tensor cauchy_stress(const Tensor& f, const ElasticMaterial& m)
{
    return m.mu * (f + f.transpose()) + (m.lambda * (f.trace() - 3.0) - 2.0 * m.mu) * Tensor::Identity();
}

Tangent linear_tangent(const ElasticMaterial& m)
{
    Tangent t = Tangent::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t(3 * i + j, 3 * i + j) += m.mu;
            t(3 * i + j, 3 * j + i) += m.mu;
            if (i == j)
                for (int k = 0; k < 3; ++k)
                    t(3 * i + i, 3 * k + k) += m.lambda;
        }
    return t;
}

double linear_energy_density(const Tensor& f, const ElasticMaterial& m)
{
    return 0.5 * cauchy_stress(f, m).cwiseProduct(f - Tensor::Identity()).sum();
}

SvkStress svk_stress(const Tensor& f, const ElasticMaterial& m)
{
    SvkStress s;
    s.strain = 0.5 * (f.transpose() * f - Tensor::Identity());
    s.second = m.lambda * s.strain.trace() * Tensor::Identity() + 2.0 * m.mu * s.strain;
    s.first = f * s.second;
    return s;
}

double svk_energy_density(const Tensor& f, const ElasticMaterial& m)
{
    const Tensor e = 0.5 * (f.transpose() * f - Tensor::Identity());
    const double tr = e.trace();
    return 0.5 * m.lambda * tr * tr + m.mu * e.cwiseProduct(e).sum();
}

Tangent svk_tangent(const Tensor& f, const ElasticMaterial& m)
{
    const SvkStress s = svk_stress(f, m);
    const Tensor ffT = f * f.transpose();
    Tangent t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = m.lambda * f(k, l) * f(i, j) + m.mu * (f(i, l) * f(k, j));
                    if (i == k)
                        v += s.second(l, j);
                    if (l == j)
                        v += m.mu * ffT(i, k);
                    t(3 * i + j, 3 * k + l) = v;
                }
    return t;
}

}
