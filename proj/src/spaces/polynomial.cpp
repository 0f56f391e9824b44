#include "hdgwave/spaces/polynomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hdgwave {

void legendre(int n, double x, double& p, double& dp)
{
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    if (std::abs(x - 1.0) < 1e-15)
        dp = 0.5 * n * (n + 1.0);
    else if (std::abs(x + 1.0) < 1e-15)
        dp = (n % 2 == 1 ? 0.5 : -0.5) * n * (n + 1.0);
    else
        dp = n * (x * p1 - p0) / (x * x - 1.0);
}

Rule1d gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    Rule1d r;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0, dp = 0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        legendre(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.points[i] = -x;
        r.points[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        r.points[n / 2] = 0.0;
    return r;
}

std::vector<double> gauss_lobatto_nodes(int n)
{
    if (n < 2)
        throw std::invalid_argument("gauss_lobatto_nodes: need at least two nodes");
    const int N = n - 1;
    std::vector<double> x(n);
    x[0] = -1.0;
    x[N] = 1.0;
    // interior nodes are the roots of P'_N; Newton on (1-x^2) P'_N
    for (int i = 1; 2 * i < N; ++i) {
        double t = -std::cos(std::numbers::pi * i / N);
        for (int it = 0; it < 100; ++it) {
            double p = 0, dp = 0;
            legendre(N, t, p, dp);
            // d/dx[(1-x^2)P'_N] = -N(N+1) P_N
            const double f = (1.0 - t * t) * dp;
            const double df = -N * (N + 1.0) * p;
            const double dt = f / df;
            t -= dt;
            if (std::abs(dt) < 1e-16)
                break;
        }
        x[i] = t;
        x[N - i] = -t;
    }
    if (N % 2 == 0)
        x[N / 2] = 0.0;
    return x;
}

Lagrange1d::Lagrange1d(std::vector<double> nodes)
    : nodes_(std::move(nodes)), denom_(nodes_.size(), 1.0)
{
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i)
                denom_[i] *= nodes_[i] - nodes_[j];
}

double Lagrange1d::value(int i, double x) const
{
    double v = 1.0;
    for (int j = 0; j < size(); ++j)
        if (j != i)
            v *= x - nodes_[j];
    return v / denom_[i];
}

double Lagrange1d::derivative(int i, double x) const
{
    double sum = 0.0;
    for (int m = 0; m < size(); ++m) {
        if (m == i)
            continue;
        double prod = 1.0;
        for (int j = 0; j < size(); ++j)
            if (j != i && j != m)
                prod *= x - nodes_[j];
        sum += prod;
    }
    return sum / denom_[i];
}

void Lagrange1d::values(double x, double* out) const
{
    for (int i = 0; i < size(); ++i)
        out[i] = value(i, x);
}

void Lagrange1d::derivatives(double x, double* out) const
{
    for (int i = 0; i < size(); ++i)
        out[i] = derivative(i, x);
}

}
