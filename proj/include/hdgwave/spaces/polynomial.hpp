#pragma once

#include <vector>

namespace hdgwave {

struct Rule1d {
    std::vector<double> points;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for degree 2n-1.
Rule1d gauss_legendre(int n);

/// n Gauss-Lobatto-Legendre nodes on [-1, 1] (endpoints included), n >= 2.
std::vector<double> gauss_lobatto_nodes(int n);

/// Legendre polynomial P_n(x) and its derivative.
void legendre(int n, double x, double& p, double& dp);

/// Lagrange basis over a fixed 1D node set.
class Lagrange1d {
public:
    explicit Lagrange1d(std::vector<double> nodes);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }

    double value(int i, double x) const;
    double derivative(int i, double x) const;

    void values(double x, double* out) const;
    void derivatives(double x, double* out) const;

private:
    std::vector<double> nodes_;
    std::vector<double> denom_;
};

}
