#pragma once

#include "hdgwave/common.hpp"

#include <complex>

namespace hdgwave {

/// a_s M u^{n+s} + dt b_s f(u^{n+s}) = -sum_{i<s} a_i M u^{n+i}
struct BdfScheme {
    int steps = 1;
    Vector a; // a_0 .. a_s
    double b = 1.0;
};

BdfScheme make_bdf(int steps);

struct ButcherTableau {
    int stages = 0;
    Matrix a;
    Vector b, c;
    Matrix d; // a^-1
    Vector e; // b^T d
};

/// Builds a tableau from a lower-triangular a with nonzero diagonal, filling
/// c (row sums), d and e.
ButcherTableau make_tableau(const Matrix& a, const Vector& b);
/// a_11 = 1, b_1 = 1: backward Euler
ButcherTableau make_backward_euler();
/// L-stable three-stage third-order SDIRK (Alexander).
ButcherTableau make_dirk33();

/// Root of gamma^3 - 3 gamma^2 + 3/2 gamma - 1/6 in (1/6, 1/2).
double dirk33_gamma();

/// R(z) = 1 + z b^T (I - z a)^-1 1
std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z);

}
