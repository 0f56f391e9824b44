#include "hdgwave/dae/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace hdgwave {

BdfScheme make_bdf(int steps)
{
    BdfScheme s;
    s.steps = steps;
    s.a.resize(steps + 1);
    switch (steps) {
    case 1: s.a << -1.0, 1.0; break;
    case 2: s.a << 0.5, -2.0, 1.5; break;
    case 3: s.a << -1.0 / 3.0, 1.5, -3.0, 11.0 / 6.0; break;
    default: throw ConfigError("BDF step count must be 1, 2 or 3");
    }
    return s;
}

ButcherTableau make_tableau(const Matrix& a, const Vector& b)
{
    if (a.rows() != a.cols() || a.rows() != b.size() || a.rows() == 0)
        throw ConfigError("tableau dimensions do not match");
    const Index s = a.rows();
    for (Index i = 0; i < s; ++i) {
        if (a(i, i) == 0.0)
            throw ConfigError("tableau diagonal must be nonzero");
        for (Index j = i + 1; j < s; ++j)
            if (a(i, j) != 0.0)
                throw ConfigError("tableau must be lower triangular");
    }
    ButcherTableau t;
    t.stages = static_cast<int>(s);
    t.a = a;
    t.b = b;
    t.c = a.rowwise().sum();
    t.d = a.triangularView<Eigen::Lower>().solve(Matrix::Identity(s, s));
    t.e = t.d.transpose() * b;
    return t;
}

ButcherTableau make_backward_euler()
{
    return make_tableau(Matrix::Constant(1, 1, 1.0), Vector::Constant(1, 1.0));
}

double dirk33_gamma()
{
    auto p = [](double g) { return ((g - 3.0) * g + 1.5) * g - 1.0 / 6.0; };
    auto dp = [](double g) { return (3.0 * g - 6.0) * g + 1.5; };
    double lo = 1.0 / 6.0, hi = 0.5;
    double g = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double r = p(g);
        if (r == 0.0)
            break;
        if ((r > 0.0) == (p(lo) > 0.0))
            lo = g;
        else
            hi = g;
        double next = g - r / dp(g);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - g) <= 1e-17)
            break;
        g = next;
    }
    return g;
}

ButcherTableau make_dirk33()
{
    const double g = dirk33_gamma();
    const double c2 = 0.5 * (1.0 + g);
    const double b2 = (0.5 - 2.0 * g + g * g) / (c2 - g);
    const double b1 = 1.0 - g - b2;
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = g;
    a(1, 0) = c2 - g;
    a(1, 1) = g;
    a(2, 0) = b1;
    a(2, 1) = b2;
    a(2, 2) = g;
    Vector b(3);
    b << b1, b2, g;
    return make_tableau(a, b);
}

std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z)
{
    using Cmat = Eigen::MatrixXcd;
    using Cvec = Eigen::VectorXcd;
    const Index s = t.stages;
    const Cmat m = Cmat::Identity(s, s) - z * t.a.cast<std::complex<double>>();
    const Cvec y = m.partialPivLu().solve(Cvec::Ones(s));
    return 1.0 + z * t.b.cast<std::complex<double>>().dot(y);
}

}
