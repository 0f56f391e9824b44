#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdgwave {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Point = Eigen::Vector3d;
using Tensor = Eigen::Matrix3d;

/// Raised when a numerical solve cannot deliver a result (singular blocks,
/// Newton divergence, Krylov stagnation).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Local block A_K is singular; carries the offending element.
class SingularLocalMatrix : public SolverError {
public:
    SingularLocalMatrix(Index element, const std::string& what)
        : SolverError(what), element_(element) {}
    Index element() const { return element_; }

private:
    Index element_;
};

/// Bad user configuration (missing boundary condition, unknown key, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}
