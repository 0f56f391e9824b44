#pragma once

#include "hdgwave/krylov/block_csr.hpp"

#include <vector>

namespace hdgwave::krylov {

struct GmresOptions {
    int restart = 200;
    double tolerance = 1e-8; // relative to the initial preconditioned residual
    double absolute_tolerance = 0.0;
    int max_iterations = 2000;
    double breakdown = 1e-300;
    /// track max |V'V - I| of the Krylov basis at the end of every cycle
    bool monitor_orthogonality = true;
};

struct GmresResult {
    Vector x;
    int iterations = 0;
    bool converged = false;
    /// preconditioned residual norm after every iteration, first entry initial
    std::vector<double> residuals;
    double orthogonality_loss = 0.0;
};

/// Orthogonalises w against the first k columns of V with two classical
/// Gram-Schmidt passes. Accumulated coefficients go to h[0..k); returns |w|.
double icgs_orthogonalize(const Matrix& V, Index k, Vector& w, Eigen::Ref<Vector> h);

/// Single classical Gram-Schmidt pass (reference for comparisons).
double cgs_orthogonalize(const Matrix& V, Index k, Vector& w, Eigen::Ref<Vector> h);

/// Left-preconditioned restarted GMRES on A x = b, starting from x0 (zero if
/// null). Without a preconditioner plain GMRES is run.
GmresResult gmres(const LinearOperator& a, const Vector& b, const LinearOperator* preconditioner,
                  const GmresOptions& options, const Vector* x0 = nullptr);

}
