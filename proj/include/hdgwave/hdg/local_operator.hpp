#pragma once

#include "hdgwave/common.hpp"

#include <Eigen/LU>

#include <vector>

namespace hdgwave {

/// Factorised element matrix A_K. When the leading `blocks * block_size` rows
/// and columns form a block-diagonal matrix (no coupling between the leading
/// blocks) the solve goes through the Schur complement of that part, which
/// only needs the small diagonal blocks and one dense factorisation of the
/// trailing complement. Zero blocks of the coupling and zero right-hand-side
/// columns are skipped. Otherwise A is factorised densely with partial
/// pivoting.
class LocalOperator {
public:
    LocalOperator() = default;

    /// Throws SingularLocalMatrix (carrying `element`) on a singular matrix.
    void factor(const Matrix& a, Index element, Index leading_blocks = 0, Index block_size = 0);

    Index size() const { return n_; }
    /// x <- A^-1 x, column by column
    void solve_in_place(Eigen::Ref<Matrix> x) const;
    Matrix solve(const Matrix& b) const;
    Vector solve(const Vector& b) const;

private:
    Index n_ = 0;
    Index lead_ = 0;
    Index bs_ = 0;
    Index tail_bs_ = 0;
    std::vector<Eigen::PartialPivLU<Matrix>> diag_;
    // y = D^-1 A_12 with its nonzero (leading block, trailing block) pattern
    Matrix y_, a21_;
    std::vector<char> mask_;
    Eigen::PartialPivLU<Matrix> lu_;
};

}
