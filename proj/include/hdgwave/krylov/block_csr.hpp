#pragma once

#include "hdgwave/common.hpp"

#include <vector>

namespace hdgwave::krylov {

class LinearOperator {
public:
    virtual ~LinearOperator() = default;
    virtual Index size() const = 0;
    /// y = A x
    virtual void apply(const Vector& x, Vector& y) const = 0;
};

/// Square sparse matrix of dense bs x bs blocks. Column indices of every
/// block row are sorted; blocks are stored column-major one after another.
class BlockCsrMatrix final : public LinearOperator {
public:
    BlockCsrMatrix() = default;
    BlockCsrMatrix(Index block_rows, int block_size, std::vector<Index> row_ptr, std::vector<Index> cols);

    /// Pattern from per-row neighbour lists (duplicates allowed, diagonal added).
    static BlockCsrMatrix from_adjacency(int block_size, const std::vector<std::vector<Index>>& adjacency);
    /// All blocks with a nonzero entry become part of the pattern (plus the diagonal).
    static BlockCsrMatrix from_dense(const Matrix& a, int block_size);

    Index block_rows() const { return n_; }
    int block_size() const { return bs_; }
    Index num_blocks() const { return static_cast<Index>(cols_.size()); }
    Index size() const override { return n_ * bs_; }

    const std::vector<Index>& row_ptr() const { return row_ptr_; }
    const std::vector<Index>& cols() const { return cols_; }

    /// storage position of block (i, j), or -1 if it is not in the pattern
    Index find(Index i, Index j) const;

    Eigen::Map<Matrix> block(Index pos) { return {values_.data() + pos * bs_ * bs_, bs_, bs_}; }
    Eigen::Map<const Matrix> block(Index pos) const { return {values_.data() + pos * bs_ * bs_, bs_, bs_}; }

    void set_zero();
    void apply(const Vector& x, Vector& y) const override;
    Matrix to_dense() const;

    /// Principal submatrix on the listed block rows (in the given order).
    BlockCsrMatrix extract(const std::vector<Index>& blocks) const;

private:
    Index n_ = 0;
    int bs_ = 1;
    std::vector<Index> row_ptr_{0};
    std::vector<Index> cols_;
    std::vector<double> values_;
};

}
