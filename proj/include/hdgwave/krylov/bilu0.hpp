#pragma once

#include "hdgwave/krylov/block_csr.hpp"

#include <vector>

namespace hdgwave::krylov {

/// Minimum-discarded-fill ordering: greedily eliminates the block whose
/// elimination would drop the least fill (sum of Frobenius norms of the
/// discarded K_ji K_ii^-1 K_ik), using values updated by the previous
/// eliminations. Ties go to the lowest block index. Returns the elimination
/// order (order[p] is the block eliminated at step p).
std::vector<Index> mdf_order(const BlockCsrMatrix& k);

/// Total discarded fill of a zero-fill elimination in the given order.
double discarded_fill(const BlockCsrMatrix& k, const std::vector<Index>& order);

/// Block incomplete LU with zero fill on the pattern of K permuted by `order`.
class Bilu0 {
public:
    Bilu0() = default;
    Bilu0(const BlockCsrMatrix& k, std::vector<Index> order);

    /// New values, same pattern and ordering.
    void refactor(const BlockCsrMatrix& k);
    /// x = (LU)^-1 b in the original numbering
    void solve(const Vector& b, Vector& x) const;

    const std::vector<Index>& order() const { return order_; }
    /// combined factors in permuted numbering (strict lower part L, rest U)
    const BlockCsrMatrix& factors() const { return lu_; }
    /// dense L*U in permuted numbering
    Matrix product_dense() const;

private:
    void factor();

    std::vector<Index> order_;
    BlockCsrMatrix lu_;
    std::vector<Index> diag_;
    std::vector<Matrix> dinv_;
};

}
