#pragma once

#include "hdgwave/hdg/local_operator.hpp"
#include "hdgwave/krylov/block_csr.hpp"
#include "hdgwave/spaces/trace_space.hpp"

#include <vector>

namespace hdgwave {

/// ainv_b = A^-1 B and k = D - C A^-1 B for one element.
void condense_element(const LocalOperator& a, const Matrix& b, const Matrix& c, const Matrix& d, Matrix& ainv_b,
                      Matrix& k);

/// ainv_h = A^-1 h and r = g - C A^-1 h for one element.
void condense_residual(const LocalOperator& a, const Matrix& c, const Vector& h, const Vector& g, Vector& ainv_h,
                       Vector& r);

/// du = -(A^-1 h + A^-1 B dv)
void recover_local(const Vector& ainv_h, const Matrix& ainv_b, const Vector& dv, Vector& du);

/// Global trace system K dv = -r assembled from element contributions,
/// honouring the DOF identification of the trace space. The block structure
/// follows the trace space: one block per face (discontinuous variants) or per
/// trace node (continuous variants).
class CondensedSystem {
public:
    explicit CondensedSystem(const TraceSpace& trace);

    const TraceSpace& trace() const { return *trace_; }
    krylov::BlockCsrMatrix& matrix() { return k_; }
    const krylov::BlockCsrMatrix& matrix() const { return k_; }

    void clear_matrix() { k_.set_zero(); }
    /// K += element matrix in element-trace ordering
    void add_matrix(Index e, const Matrix& ke);
    /// global += element vector
    void scatter(Index e, const Vector& local, Vector& global) const;
    /// element trace vector from a global trace vector
    void gather(Index e, const Vector& global, Vector& local) const;

private:
    struct ElementMap {
        std::vector<Index> blocks;          // distinct global blocks touched
        std::vector<int> slot;              // per local entry: index into blocks
        std::vector<int> offset;            // per local entry: row inside its block
        std::vector<Index> positions;       // blocks x blocks storage positions (column-major)
    };

    const TraceSpace* trace_;
    krylov::BlockCsrMatrix k_;
    std::vector<ElementMap> maps_;
};

}
