#pragma once

#include "hdgwave/krylov/bilu0.hpp"
#include "hdgwave/krylov/block_csr.hpp"
#include "hdgwave/krylov/partition.hpp"

#include <Eigen/LU>

#include <vector>

namespace hdgwave::krylov {

enum class SubdomainSolver { bilu0, exact_lu };

struct RasOptions {
    int subdomains = 1;
    int overlap = 1;
    SubdomainSolver solver = SubdomainSolver::bilu0;
    /// minimum-discarded-fill ordering for BILU(0); natural order otherwise
    bool mdf = true;
};

/// Restricted additive Schwarz: P^-1 = sum_i R_i^0' K_i^-1 R_i^delta, with
/// K_i the principal submatrix on the overlapped subdomain.
class RasPreconditioner final : public LinearOperator {
public:
    RasPreconditioner(const BlockCsrMatrix& k, const RasOptions& options);

    /// Same pattern, new values: partition and orderings are kept.
    void refactor(const BlockCsrMatrix& k);

    Index size() const override { return size_; }
    void apply(const Vector& r, Vector& z) const override;

    int num_subdomains() const { return static_cast<int>(parts_.size()); }
    const std::vector<Index>& core(int i) const { return parts_[i].core; }
    const std::vector<Index>& overlapped(int i) const { return parts_[i].blocks; }
    const std::vector<Index>& ordering(int i) const { return parts_[i].ilu.order(); }

private:
    struct Subdomain {
        std::vector<Index> core;
        std::vector<Index> blocks;
        std::vector<char> is_core; // per entry of `blocks`
        Bilu0 ilu;
        Eigen::PartialPivLU<Matrix> lu;
    };

    RasOptions options_;
    Index size_ = 0;
    int bs_ = 1;
    std::vector<Subdomain> parts_;
};

}
