#include "hdgwave/krylov/ras.hpp"

#include <algorithm>
#include <numeric>

namespace hdgwave::krylov {

RasPreconditioner::RasPreconditioner(const BlockCsrMatrix& k, const RasOptions& options)
    : options_(options), size_(k.size()), bs_(k.block_size())
{
    if (options.overlap < 0)
        throw std::invalid_argument("RasPreconditioner: overlap must be non-negative");
    const auto cores = partition_blocks(k, options.subdomains);
    parts_.resize(cores.size());
    for (std::size_t i = 0; i < cores.size(); ++i) {
        Subdomain& s = parts_[i];
        s.core = cores[i];
        s.blocks = grow_overlap(k, s.core, options.overlap);
        s.is_core.assign(s.blocks.size(), 0);
        for (std::size_t a = 0; a < s.blocks.size(); ++a)
            s.is_core[a] = std::binary_search(s.core.begin(), s.core.end(), s.blocks[a]);
        const BlockCsrMatrix local = k.extract(s.blocks);
        if (options.solver == SubdomainSolver::exact_lu) {
            s.lu.compute(local.to_dense());
        }
        else {
            std::vector<Index> order(s.blocks.size());
            if (options.mdf)
                order = mdf_order(local);
            else
                std::iota(order.begin(), order.end(), 0);
            s.ilu = Bilu0(local, std::move(order));
        }
    }
}

void RasPreconditioner::refactor(const BlockCsrMatrix& k)
{
    for (Subdomain& s : parts_) {
        const BlockCsrMatrix local = k.extract(s.blocks);
        if (options_.solver == SubdomainSolver::exact_lu)
            s.lu.compute(local.to_dense());
        else
            s.ilu.refactor(local);
    }
}

void RasPreconditioner::apply(const Vector& r, Vector& z) const
{
    z.setZero(size_);
    Vector local, sol;
    for (const Subdomain& s : parts_) {
        const Index m = static_cast<Index>(s.blocks.size());
        local.resize(m * bs_);
        for (Index a = 0; a < m; ++a)
            local.segment(a * bs_, bs_) = r.segment(s.blocks[a] * bs_, bs_);
        if (options_.solver == SubdomainSolver::exact_lu)
            sol = s.lu.solve(local);
        else
            s.ilu.solve(local, sol);
        for (Index a = 0; a < m; ++a)
            if (s.is_core[a])
                z.segment(s.blocks[a] * bs_, bs_) = sol.segment(a * bs_, bs_);
    }
}

}
