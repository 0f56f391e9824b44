#include "hdgwave/hdg/condensation.hpp"

#include <algorithm>

namespace hdgwave {

void condense_element(const LocalOperator& a, const Matrix& b, const Matrix& c, const Matrix& d, Matrix& ainv_b,
                      Matrix& k)
{
    ainv_b = a.solve(b);
    k = d;
    k.noalias() -= c * ainv_b;
}

void condense_residual(const LocalOperator& a, const Matrix& c, const Vector& h, const Vector& g, Vector& ainv_h,
                       Vector& r)
{
    ainv_h = a.solve(h);
    r = g;
    r.noalias() -= c * ainv_h;
}

void recover_local(const Vector& ainv_h, const Matrix& ainv_b, const Vector& dv, Vector& du)
{
    du = -ainv_h;
    du.noalias() -= ainv_b * dv;
}

CondensedSystem::CondensedSystem(const TraceSpace& trace) : trace_(&trace)
{
    const Mesh& mesh = trace.mesh();
    const Index ne = mesh.num_elements();
    const int bs = trace.block_size();
    maps_.resize(ne);
    std::vector<std::vector<Index>> adjacency(trace.num_blocks());
    for (Index e = 0; e < ne; ++e) {
        ElementMap& m = maps_[e];
        const auto dofs = trace.element_dofs(e);
        for (Index g : dofs)
            m.blocks.push_back(g / bs);
        std::sort(m.blocks.begin(), m.blocks.end());
        m.blocks.erase(std::unique(m.blocks.begin(), m.blocks.end()), m.blocks.end());
        m.slot.resize(dofs.size());
        m.offset.resize(dofs.size());
        for (std::size_t i = 0; i < dofs.size(); ++i) {
            m.slot[i] = static_cast<int>(std::lower_bound(m.blocks.begin(), m.blocks.end(), dofs[i] / bs) -
                                         m.blocks.begin());
            m.offset[i] = static_cast<int>(dofs[i] % bs);
        }
        for (Index bi : m.blocks)
            adjacency[bi].insert(adjacency[bi].end(), m.blocks.begin(), m.blocks.end());
    }
    k_ = krylov::BlockCsrMatrix::from_adjacency(bs, adjacency);
    for (ElementMap& m : maps_) {
        const std::size_t nb = m.blocks.size();
        m.positions.resize(nb * nb);
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t i = 0; i < nb; ++i)
                m.positions[j * nb + i] = k_.find(m.blocks[i], m.blocks[j]);
    }
}

void CondensedSystem::add_matrix(Index e, const Matrix& ke)
{
    const ElementMap& m = maps_[e];
    const Index n = ke.rows();
    const std::size_t nb = m.blocks.size();
    const int bs = k_.block_size();
    for (Index j = 0; j < n; ++j) {
        const std::size_t sj = m.slot[j];
        const int oj = m.offset[j];
        for (Index i = 0; i < n; ++i) {
            const Index pos = m.positions[sj * nb + m.slot[i]];
            k_.block(pos).data()[oj * bs + m.offset[i]] += ke(i, j);
        }
    }
}

void CondensedSystem::scatter(Index e, const Vector& local, Vector& global) const
{
    const auto dofs = trace_->element_dofs(e);
    for (std::size_t i = 0; i < dofs.size(); ++i)
        global(dofs[i]) += local(i);
}

void CondensedSystem::gather(Index e, const Vector& global, Vector& local) const
{
    const auto dofs = trace_->element_dofs(e);
    local.resize(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i)
        local(i) = global(dofs[i]);
}

}
