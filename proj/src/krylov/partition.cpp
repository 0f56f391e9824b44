#include "hdgwave/krylov/partition.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace hdgwave::krylov {

std::vector<std::vector<Index>> partition_blocks(const BlockCsrMatrix& k, int parts)
{
    const Index n = k.block_rows();
    if (parts < 1)
        throw InvalidPartition("partition_blocks: need at least one subdomain");
    if (parts > n)
        throw InvalidPartition("partition_blocks: " + std::to_string(parts) + " subdomains for " +
                               std::to_string(n) + " blocks leaves a subdomain empty");

    std::vector<int> owner(n, -1);
    std::vector<std::vector<Index>> out(parts);
    Index assigned = 0;
    Index next_seed = 0;
    for (int p = 0; p < parts; ++p) {
        const Index target = (n - assigned + (parts - p) - 1) / (parts - p);
        std::deque<Index> queue;
        std::vector<char> queued(n, 0);
        auto& part = out[p];
        while (static_cast<Index>(part.size()) < target) {
            if (queue.empty()) {
                while (next_seed < n && owner[next_seed] >= 0)
                    ++next_seed;
                queue.push_back(next_seed);
                queued[next_seed] = 1;
            }
            const Index i = queue.front();
            queue.pop_front();
            if (owner[i] >= 0)
                continue;
            owner[i] = p;
            part.push_back(i);
            ++assigned;
            for (Index q = k.row_ptr()[i]; q < k.row_ptr()[i + 1]; ++q) {
                const Index j = k.cols()[q];
                if (owner[j] < 0 && !queued[j]) {
                    queued[j] = 1;
                    queue.push_back(j);
                }
            }
        }
        std::sort(part.begin(), part.end());
    }
    return out;
}

std::vector<Index> grow_overlap(const BlockCsrMatrix& k, const std::vector<Index>& core, int layers)
{
    std::vector<char> in(k.block_rows(), 0);
    std::vector<Index> frontier = core, all = core;
    for (Index i : core)
        in[i] = 1;
    for (int l = 0; l < layers; ++l) {
        std::vector<Index> next;
        for (Index i : frontier)
            for (Index q = k.row_ptr()[i]; q < k.row_ptr()[i + 1]; ++q) {
                const Index j = k.cols()[q];
                if (!in[j]) {
                    in[j] = 1;
                    next.push_back(j);
                }
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}
