#pragma once

#include "hdgwave/krylov/block_csr.hpp"

#include <stdexcept>
#include <vector>

namespace hdgwave::krylov {

class InvalidPartition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Splits the block graph of K into `parts` connected-as-possible pieces by
/// greedy breadth-first growth from the lowest unassigned block. Each piece
/// receives ceil(remaining / remaining_parts) blocks. Pieces are sorted.
std::vector<std::vector<Index>> partition_blocks(const BlockCsrMatrix& k, int parts);

/// Adds `layers` rings of graph neighbours to a block set (result sorted).
std::vector<Index> grow_overlap(const BlockCsrMatrix& k, const std::vector<Index>& core, int layers);

}
