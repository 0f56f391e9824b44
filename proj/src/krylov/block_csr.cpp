#include "hdgwave/krylov/block_csr.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdgwave::krylov {

BlockCsrMatrix::BlockCsrMatrix(Index block_rows, int block_size, std::vector<Index> row_ptr, std::vector<Index> cols)
    : n_(block_rows), bs_(block_size), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)),
      values_(cols_.size() * static_cast<std::size_t>(block_size) * block_size, 0.0)
{
    if (static_cast<Index>(row_ptr_.size()) != n_ + 1 || row_ptr_.back() != static_cast<Index>(cols_.size()))
        throw std::invalid_argument("BlockCsrMatrix: inconsistent row pointer");
}

BlockCsrMatrix BlockCsrMatrix::from_adjacency(int block_size, const std::vector<std::vector<Index>>& adjacency)
{
    const Index n = static_cast<Index>(adjacency.size());
    std::vector<Index> row_ptr(n + 1, 0), cols;
    for (Index i = 0; i < n; ++i) {
        std::vector<Index> row = adjacency[i];
        row.push_back(i);
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        cols.insert(cols.end(), row.begin(), row.end());
        row_ptr[i + 1] = static_cast<Index>(cols.size());
    }
    return BlockCsrMatrix(n, block_size, std::move(row_ptr), std::move(cols));
}

BlockCsrMatrix BlockCsrMatrix::from_dense(const Matrix& a, int bs)
{
    if (a.rows() != a.cols() || a.rows() % bs != 0)
        throw std::invalid_argument("BlockCsrMatrix::from_dense: size is not a multiple of the block size");
    const Index n = a.rows() / bs;
    std::vector<std::vector<Index>> adj(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (a.block(i * bs, j * bs, bs, bs).cwiseAbs().maxCoeff() > 0.0)
                adj[i].push_back(j);
    BlockCsrMatrix m = from_adjacency(bs, adj);
    for (Index i = 0; i < n; ++i)
        for (Index p = m.row_ptr_[i]; p < m.row_ptr_[i + 1]; ++p)
            m.block(p) = a.block(i * bs, m.cols_[p] * bs, bs, bs);
    return m;
}

Index BlockCsrMatrix::find(Index i, Index j) const
{
    const auto first = cols_.begin() + row_ptr_[i];
    const auto last = cols_.begin() + row_ptr_[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j)
        return -1;
    return static_cast<Index>(it - cols_.begin());
}

void BlockCsrMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

void BlockCsrMatrix::apply(const Vector& x, Vector& y) const
{
    y.setZero(size());
    for (Index i = 0; i < n_; ++i) {
        auto yi = y.segment(i * bs_, bs_);
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            yi.noalias() += block(p) * x.segment(cols_[p] * bs_, bs_);
    }
}

Matrix BlockCsrMatrix::to_dense() const
{
    Matrix a = Matrix::Zero(size(), size());
    for (Index i = 0; i < n_; ++i)
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            a.block(i * bs_, cols_[p] * bs_, bs_, bs_) = block(p);
    return a;
}

BlockCsrMatrix BlockCsrMatrix::extract(const std::vector<Index>& blocks) const
{
    std::vector<Index> local(n_, -1);
    for (std::size_t a = 0; a < blocks.size(); ++a)
        local[blocks[a]] = static_cast<Index>(a);
    const Index m = static_cast<Index>(blocks.size());
    std::vector<Index> row_ptr(m + 1, 0), cols;
    std::vector<Index> source;
    for (Index a = 0; a < m; ++a) {
        std::vector<std::pair<Index, Index>> row;
        const Index i = blocks[a];
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            if (local[cols_[p]] >= 0)
                row.emplace_back(local[cols_[p]], p);
        std::sort(row.begin(), row.end());
        for (const auto& [c, p] : row) {
            cols.push_back(c);
            source.push_back(p);
        }
        row_ptr[a + 1] = static_cast<Index>(cols.size());
    }
    BlockCsrMatrix sub(m, bs_, std::move(row_ptr), std::move(cols));
    for (std::size_t q = 0; q < source.size(); ++q)
        sub.block(static_cast<Index>(q)) = block(source[q]);
    return sub;
}

}
