#include "hdgwave/hdg/local_operator.hpp"

#include <string>

namespace hdgwave {

namespace {

void check(const Eigen::PartialPivLU<Matrix>& lu, Index element)
{
    const auto d = lu.matrixLU().diagonal().cwiseAbs();
    const double big = d.maxCoeff();
    if (!(big > 0.0) || !(d.minCoeff() > 1e-14 * big) || !(lu.rcond() > 1e-15))
        throw SingularLocalMatrix(element, "singular local matrix on element " + std::to_string(element));
}

}

void LocalOperator::factor(const Matrix& a, Index element, Index leading_blocks, Index block_size)
{
    n_ = a.rows();
    lead_ = leading_blocks * block_size;
    bs_ = block_size;
    diag_.clear();
    if (lead_ == 0 || lead_ >= n_) {
        lead_ = 0;
        lu_.compute(a);
        check(lu_, element);
        return;
    }
    const Index m = n_ - lead_;
    diag_.resize(leading_blocks);
    for (Index b = 0; b < leading_blocks; ++b) {
        diag_[b].compute(a.block(b * bs_, b * bs_, bs_, bs_));
        check(diag_[b], element);
    }
    // trailing columns split like the leading rows when the sizes allow it
    tail_bs_ = m % bs_ == 0 ? bs_ : m;
    const Index tail_blocks = m / tail_bs_;
    mask_.assign(leading_blocks * tail_blocks, 0);
    y_ = a.topRightCorner(lead_, m);
    for (Index b = 0; b < leading_blocks; ++b)
        for (Index c = 0; c < tail_blocks; ++c) {
            auto blk = y_.block(b * bs_, c * tail_bs_, bs_, tail_bs_);
            if (!blk.isZero(0.0)) {
                mask_[b * tail_blocks + c] = 1;
                blk = diag_[b].solve(Matrix(blk));
            }
        }
    a21_ = a.bottomLeftCorner(m, lead_);
    Matrix s = a.bottomRightCorner(m, m);
    for (Index b = 0; b < leading_blocks; ++b)
        for (Index c = 0; c < tail_blocks; ++c)
            if (mask_[b * tail_blocks + c])
                s.middleCols(c * tail_bs_, tail_bs_).noalias() -=
                    a21_.middleCols(b * bs_, bs_) * y_.block(b * bs_, c * tail_bs_, bs_, tail_bs_);
    lu_.compute(s);
    check(lu_, element);
}

void LocalOperator::solve_in_place(Eigen::Ref<Matrix> x) const
{
    if (lead_ == 0) {
        x = lu_.solve(x);
        return;
    }
    const Index m = n_ - lead_;
    auto x1 = x.topRows(lead_);
    auto x2 = x.bottomRows(m);
    const Index nb = static_cast<Index>(diag_.size());
    const Index tail_blocks = m / tail_bs_;
    std::vector<Index> cols;
    for (Index b = 0; b < nb; ++b) {
        auto xb = x1.middleRows(b * bs_, bs_);
        cols.clear();
        for (Index j = 0; j < xb.cols(); ++j)
            if (!xb.col(j).isZero(0.0))
                cols.push_back(j);
        if (cols.empty())
            continue;
        if (static_cast<Index>(cols.size()) == xb.cols()) {
            xb = diag_[b].solve(Matrix(xb));
            x2.noalias() -= a21_.middleCols(b * bs_, bs_) * xb;
        } else {
            const Matrix xc = diag_[b].solve(Matrix(xb(Eigen::all, cols)));
            xb(Eigen::all, cols) = xc;
            const Matrix t = a21_.middleCols(b * bs_, bs_) * xc;
            x2(Eigen::all, cols) -= t;
        }
    }
    x2 = lu_.solve(Matrix(x2));
    for (Index b = 0; b < nb; ++b)
        for (Index c = 0; c < tail_blocks; ++c)
            if (mask_[b * tail_blocks + c])
                x1.middleRows(b * bs_, bs_).noalias() -=
                    y_.block(b * bs_, c * tail_bs_, bs_, tail_bs_) * x2.middleRows(c * tail_bs_, tail_bs_);
}

Matrix LocalOperator::solve(const Matrix& b) const
{
    Matrix x = b;
    solve_in_place(x);
    return x;
}

Vector LocalOperator::solve(const Vector& b) const
{
    Matrix x = b;
    solve_in_place(x);
    return x.col(0);
}

}
