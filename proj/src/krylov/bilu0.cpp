#include "hdgwave/krylov/bilu0.hpp"

#include "hdgwave/common.hpp"

#include <Eigen/LU>

#include <limits>
#include <string>

namespace hdgwave::krylov {

namespace {

// Zero-fill elimination driver shared by the ordering and the fill measure.
class Eliminator {
public:
    explicit Eliminator(const BlockCsrMatrix& k) : a_(k), alive_(k.block_rows(), 1) {}

    Index size() const { return a_.block_rows(); }
    bool alive(Index i) const { return alive_[i] != 0; }

    std::vector<Index> neighbours(Index i) const
    {
        std::vector<Index> out;
        for (Index p = a_.row_ptr()[i]; p < a_.row_ptr()[i + 1]; ++p) {
            const Index j = a_.cols()[p];
            if (j != i && alive_[j])
                out.push_back(j);
        }
        return out;
    }

    // W_k = K_ii^-1 K_ik for the live neighbours
    std::vector<Matrix> scaled_row(Index i, const std::vector<Index>& nb) const
    {
        const Eigen::PartialPivLU<Matrix> lu(a_.block(a_.find(i, i)));
        std::vector<Matrix> w;
        w.reserve(nb.size());
        for (Index kk : nb)
            w.push_back(lu.solve(Matrix(a_.block(a_.find(i, kk)))));
        return w;
    }

    double weight(Index i) const
    {
        const auto nb = neighbours(i);
        if (nb.size() < 2)
            return 0.0;
        const auto w = scaled_row(i, nb);
        double sum = 0.0;
        for (std::size_t a = 0; a < nb.size(); ++a) {
            const Index pji = a_.find(nb[a], i);
            if (pji < 0)
                continue;
            const auto kji = a_.block(pji);
            for (std::size_t b = 0; b < nb.size(); ++b) {
                if (a == b || a_.find(nb[a], nb[b]) >= 0)
                    continue;
                sum += (kji * w[b]).norm();
            }
        }
        return sum;
    }

    void eliminate(Index i)
    {
        const auto nb = neighbours(i);
        const auto w = scaled_row(i, nb);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            const Index pji = a_.find(nb[a], i);
            if (pji < 0)
                continue;
            const Matrix kji = a_.block(pji);
            for (std::size_t b = 0; b < nb.size(); ++b) {
                const Index pos = a_.find(nb[a], nb[b]);
                if (pos >= 0)
                    a_.block(pos).noalias() -= kji * w[b];
            }
        }
        alive_[i] = 0;
    }

private:
    BlockCsrMatrix a_;
    std::vector<char> alive_;
};

}

std::vector<Index> mdf_order(const BlockCsrMatrix& k)
{
    Eliminator el(k);
    const Index n = el.size();
    std::vector<double> w(n);
    for (Index i = 0; i < n; ++i)
        w[i] = el.weight(i);
    std::vector<Index> order;
    order.reserve(n);
    for (Index step = 0; step < n; ++step) {
        Index best = -1;
        double best_w = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < n; ++i)
            if (el.alive(i) && w[i] < best_w) {
                best_w = w[i];
                best = i;
            }
        const auto nb = el.neighbours(best);
        el.eliminate(best);
        order.push_back(best);
        for (Index j : nb)
            w[j] = el.weight(j);
    }
    return order;
}

double discarded_fill(const BlockCsrMatrix& k, const std::vector<Index>& order)
{
    Eliminator el(k);
    double total = 0.0;
    for (Index i : order) {
        total += el.weight(i);
        el.eliminate(i);
    }
    return total;
}

Bilu0::Bilu0(const BlockCsrMatrix& k, std::vector<Index> order) : order_(std::move(order))
{
    refactor(k);
}

void Bilu0::refactor(const BlockCsrMatrix& k)
{
    lu_ = k.extract(order_);
    factor();
}

void Bilu0::factor()
{
    const Index n = lu_.block_rows();
    const int bs = lu_.block_size();
    const auto& rp = lu_.row_ptr();
    const auto& cols = lu_.cols();
    diag_.assign(n, -1);
    dinv_.assign(n, Matrix());
    std::vector<Index> marker(n, -1);
    Matrix lik(bs, bs);
    for (Index i = 0; i < n; ++i) {
        for (Index p = rp[i]; p < rp[i + 1]; ++p)
            marker[cols[p]] = p;
        for (Index p = rp[i]; p < rp[i + 1] && cols[p] < i; ++p) {
            const Index kk = cols[p];
            lik.noalias() = lu_.block(p) * dinv_[kk];
            lu_.block(p) = lik;
            for (Index q = diag_[kk] + 1; q < rp[kk + 1]; ++q) {
                const Index pos = marker[cols[q]];
                if (pos >= 0)
                    lu_.block(pos).noalias() -= lik * lu_.block(q);
            }
        }
        diag_[i] = marker[i];
        if (diag_[i] < 0)
            throw SolverError("Bilu0: missing diagonal block");
        const Eigen::FullPivLU<Matrix> lu(lu_.block(diag_[i]));
        if (!lu.isInvertible())
            throw SolverError("Bilu0: singular pivot block " + std::to_string(order_[i]));
        dinv_[i] = lu.inverse();
        for (Index p = rp[i]; p < rp[i + 1]; ++p)
            marker[cols[p]] = -1;
    }
}

void Bilu0::solve(const Vector& b, Vector& x) const
{
    const Index n = lu_.block_rows();
    const int bs = lu_.block_size();
    const auto& rp = lu_.row_ptr();
    const auto& cols = lu_.cols();
    Vector y(n * bs);
    for (Index a = 0; a < n; ++a)
        y.segment(a * bs, bs) = b.segment(order_[a] * bs, bs);
    for (Index a = 0; a < n; ++a)
        for (Index p = rp[a]; p < diag_[a]; ++p)
            y.segment(a * bs, bs).noalias() -= lu_.block(p) * y.segment(cols[p] * bs, bs);
    Vector t(bs);
    for (Index a = n - 1; a >= 0; --a) {
        t = y.segment(a * bs, bs);
        for (Index p = diag_[a] + 1; p < rp[a + 1]; ++p)
            t.noalias() -= lu_.block(p) * y.segment(cols[p] * bs, bs);
        y.segment(a * bs, bs).noalias() = dinv_[a] * t;
    }
    x.resize(b.size());
    for (Index a = 0; a < n; ++a)
        x.segment(order_[a] * bs, bs) = y.segment(a * bs, bs);
}

Matrix Bilu0::product_dense() const
{
    const Index n = lu_.block_rows();
    const int bs = lu_.block_size();
    Matrix l = Matrix::Identity(n * bs, n * bs);
    Matrix u = Matrix::Zero(n * bs, n * bs);
    for (Index a = 0; a < n; ++a)
        for (Index p = lu_.row_ptr()[a]; p < lu_.row_ptr()[a + 1]; ++p) {
            const Index c = lu_.cols()[p];
            if (c < a)
                l.block(a * bs, c * bs, bs, bs) = lu_.block(p);
            else
                u.block(a * bs, c * bs, bs, bs) = lu_.block(p);
        }
    return l * u;
}

}
