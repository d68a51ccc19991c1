#pragma once

#include <Eigen/Core>
#include <Eigen/OrderingMethods>
#include <Eigen/Sparse>

#include <cmath>
#include <vector>

namespace eroiplan::detail {

/// Sparse LU factorization P·B = L·U (Gilbert-Peierls, column by column,
/// partial pivoting with largest-magnitude pivot and least-index tie-break).
/// Built for simplex bases: very sparse, near-triangular, refactorized often.
/// Triangular solves run over raw CSC arrays with a dense right-hand side.
template <typename Scalar>
class GpLu {
public:
    using SpMat = Eigen::SparseMatrix<Scalar>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    bool factorize(const SpMat& B) {
        n_ = static_cast<int>(B.cols());
        singular_ = false;
        lp_.assign(1, 0);
        li_.clear();
        lx_.clear();
        up_.assign(1, 0);
        ui_.clear();
        ux_.clear();
        pinv_.assign(n_, -1);
        p_.assign(n_, -1);
        if (n_ == 0)
            return true;

        // Fill-reducing column order (dense-ish rows otherwise blow up L).
        {
            Eigen::COLAMDOrdering<int> colamd;
            Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
            SpMat pattern = B;
            colamd(pattern, perm);
            q_.resize(n_);
            for (int k = 0; k < n_; ++k)
                q_[perm.indices()[k]] = k;
        }

        const int* bp = B.outerIndexPtr();
        const int* bi = B.innerIndexPtr();
        const Scalar* bx = B.valuePtr();

        std::vector<Scalar> x(n_, Scalar(0));
        std::vector<int> stack(n_), work(n_), topo(n_);
        std::vector<unsigned char> mark(n_, 0);

        for (int pos = 0; pos < n_; ++pos) {
            const int col = q_[pos];
            // Sparse solve x = L \ B(:,col) with the partial L built so far.
            // Depth-first reach over resolved rows gives the pattern in
            // topological order.
            int topo_n = 0;
            for (int k = bp[col]; k < bp[col + 1]; ++k) {
                if (!mark[bi[k]])
                    dfs_reach(bi[k], mark, stack, work, topo, topo_n);
                x[bi[k]] = bx[k];
            }
            const int out_col = pos;
            for (int t = topo_n - 1; t >= 0; --t) {
                const int row = topo[t];
                const int j = pinv_[row];
                if (j < 0)
                    continue;
                const Scalar xj = x[row];
                if (xj != Scalar(0))
                    for (int k = lp_[j]; k < lp_[j + 1]; ++k)
                        x[li_[k]] -= lx_[k] * xj;
            }

            // Pivot: largest magnitude among unresolved rows.
            int pivot_row = -1;
            Scalar pivot_abs = 0;
            for (int t = 0; t < topo_n; ++t) {
                const int row = topo[t];
                if (pinv_[row] >= 0)
                    continue;
                const Scalar a = std::abs(x[row]);
                if (a > pivot_abs || (a == pivot_abs && pivot_row >= 0 && row < pivot_row)) {
                    pivot_abs = a;
                    pivot_row = row;
                }
            }
            if (pivot_row < 0 || !(pivot_abs > Scalar(0)) || !std::isfinite(double(pivot_abs))) {
                singular_ = true;
                clear_column(x, topo, topo_n, mark);
                return false;
            }
            const Scalar pivot = x[pivot_row];
            pinv_[pivot_row] = out_col;
            p_[out_col] = pivot_row;

            // U(:,col): resolved rows, in pivotal coordinates; diagonal last.
            for (int t = 0; t < topo_n; ++t) {
                const int row = topo[t];
                if (pinv_[row] >= 0 && row != pivot_row && x[row] != Scalar(0) &&
                    pinv_[row] < out_col) {
                    ui_.push_back(pinv_[row]);
                    ux_.push_back(x[row]);
                }
            }
            ui_.push_back(out_col);
            ux_.push_back(pivot);
            up_.push_back(static_cast<int>(ui_.size()));

            // L(:,col): unresolved rows scaled by the pivot (unit diagonal).
            for (int t = 0; t < topo_n; ++t) {
                const int row = topo[t];
                if (pinv_[row] < 0 && x[row] != Scalar(0)) {
                    li_.push_back(row); // original row ids; remapped below
                    lx_.push_back(x[row] / pivot);
                }
            }
            lp_.push_back(static_cast<int>(li_.size()));

            clear_column(x, topo, topo_n, mark);
        }

        // Remap L's row indices into pivotal coordinates for the solves.
        for (auto& r : li_)
            r = pinv_[r];
        return true;
    }

    bool singular() const { return singular_; }

    /// x := B^-1 x
    void solve(Vec& b, Vec& scratch) const {
        if (n_ == 0)
            return;
        Vec& z = scratch;
        for (int k = 0; k < n_; ++k)
            z[k] = b[p_[k]];
        // forward: L z' = z (unit lower triangular)
        for (int j = 0; j < n_; ++j) {
            const Scalar zj = z[j];
            if (zj != Scalar(0))
                for (int k = lp_[j]; k < lp_[j + 1]; ++k)
                    z[li_[k]] -= lx_[k] * zj;
        }
        // backward: U x = z' (columns hold rows < j plus the diagonal, last)
        for (int j = n_ - 1; j >= 0; --j) {
            const int last = up_[j + 1] - 1;
            const Scalar xj = z[j] / ux_[last];
            z[j] = xj;
            if (xj != Scalar(0))
                for (int k = up_[j]; k < last; ++k)
                    z[ui_[k]] -= ux_[k] * xj;
        }
        for (int k = 0; k < n_; ++k)
            b[q_[k]] = z[k];
    }

    /// y := B^-T y
    void solve_transpose(Vec& c, Vec& scratch) const {
        if (n_ == 0)
            return;
        Vec& w = scratch;
        for (int k = 0; k < n_; ++k)
            w[k] = c[q_[k]];
        std::swap(c, w); // c now lives in elimination coordinates
        // forward: U^T w = c
        for (int j = 0; j < n_; ++j) {
            Scalar dot = 0;
            const int last = up_[j + 1] - 1;
            for (int k = up_[j]; k < last; ++k)
                dot += ux_[k] * c[ui_[k]];
            c[j] = (c[j] - dot) / ux_[last];
        }
        // backward: L^T v = w (unit diagonal)
        for (int j = n_ - 1; j >= 0; --j) {
            Scalar dot = 0;
            for (int k = lp_[j]; k < lp_[j + 1]; ++k)
                dot += lx_[k] * c[li_[k]];
            c[j] -= dot;
        }
        // y = P^T v
        for (int k = 0; k < n_; ++k)
            w[p_[k]] = c[k];
        c = w;
    }

    long factor_nonzeros() const { return static_cast<long>(li_.size() + ui_.size()); }

private:
    // Depth-first walk through resolved L columns; emits post-order so the
    // reversed list is topological.
    void dfs_reach(int row, std::vector<unsigned char>& mark, std::vector<int>& stack,
                   std::vector<int>& work, std::vector<int>& topo, int& topo_n) const {
        int head = 0;
        stack[0] = row;
        work[0] = pinv_[row] >= 0 ? lp_[pinv_[row]] : 0;
        mark[row] = 1;
        while (head >= 0) {
            const int r = stack[head];
            const int j = pinv_[r];
            bool descended = false;
            if (j >= 0) {
                int k = work[head];
                for (; k < lp_[j + 1]; ++k) {
                    const int child = li_[k];
                    if (!mark[child]) {
                        work[head] = k + 1;
                        ++head;
                        stack[head] = child;
                        work[head] = pinv_[child] >= 0 ? lp_[pinv_[child]] : 0;
                        mark[child] = 1;
                        descended = true;
                        break;
                    }
                }
                if (descended)
                    continue;
            }
            topo[topo_n++] = r;
            --head;
        }
    }

    void clear_column(std::vector<Scalar>& x, const std::vector<int>& topo, int topo_n,
                      std::vector<unsigned char>& mark) const {
        for (int t = 0; t < topo_n; ++t) {
            x[topo[t]] = Scalar(0);
            mark[topo[t]] = 0;
        }
    }

    int n_ = 0;
    bool singular_ = false;
    std::vector<int> lp_, li_, up_, ui_;
    std::vector<Scalar> lx_, ux_;
    std::vector<int> pinv_, p_, q_; // q_[pos] = source column eliminated at pos
};

} // namespace eroiplan::detail
