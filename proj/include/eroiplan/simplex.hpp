#pragma once

#include "eroiplan/lp.hpp"

#include "eroiplan/gplu.hpp"

#include <Eigen/Core>
#include <Eigen/Sparse>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace eroiplan {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

const char* to_string(SolveStatus status);

/// Raised when a pivot falls below the breakdown tolerance or the iteration
/// limit is hit; never silently swallowed.
class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Solution {
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0;
    Eigen::VectorXd values;        // structural variables
    Eigen::VectorXd duals;         // one multiplier per row
    Eigen::VectorXd reduced_costs; // structural reduced costs at the final basis
    /// Certificate: primal ray over structurals (Unbounded) or row multipliers
    /// proving infeasibility (Infeasible). Empty for Optimal.
    Eigen::VectorXd ray;
    long iterations = 0;
};

struct SimplexOptions {
    double tol_feas = 1e-9;  // feasibility tolerance on scaled data
    double tol_opt = 1e-9;   // reduced-cost tolerance on scaled data
    double pivot_tol = 1e-11;
    int refactor_interval = 200;
    int stall_limit = 500;   // iterations without progress before Bland's rule
    long max_iterations = 4000000;
    int pricing_block = 1 << 30; // full Dantzig scan; lower for block-partial pricing
};

/// Deterministic bounded-variable revised simplex. Two phases (artificial
/// columns drive out initial infeasibility), sparse LU basis with
/// product-form updates, rows/columns equilibrated by power-of-two max-abs
/// scaling. Pricing is blockwise Dantzig with least-index tie-breaks and
/// falls back to Bland's rule after a stall, so cycling terminates.
Solution solve(const LPProblem& lp, const SimplexOptions& options = {});

struct CheckReport {
    double max_row_violation = 0.0;
    double max_bound_violation = 0.0;
    double objective_gap = 0.0;

    bool within(double tol) const {
        return max_row_violation <= tol && max_bound_violation <= tol && objective_gap <= tol;
    }
};

/// Residuals of a solution against the original (unscaled) problem.
CheckReport check_solution(const LPProblem& lp, const Solution& solution);

/// Bound-form dual objective y'b + sum of reduced-cost * finite-bound terms;
/// equals the primal objective at an optimal basis (strong duality).
double dual_objective(const LPProblem& lp, const Solution& solution);

namespace detail {

template <typename Scalar>
class SimplexEngine {
public:
    SimplexEngine(const LPProblem& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
        build();
    }

    Solution run() {
        Solution out;
        if (m_ == 0 && n_total_ == 0) {
            out.status = SolveStatus::Optimal;
            out.values.resize(0);
            out.duals.resize(0);
            out.reduced_costs.resize(0);
            return out;
        }

        const SolveStatus phase1 = solve_phase(true);
        if (phase1 == SolveStatus::Infeasible) {
            out.status = SolveStatus::Infeasible;
            out.iterations = iterations_;
            out.duals = extract_duals(phase1_cost_);
            out.ray = out.duals; // Farkas multipliers from the phase-1 optimum
            out.values = extract_values();
            return out;
        }
        // Artificials are pinned at zero from here on.
        for (int j = slack_end_; j < n_total_; ++j) {
            lower_[j] = 0.0;
            upper_[j] = 0.0;
            if (where_basic_[j] < 0)
                x_[j] = 0.0;
        }

        const SolveStatus phase2 = solve_phase(false);
        out.status = phase2;
        out.iterations = iterations_;
        out.values = extract_values();
        if (phase2 == SolveStatus::Optimal) {
            out.duals = extract_duals(cost_);
            out.reduced_costs = extract_reduced_costs(out.duals);
            out.objective = lp_.objective.size()
                                ? lp_.objective.dot(out.values)
                                : 0.0;
        } else if (phase2 == SolveStatus::Unbounded) {
            out.ray = unbounded_ray_;
        }
        return out;
    }

private:
    using SpMat = Eigen::SparseMatrix<Scalar>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    struct Eta {
        int r;
        Scalar wr;
        std::vector<std::pair<int, Scalar>> w; // nonzeros of the FTRAN column, excluding r
    };

    static Scalar pow2_scale(Scalar v) {
        if (v <= Scalar(0) || !std::isfinite(v))
            return Scalar(1);
        return std::exp2(std::round(std::log2(v)));
    }

    // Internal row form: dense rows from the contract shape (emissions cap,
    // availability, share bounds) are split into short chained equalities
    // with free auxiliary columns, which keeps the basis factors sparse. The
    // transform is exact; the dual of a split row is the dual of its final
    // aggregate row.
    struct XRow {
        std::vector<std::pair<int, Scalar>> terms;
        Relation rel = Relation::Equal;
        Scalar rhs = 0;
    };
    static constexpr int kSplitThreshold = 96;
    static constexpr int kChunk = 64;

    void build_rows(std::vector<XRow>& xrows) {
        const int n_orig_rows = static_cast<int>(lp_.rows.size());
        dual_source_.assign(n_orig_rows, -1);
        n_aux_ = 0;
        for (int i = 0; i < n_orig_rows; ++i) {
            const auto& row = lp_.rows[i];
            if (static_cast<int>(row.terms.size()) <= kSplitThreshold) {
                XRow x;
                for (const auto& [col, a] : row.terms)
                    x.terms.emplace_back(col, Scalar(a));
                x.rel = row.rel;
                x.rhs = Scalar(row.rhs);
                dual_source_[i] = static_cast<int>(xrows.size());
                xrows.push_back(std::move(x));
                continue;
            }
            XRow cap;
            cap.rel = row.rel;
            cap.rhs = Scalar(row.rhs);
            for (size_t start = 0; start < row.terms.size(); start += kChunk) {
                const int aux = n_struct_ + n_aux_++;
                XRow chunk;
                chunk.rel = Relation::Equal;
                chunk.rhs = 0;
                const size_t end = std::min(row.terms.size(), start + kChunk);
                for (size_t k = start; k < end; ++k)
                    chunk.terms.emplace_back(row.terms[k].first, Scalar(row.terms[k].second));
                chunk.terms.emplace_back(aux, Scalar(-1));
                xrows.push_back(std::move(chunk));
                cap.terms.emplace_back(aux, Scalar(1));
            }
            dual_source_[i] = static_cast<int>(xrows.size());
            xrows.push_back(std::move(cap));
        }
    }

    void build() {
        n_struct_ = lp_.num_vars();
        std::vector<XRow> xrows;
        build_rows(xrows);
        m_ = static_cast<int>(xrows.size());
        aux_end_ = n_struct_ + n_aux_;
        slack_end_ = aux_end_ + m_;

        row_scale_.assign(m_, Scalar(1));
        col_scale_.assign(aux_end_, Scalar(1));
        for (int i = 0; i < m_; ++i) {
            Scalar mx = 0;
            for (const auto& [col, a] : xrows[i].terms)
                mx = std::max(mx, std::abs(a));
            row_scale_[i] = Scalar(1) / pow2_scale(mx);
        }
        std::vector<Scalar> col_max(aux_end_, Scalar(0));
        for (int i = 0; i < m_; ++i)
            for (const auto& [col, a] : xrows[i].terms)
                col_max[col] = std::max(col_max[col], std::abs(a) * row_scale_[i]);
        for (int j = 0; j < aux_end_; ++j)
            col_scale_[j] = Scalar(1) / pow2_scale(col_max[j]);

        // Columns: structurals, aux, then one slack per row, then artificials.
        std::vector<Eigen::Triplet<Scalar>> trip;
        for (int i = 0; i < m_; ++i)
            for (const auto& [col, a] : xrows[i].terms)
                trip.emplace_back(i, col, a * row_scale_[i] * col_scale_[col]);
        for (int i = 0; i < m_; ++i)
            trip.emplace_back(i, aux_end_ + i, Scalar(1));

        lower_.assign(slack_end_, Scalar(0));
        upper_.assign(slack_end_, Scalar(0));
        for (int j = 0; j < n_struct_; ++j) {
            lower_[j] = Scalar(lp_.lower[j]) / col_scale_[j];
            upper_[j] = Scalar(lp_.upper[j]) / col_scale_[j];
        }
        for (int j = n_struct_; j < aux_end_; ++j) {
            lower_[j] = -inf();
            upper_[j] = inf();
        }
        rhs_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            rhs_[i] = xrows[i].rhs * row_scale_[i];
            switch (xrows[i].rel) {
            case Relation::LessEq:
                lower_[aux_end_ + i] = Scalar(0);
                upper_[aux_end_ + i] = inf();
                break;
            case Relation::GreaterEq:
                lower_[aux_end_ + i] = -inf();
                upper_[aux_end_ + i] = Scalar(0);
                break;
            case Relation::Equal:
                lower_[aux_end_ + i] = Scalar(0);
                upper_[aux_end_ + i] = Scalar(0);
                break;
            }
        }

        // Nonbasic start: every column at its finite bound nearest zero.
        x_.assign(slack_end_, Scalar(0));
        for (int j = 0; j < slack_end_; ++j)
            x_[j] = initial_value(j);

        // Residual per row decides slack-basic vs artificial-basic start.
        Vec act = Vec::Zero(m_);
        {
            SpMat tmp(m_, slack_end_);
            tmp.setFromTriplets(trip.begin(), trip.end());
            for (int j = 0; j < n_struct_; ++j)
                if (x_[j] != Scalar(0))
                    for (typename SpMat::InnerIterator it(tmp, j); it; ++it)
                        act[it.row()] += it.value() * x_[j];
        }

        basis_.assign(m_, -1);
        where_basic_.assign(slack_end_, -1);
        int n_art = 0;
        std::vector<Eigen::Triplet<Scalar>> art_trip;
        for (int i = 0; i < m_; ++i) {
            const Scalar resid = rhs_[i] - act[i];
            const int s = aux_end_ + i;
            if (resid >= lower_[s] - opt_.tol_feas && resid <= upper_[s] + opt_.tol_feas) {
                basis_[i] = s;
                x_[s] = resid;
            } else {
                const Scalar pinned = std::clamp(resid, lower_[s], upper_[s]);
                x_[s] = pinned;
                const Scalar gap = resid - pinned;
                art_trip.emplace_back(i, n_art, gap >= 0 ? Scalar(1) : Scalar(-1));
                basis_[i] = slack_end_ + n_art;
                ++n_art;
            }
        }
        n_total_ = slack_end_ + n_art;

        A_.resize(m_, n_total_);
        for (const auto& t : art_trip)
            trip.emplace_back(t.row(), slack_end_ + t.col(), t.value());
        A_.setFromTriplets(trip.begin(), trip.end());
        A_.makeCompressed();

        lower_.resize(n_total_, Scalar(0));
        upper_.resize(n_total_, inf());
        x_.resize(n_total_, Scalar(0));
        where_basic_.resize(n_total_, -1);
        for (int i = 0; i < m_; ++i) {
            where_basic_[basis_[i]] = i;
            if (basis_[i] >= slack_end_)
                x_[basis_[i]] = std::abs(rhs_[i] - act[i] - x_[aux_end_ + i]);
        }

        scratch_.resize(m_);
        cost_.assign(n_total_, Scalar(0));
        for (int j = 0; j < n_struct_; ++j)
            cost_[j] = Scalar(lp_.objective[j]) * col_scale_[j];
        phase1_cost_.assign(n_total_, Scalar(0));
        for (int j = slack_end_; j < n_total_; ++j)
            phase1_cost_[j] = Scalar(1);

        factorize();
        recompute_basics();
    }

    static Scalar inf() { return std::numeric_limits<Scalar>::infinity(); }

    Scalar initial_value(int j) const {
        if (std::isfinite(lower_[j]) && std::isfinite(upper_[j]))
            return std::abs(lower_[j]) <= std::abs(upper_[j]) ? lower_[j] : upper_[j];
        if (std::isfinite(lower_[j]))
            return lower_[j];
        if (std::isfinite(upper_[j]))
            return upper_[j];
        return Scalar(0);
    }

    void factorize() {
        etas_.clear();
        if (m_ == 0)
            return;
        SpMat B(m_, m_);
        std::vector<Eigen::Triplet<Scalar>> trip;
        for (int i = 0; i < m_; ++i)
            for (typename SpMat::InnerIterator it(A_, basis_[i]); it; ++it)
                trip.emplace_back(it.row(), i, it.value());
        B.setFromTriplets(trip.begin(), trip.end());
        B.makeCompressed();
        if (!lu_.factorize(B)) {
            std::vector<int> seen(n_total_, 0);
            int duplicates = 0;
            for (int i = 0; i < m_; ++i)
                duplicates += seen[basis_[i]]++ ? 1 : 0;
            throw NumericalBreakdown(
                "basis factorization failed (singular basis) at iteration " +
                std::to_string(iterations_) + ", " + std::to_string(duplicates) +
                " duplicate basis columns, " + std::to_string(m_) + " rows");
        }
    }

    void ftran(Vec& v) const {
        if (m_ == 0)
            return;
        lu_.solve(v, scratch_);
        for (const auto& e : etas_) {
            const Scalar vr = v[e.r] / e.wr;
            if (vr != Scalar(0))
                for (const auto& [i, wi] : e.w)
                    v[i] -= wi * vr;
            v[e.r] = vr;
        }
    }

    void btran(Vec& v) const {
        if (m_ == 0)
            return;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            Scalar dot = 0;
            for (const auto& [i, wi] : it->w)
                dot += wi * v[i];
            v[it->r] = (v[it->r] - dot) / it->wr;
        }
        lu_.solve_transpose(v, scratch_);
    }

    void recompute_basics() {
        if (m_ == 0)
            return;
        Vec v = rhs_;
        for (int j = 0; j < n_total_; ++j)
            if (where_basic_[j] < 0 && x_[j] != Scalar(0))
                for (typename SpMat::InnerIterator it(A_, j); it; ++it)
                    v[it.row()] -= it.value() * x_[j];
        ftran(v);
        for (int i = 0; i < m_; ++i)
            x_[basis_[i]] = v[i];
    }

    Vec basic_costs(const std::vector<Scalar>& c) const {
        Vec cb(m_);
        for (int i = 0; i < m_; ++i)
            cb[i] = c[basis_[i]];
        return cb;
    }

    Scalar column_dot(const Vec& y, int j) const {
        Scalar d = 0;
        for (typename SpMat::InnerIterator it(A_, j); it; ++it)
            d += it.value() * y[it.row()];
        return d;
    }

    Scalar objective_of(const std::vector<Scalar>& c) const {
        Scalar z = 0;
        for (int j = 0; j < n_total_; ++j)
            if (c[j] != Scalar(0))
                z += c[j] * x_[j];
        return z;
    }

    // Signed reduced-cost violation; 0 when the column may not enter.
    Scalar eligible(const Vec& y, const std::vector<Scalar>& c, int j) const {
        if (where_basic_[j] >= 0 || lower_[j] == upper_[j])
            return Scalar(0);
        const int* outer = A_.outerIndexPtr();
        const int* inner = A_.innerIndexPtr();
        const Scalar* vals = A_.valuePtr();
        Scalar d = c[j];
        for (int k = outer[j]; k < outer[j + 1]; ++k)
            d -= vals[k] * y[inner[k]];
        const bool at_lower = x_[j] <= lower_[j] + opt_.tol_feas;
        const bool at_upper = x_[j] >= upper_[j] - opt_.tol_feas;
        if (!std::isfinite(lower_[j]) && !std::isfinite(upper_[j]))
            return std::abs(d) > opt_.tol_opt ? -d : Scalar(0);
        if (at_lower && d < -opt_.tol_opt)
            return -d;
        if (at_upper && d > opt_.tol_opt)
            return -d;
        return Scalar(0);
    }

    // Entering-candidate search. Returns column or -1 when optimal. Blockwise
    // Dantzig over raw CSC arrays; Bland's rule takes the least eligible index.
    int price(const Vec& y, const std::vector<Scalar>& c, bool bland) const {
        if (bland) {
            for (int j = 0; j < n_total_; ++j)
                if (eligible(y, c, j) != 0)
                    return j;
            return -1;
        }
        const int block = std::max(opt_.pricing_block, 1);
        const int nblocks = (n_total_ + block - 1) / block;
        for (int b = 0; b < nblocks; ++b) {
            const int blk = (price_start_ + b) % nblocks;
            const int lo = blk * block;
            const int hi = std::min(n_total_, lo + block);
            int best = -1;
            Scalar best_v = 0;
            for (int j = lo; j < hi; ++j) {
                const Scalar v = std::abs(eligible(y, c, j));
                if (v > best_v) {
                    best_v = v;
                    best = j;
                }
            }
            if (best >= 0) {
                price_start_ = blk;
                return best;
            }
        }
        return -1;
    }

    SolveStatus solve_phase(bool phase1) {
        const std::vector<Scalar>& c = phase1 ? phase1_cost_ : cost_;
        long stall = 0;
        bool bland = false;
        Scalar z = objective_of(c); // tracked incrementally, resynced at refactorization
        Scalar last_obj = z;
        Vec y(m_), w(m_);

        while (true) {
            if (phase1 && z <= phase1_tolerance())
                return SolveStatus::Optimal;
            if (++iterations_ > opt_.max_iterations)
                throw NumericalBreakdown("simplex iteration limit exceeded");

            for (int i = 0; i < m_; ++i)
                y[i] = c[basis_[i]];
            btran(y);
            const int q = price(y, c, bland);
            if (q < 0) {
                if (phase1)
                    return objective_of(c) <= phase1_tolerance() ? SolveStatus::Optimal
                                                                 : SolveStatus::Infeasible;
                return SolveStatus::Optimal;
            }
            const Scalar dq = c[q] - column_dot(y, q);
            // Direction of travel for the entering variable.
            const bool at_lower = x_[q] <= lower_[q] + opt_.tol_feas && std::isfinite(lower_[q]);
            const Scalar dir = at_lower || (!std::isfinite(lower_[q]) && dq < 0)
                                   ? Scalar(1)
                                   : Scalar(-1);

            w.setZero(m_);
            for (typename SpMat::InnerIterator it(A_, q); it; ++it)
                w[it.row()] = it.value();
            ftran(w);

            // Two-pass ratio test: find the tightest blocking step, then pick
            // the numerically strongest pivot among the near-tied blockers
            // (least column index under Bland's rule, preserving anti-cycling).
            Scalar own_limit = upper_[q] - lower_[q]; // bound-to-bound flip distance
            if (!std::isfinite(own_limit))
                own_limit = inf();
            auto ratio_of = [&](int i, Scalar step) -> Scalar {
                const int bj = basis_[i];
                Scalar ratio;
                if (step > 0) {
                    if (!std::isfinite(lower_[bj]))
                        return inf();
                    ratio = (x_[bj] - lower_[bj]) / step;
                } else {
                    if (!std::isfinite(upper_[bj]))
                        return inf();
                    ratio = (x_[bj] - upper_[bj]) / step;
                }
                return std::max(ratio, Scalar(0));
            };
            Scalar t_max = inf();
            for (int i = 0; i < m_; ++i) {
                const Scalar step = dir * w[i];
                if (std::abs(step) <= opt_.pivot_tol)
                    continue;
                t_max = std::min(t_max, ratio_of(i, step));
            }
            int leave_pos = -1;
            if (std::isfinite(t_max)) {
                Scalar best_pivot = 0;
                for (int i = 0; i < m_; ++i) {
                    const Scalar step = dir * w[i];
                    if (std::abs(step) <= opt_.pivot_tol)
                        continue;
                    if (ratio_of(i, step) > t_max + opt_.tol_feas)
                        continue;
                    if (bland) { // exact minimum, least column index
                        if (ratio_of(i, step) <= t_max &&
                            (leave_pos < 0 || basis_[i] < basis_[leave_pos]))
                            leave_pos = i;
                    } else if (std::abs(w[i]) > best_pivot ||
                               (std::abs(w[i]) == best_pivot && leave_pos >= 0 &&
                                basis_[i] < basis_[leave_pos])) {
                        best_pivot = std::abs(w[i]);
                        leave_pos = i;
                    }
                }
            }

            if (leave_pos < 0 && !std::isfinite(own_limit))
                return unbounded(q, dir, w, phase1);

            if (leave_pos < 0 || own_limit <= t_max) {
                // Bound-to-bound flip, basis unchanged.
                apply_step(q, dir, own_limit, w);
                x_[q] = dir > 0 ? upper_[q] : lower_[q];
                z += dq * dir * own_limit;
            } else {
                const Scalar pivot = w[leave_pos];
                // A pivot small relative to the column poisons the eta chain
                // (its eta scales errors by wmax/|pivot|). Retry on fresh
                // numbers when stale; once accepted, reset the chain at once.
                const Scalar wmax = w.template lpNorm<Eigen::Infinity>();
                const bool unstable = std::abs(pivot) < Scalar(1e-5) * wmax;
                if ((unstable || std::abs(pivot) < opt_.pivot_tol) && !etas_.empty()) {
                    factorize();
                    recompute_basics();
                    z = objective_of(c);
                    --iterations_;
                    continue;
                }
                if (std::abs(pivot) < opt_.pivot_tol)
                    throw NumericalBreakdown("pivot " + std::to_string(std::abs(double(pivot))) +
                                             " below tolerance");
                const int leaving = basis_[leave_pos];
                apply_step(q, dir, t_max, w);
                z += dq * dir * t_max;
                const Scalar hit = dir * pivot > 0 ? lower_[leaving] : upper_[leaving];
                x_[leaving] = hit;
                basis_[leave_pos] = q;
                where_basic_[q] = leave_pos;
                where_basic_[leaving] = -1;
                if (phase1 && leaving >= slack_end_) { // retired artificial
                    lower_[leaving] = upper_[leaving] = Scalar(0);
                    x_[leaving] = Scalar(0);
                }
                push_eta(leave_pos, w);
                if (unstable || static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
                    factorize();
                    recompute_basics();
                    z = objective_of(c);
                }
            }

            if (z < last_obj - stall_epsilon()) {
                last_obj = z;
                stall = 0;
                bland = false;
            } else if (++stall > opt_.stall_limit) {
                bland = true;
            }
        }
    }

    Scalar phase1_tolerance() const {
        Scalar b = 0;
        for (int i = 0; i < m_; ++i)
            b = std::max(b, std::abs(rhs_[i]));
        return opt_.tol_feas * std::max(Scalar(1), b);
    }

    Scalar stall_epsilon() const { return Scalar(1e-12); }

    void apply_step(int q, Scalar dir, Scalar t, const Vec& w) {
        if (t == Scalar(0))
            return;
        for (int i = 0; i < m_; ++i)
            if (w[i] != Scalar(0))
                x_[basis_[i]] -= dir * t * w[i];
        x_[q] += dir * t;
    }

    void push_eta(int r, const Vec& w) {
        Eta e;
        e.r = r;
        e.wr = w[r];
        for (int i = 0; i < m_; ++i)
            if (i != r && std::abs(w[i]) > Scalar(1e-14))
                e.w.emplace_back(i, w[i]);
        etas_.push_back(std::move(e));
    }

    SolveStatus unbounded(int q, Scalar dir, const Vec& w, bool phase1) {
        if (phase1)
            throw NumericalBreakdown("phase-1 objective unbounded (inconsistent state)");
        unbounded_ray_ = Eigen::VectorXd::Zero(n_struct_);
        if (q < n_struct_)
            unbounded_ray_[q] = double(dir * col_scale_[q]);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_ && w[i] != Scalar(0))
                unbounded_ray_[basis_[i]] = double(-dir * w[i] * col_scale_[basis_[i]]);
        return SolveStatus::Unbounded;
    }

    Eigen::VectorXd extract_values() const {
        Eigen::VectorXd v(n_struct_);
        for (int j = 0; j < n_struct_; ++j)
            v[j] = double(x_[j] * col_scale_[j]);
        return v;
    }

    Eigen::VectorXd extract_duals(const std::vector<Scalar>& c) const {
        Vec y = basic_costs(c);
        btran(y);
        Eigen::VectorXd out(lp_.rows.size());
        for (size_t i = 0; i < lp_.rows.size(); ++i) {
            const int xi = dual_source_[i];
            out[static_cast<int>(i)] = double(y[xi] * row_scale_[xi]);
        }
        return out;
    }

    Eigen::VectorXd extract_reduced_costs(const Eigen::VectorXd& duals) const {
        Eigen::VectorXd d(n_struct_);
        for (int j = 0; j < n_struct_; ++j)
            d[j] = lp_.objective[j];
        for (int i = 0; i < m_; ++i)
            for (const auto& [col, a] : lp_.rows[i].terms)
                d[col] -= duals[i] * a;
        return d;
    }

    const LPProblem& lp_;
    SimplexOptions opt_;
    int m_ = 0, n_struct_ = 0, n_aux_ = 0, aux_end_ = 0, slack_end_ = 0, n_total_ = 0;
    std::vector<int> dual_source_; // original row -> transformed row carrying its dual
    SpMat A_;
    Vec rhs_;
    std::vector<Scalar> lower_, upper_, x_, cost_, phase1_cost_;
    std::vector<Scalar> row_scale_, col_scale_;
    std::vector<int> basis_, where_basic_;
    std::vector<Eta> etas_;
    GpLu<Scalar> lu_;
    mutable Vec scratch_;

    Eigen::VectorXd unbounded_ray_;
    long iterations_ = 0;
    mutable int price_start_ = 0;
};

} // namespace detail

} // namespace eroiplan
