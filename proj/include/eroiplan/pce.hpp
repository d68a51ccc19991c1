#pragma once

#include "eroiplan/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace eroiplan::pce {

class RankDeficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroVariance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Normalized Legendre values psi_0..psi_k at xi in [-1,1]:
/// psi_k = sqrt(2k+1) * P_k, orthonormal under the uniform density 1/2.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> legendre_normalized(int max_degree, Scalar xi) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> psi(max_degree + 1);
    Scalar p_prev = Scalar(1), p = xi;
    psi[0] = Scalar(1);
    if (max_degree >= 1)
        psi[1] = std::sqrt(Scalar(3)) * xi;
    for (int k = 1; k < max_degree; ++k) {
        const Scalar p_next = ((2 * k + 1) * xi * p - k * p_prev) / Scalar(k + 1);
        p_prev = p;
        p = p_next;
        psi[k + 1] = std::sqrt(Scalar(2 * (k + 1) + 1)) * p_next;
    }
    return psi;
}

/// All multi-indices over d dimensions with total degree <= order, sorted by
/// total degree then lexicographically; the first entry is the constant term.
inline std::vector<std::vector<int>> total_degree_multi_indices(int d, int order) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(d, 0);
    auto rec = [&](auto&& self, int dim, int remaining) -> void {
        if (dim == d) {
            if (remaining == 0)
                out.push_back(idx);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            idx[dim] = k;
            self(self, dim + 1, remaining - k);
        }
        idx[dim] = 0;
    };
    for (int degree = 0; degree <= order; ++degree)
        rec(rec, 0, degree);
    return out;
}

inline long basis_size(int d, int order) {
    return static_cast<long>(total_degree_multi_indices(d, order).size());
}

struct Histogram {
    Eigen::VectorXd edges;  // bins + 1 entries
    Eigen::VectorXd counts; // per bin
    double mean = 0.0;
    double std_dev = 0.0;
    long samples = 0;
};

/// Polynomial chaos surrogate on orthonormal Legendre terms with the affine
/// input map [lo,hi] -> [-1,1] per dimension.
template <typename Scalar>
struct Surrogate {
    int order = 0;
    std::vector<std::vector<int>> basis;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> input_lo, input_hi;
    double loo_error = 0.0; // relative leave-one-out error of the fit

    int dims() const { return static_cast<int>(input_lo.size()); }

    Scalar to_standard(int dim, Scalar x) const {
        const Scalar lo = input_lo[dim], hi = input_hi[dim];
        if (hi == lo)
            return Scalar(0);
        return Scalar(2) * (x - lo) / (hi - lo) - Scalar(1);
    }

    /// Evaluate at one physical-unit point.
    Scalar operator()(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const {
        return evaluate_standard(standardize(x));
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1>
    standardize(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xi(dims());
        for (int j = 0; j < dims(); ++j)
            xi[j] = to_standard(j, x[j]);
        return xi;
    }

    Scalar evaluate_standard(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& xi) const {
        int max_degree = 0;
        for (const auto& alpha : basis)
            for (int a : alpha)
                max_degree = std::max(max_degree, a);
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> psi(dims(), max_degree + 1);
        for (int j = 0; j < dims(); ++j)
            psi.row(j) = legendre_normalized(max_degree, xi[j]).transpose();
        Scalar y = 0;
        for (size_t k = 0; k < basis.size(); ++k) {
            Scalar term = coefficients[static_cast<int>(k)];
            for (int j = 0; j < dims(); ++j)
                if (basis[k][j] > 0)
                    term *= psi(j, basis[k][j]);
            y += term;
        }
        return y;
    }
};

/// Regression matrix of basis values at standardized sample points.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
design_matrix(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& xi,
              const std::vector<std::vector<int>>& basis) {
    const int n = static_cast<int>(xi.rows());
    const int d = static_cast<int>(xi.cols());
    int max_degree = 0;
    for (const auto& alpha : basis)
        for (int a : alpha)
            max_degree = std::max(max_degree, a);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> phi(n, basis.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> psi(d, max_degree + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j)
            psi.row(j) = legendre_normalized<Scalar>(max_degree, xi(i, j)).transpose();
        for (size_t k = 0; k < basis.size(); ++k) {
            Scalar v = 1;
            for (int j = 0; j < d; ++j)
                if (basis[k][j] > 0)
                    v *= psi(j, basis[k][j]);
            phi(i, static_cast<int>(k)) = v;
        }
    }
    return phi;
}

/// Least-squares fit on physical-unit samples X (n x d) against responses y.
/// Requires n >= 2 * basis size; throws RankDeficient when the regression
/// matrix loses rank (degenerate design). The relative leave-one-out error is
/// computed from the hat-matrix diagonal.
template <typename Scalar>
Surrogate<Scalar> fit_pce(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y, int order,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lo,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& hi) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const int n = static_cast<int>(X.rows());
    const int d = static_cast<int>(X.cols());
    if (y.size() != n || lo.size() != d || hi.size() != d)
        throw std::invalid_argument("fit_pce: inconsistent design dimensions");

    Surrogate<Scalar> s;
    s.order = order;
    s.basis = total_degree_multi_indices(d, order);
    s.input_lo = lo;
    s.input_hi = hi;
    const int B = static_cast<int>(s.basis.size());
    if (n < 2 * B)
        throw std::invalid_argument("fit_pce: need at least 2x basis size samples (" +
                                    std::to_string(2 * B) + "), got " + std::to_string(n));

    Mat xi(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            xi(i, j) = s.to_standard(j, X(i, j));
    Mat phi = design_matrix<Scalar>(xi, s.basis);

    Eigen::ColPivHouseholderQR<Mat> qr(phi);
    if (qr.rank() < B)
        throw RankDeficient("fit_pce: regression matrix is rank deficient (" +
                            std::to_string(qr.rank()) + " < " + std::to_string(B) + ")");
    s.coefficients = qr.solve(y);

    // Leave-one-out residuals from the hat-matrix diagonal h_ii = |Q1 row|^2.
    Mat q1 = qr.householderQ() * Mat::Identity(n, B);
    Vec residual = y - phi * s.coefficients;
    Scalar num = 0;
    for (int i = 0; i < n; ++i) {
        const Scalar h = std::min(q1.row(i).squaredNorm(), Scalar(1) - Scalar(1e-12));
        const Scalar r = residual[i] / (Scalar(1) - h);
        num += r * r;
    }
    const Scalar mean_y = y.mean();
    Scalar var_y = 0;
    for (int i = 0; i < n; ++i)
        var_y += (y[i] - mean_y) * (y[i] - mean_y);
    s.loo_error = var_y > Scalar(0) ? double(num / var_y) : 0.0;
    return s;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Orthonormality makes the moments coefficient identities: the mean is the
/// constant coefficient and the variance the sum of squared non-constant
/// coefficients.
template <typename Scalar>
Moments moments(const Surrogate<Scalar>& s) {
    Moments m;
    m.mean = double(s.coefficients[0]);
    for (int k = 1; k < s.coefficients.size(); ++k)
        m.variance += double(s.coefficients[k]) * double(s.coefficients[k]);
    return m;
}

/// Total-order Sobol index per input: share of variance carried by every
/// basis term touching that input. Throws ZeroVariance for flat surrogates.
template <typename Scalar>
Eigen::VectorXd sobol_total(const Surrogate<Scalar>& s) {
    const Moments m = moments(s);
    if (m.variance <= 0.0)
        throw ZeroVariance("sobol_total: surrogate variance is zero");
    Eigen::VectorXd st = Eigen::VectorXd::Zero(s.dims());
    for (size_t k = 1; k < s.basis.size(); ++k) {
        const double c2 = double(s.coefficients[static_cast<int>(k)]) *
                          double(s.coefficients[static_cast<int>(k)]);
        for (int j = 0; j < s.dims(); ++j)
            if (s.basis[k][j] > 0)
                st[j] += c2;
    }
    return st / m.variance;
}

/// Monte Carlo pushforward of the surrogate: n uniform samples, histogram
/// over [min,max] plus running mean/std for the consistency check against
/// moments().
template <typename Scalar>
Histogram pdf_estimate(const Surrogate<Scalar>& s, long n, int bins, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(static_cast<size_t>(n));
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xi(s.dims());
    for (long i = 0; i < n; ++i) {
        for (int j = 0; j < s.dims(); ++j)
            xi[j] = Scalar(2) * Scalar(rng.uniform01()) - Scalar(1);
        values[static_cast<size_t>(i)] = double(s.evaluate_standard(xi));
    }
    Histogram h;
    h.samples = n;
    double lo = values[0], hi = values[0], sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    h.mean = sum / double(n);
    double ss = 0.0;
    for (double v : values)
        ss += (v - h.mean) * (v - h.mean);
    h.std_dev = std::sqrt(ss / double(n));

    if (!(hi > lo)) { // constant surrogate: one degenerate bin
        h.edges = Eigen::VectorXd::LinSpaced(2, lo - 0.5, lo + 0.5);
        h.counts = Eigen::VectorXd::Constant(1, double(n));
        return h;
    }
    bins = std::max(bins, 1);
    h.edges = Eigen::VectorXd::LinSpaced(bins + 1, lo, hi);
    h.counts = Eigen::VectorXd::Zero(bins);
    const double width = (hi - lo) / bins;
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::min(std::max(b, 0), bins - 1);
        h.counts[b] += 1.0;
    }
    return h;
}

} // namespace eroiplan::pce
