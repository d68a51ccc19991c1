#include <doctest.h>

#include "eroiplan/pce.hpp"
#include "eroiplan/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace eroiplan;

namespace {

// Gauss-Legendre nodes/weights via the Jacobi matrix (test-only quadrature,
// independent of the recurrence inside legendre_normalized's callers).
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes = es.eigenvalues();
    weights.resize(n);
    for (int i = 0; i < n; ++i)
        weights[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
}

struct IshigamiAnalytic {
    double mean, variance;
    Eigen::Vector3d total_order;
};

IshigamiAnalytic ishigami_analytic(double a, double b) {
    const double pi4 = std::pow(M_PI, 4), pi8 = std::pow(M_PI, 8);
    const double v1 = b * pi4 / 5.0 + b * b * pi8 / 50.0 + 0.5;
    const double v2 = a * a / 8.0;
    const double v13 = 8.0 * b * b * pi8 / 225.0;
    const double v = v1 + v2 + v13;
    return {a / 2.0, v, Eigen::Vector3d((v1 + v13) / v, v2 / v, v13 / v)};
}

// LHS design + responses for the Ishigami function on U[-pi,pi]^3.
void ishigami_design(int n, std::uint64_t seed, Eigen::MatrixXd& X, Eigen::VectorXd& y) {
    const double a = 7.0, b = 0.1;
    Rng rng(seed);
    const Eigen::MatrixXd u = latin_hypercube(n, 3, rng);
    X.resize(n, 3);
    y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j)
            X(i, j) = -M_PI + 2.0 * M_PI * u(i, j);
        y[i] = std::sin(X(i, 0)) + a * std::pow(std::sin(X(i, 1)), 2) +
               b * std::pow(X(i, 2), 4) * std::sin(X(i, 0));
    }
}

const Eigen::VectorXd kMinusPi = Eigen::VectorXd::Constant(3, -M_PI);
const Eigen::VectorXd kPlusPi = Eigen::VectorXd::Constant(3, M_PI);

} // namespace

TEST_CASE("normalized Legendre basis is orthonormal to 1e-10") {
    const int max_degree = 8;
    Eigen::VectorXd nodes, weights;
    gauss_legendre(24, nodes, weights); // exact for polynomials up to degree 47
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(max_degree + 1, max_degree + 1);
    for (int q = 0; q < nodes.size(); ++q) {
        const Eigen::VectorXd psi = pce::legendre_normalized(max_degree, nodes[q]);
        gram += 0.5 * weights[q] * psi * psi.transpose(); // uniform density 1/2
    }
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; j <= max_degree; ++j) {
            if (i == j)
                CHECK(std::abs(gram(i, j) - 1.0) <= 1e-10);
            else
                CHECK(std::abs(gram(i, j)) <= 1e-10);
        }
}

TEST_CASE("total-degree multi-indices: counts and ordering") {
    const auto basis = pce::total_degree_multi_indices(3, 2);
    CHECK(basis.size() == 10); // 1 + 3 + 6
    CHECK(basis[0] == std::vector<int>({0, 0, 0}));
    // Degree-1 block before degree-2 block.
    for (size_t k = 1; k <= 3; ++k)
        CHECK(basis[k][0] + basis[k][1] + basis[k][2] == 1);
    for (size_t k = 4; k < basis.size(); ++k)
        CHECK(basis[k][0] + basis[k][1] + basis[k][2] == 2);
    CHECK(pce::basis_size(138, 1) == 139);
}

TEST_CASE("latin hypercube sampling") {
    SUBCASE("n=4, d=1 puts one point in each quartile") {
        Rng rng(11);
        const Eigen::MatrixXd s = latin_hypercube(4, 1, rng);
        std::vector<bool> hit(4, false);
        for (int i = 0; i < 4; ++i) {
            const int q = static_cast<int>(s(i, 0) * 4.0);
            REQUIRE(q >= 0);
            REQUIRE(q < 4);
            hit[q] = true;
        }
        for (bool h : hit)
            CHECK(h);
    }
    SUBCASE("same seed reproduces the matrix bit for bit") {
        Rng a(123), b(123);
        const Eigen::MatrixXd sa = latin_hypercube(32, 5, a);
        const Eigen::MatrixXd sb = latin_hypercube(32, 5, b);
        CHECK((sa - sb).lpNorm<Eigen::Infinity>() == 0.0);
    }
    SUBCASE("per-dimension means concentrate near the midpoint") {
        Rng rng(999);
        const Eigen::MatrixXd s = latin_hypercube(1000, 2, rng);
        CHECK(std::abs(s.col(0).mean() - 0.5) < 0.02);
        CHECK(std::abs(s.col(1).mean() - 0.5) < 0.02);
    }
}

TEST_CASE("fit: constant response") {
    Rng rng(5);
    const int n = 50;
    Eigen::MatrixXd X = latin_hypercube(n, 2, rng);
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(n, 3.25);
    const auto s = pce::fit_pce<double>(X, y, 1, Eigen::VectorXd::Zero(2),
                                        Eigen::VectorXd::Ones(2));
    CHECK(s.coefficients[0] == doctest::Approx(3.25).epsilon(1e-12));
    for (int k = 1; k < s.coefficients.size(); ++k)
        CHECK(std::abs(s.coefficients[k]) <= 1e-10);
    CHECK(pce::moments(s).variance <= 1e-18);
}

TEST_CASE("fit: f(x) = x1 on U[-1,1]^2 recovers variance 1/3") {
    Rng rng(6);
    const int n = 60;
    Eigen::MatrixXd u = latin_hypercube(n, 2, rng);
    Eigen::MatrixXd X = 2.0 * u.array() - 1.0;
    const Eigen::VectorXd y = X.col(0);
    const auto s = pce::fit_pce<double>(X, y, 1, Eigen::VectorXd::Constant(2, -1.0),
                                        Eigen::VectorXd::Ones(2));
    // Single degree-1 coefficient 1/sqrt(3) on the normalized basis.
    // Basis order is [(0,0), (0,1), (1,0)], so the x1 term sits at index 2.
    CHECK(s.coefficients[2] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(std::abs(s.coefficients[1]) <= 1e-10);
    CHECK(pce::moments(s).variance == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    const Eigen::VectorXd st = pce::sobol_total(s);
    CHECK(st[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(st[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(s.loo_error <= 1e-12);
}

TEST_CASE("fit preconditions and degeneracy") {
    SUBCASE("fewer than 2x basis samples is rejected") {
        Eigen::MatrixXd X(5, 2);
        X.setRandom();
        Eigen::VectorXd y(5);
        y.setRandom();
        CHECK_THROWS_AS(pce::fit_pce<double>(X, y, 1, Eigen::VectorXd::Constant(2, -1.0),
                                             Eigen::VectorXd::Ones(2)),
                        std::invalid_argument);
    }
    SUBCASE("zero-width input range makes the design rank deficient") {
        Rng rng(77);
        const int n = 60;
        Eigen::MatrixXd X = latin_hypercube(n, 2, rng);
        X.col(1).setConstant(0.5); // frozen parameter
        Eigen::VectorXd y = X.col(0);
        CHECK_THROWS_AS(pce::fit_pce<double>(X, y, 1, Eigen::VectorXd::Zero(2),
                                             (Eigen::VectorXd(2) << 1.0, 0.5).finished()),
                        pce::RankDeficient);
    }
}

TEST_CASE("Ishigami at order 2: ranking holds, inadequacy is reported") {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    ishigami_design(300, 777, X, y);
    const auto s = pce::fit_pce<double>(X, y, 2, kMinusPi, kPlusPi);
    CHECK(s.loo_error > 0.1); // the degree-2 surrogate visibly underfits
    const Eigen::VectorXd st = pce::sobol_total(s);
    CHECK(st[0] > st[1]); // x1 dominates x2 even at low order
}

TEST_CASE("Ishigami at degree 7 matches the analytic decomposition") {
    const IshigamiAnalytic exact = ishigami_analytic(7.0, 0.1);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    ishigami_design(1000, 777, X, y);
    const auto s = pce::fit_pce<double>(X, y, 7, kMinusPi, kPlusPi);
    const pce::Moments m = pce::moments(s);
    CHECK(std::abs(m.mean - exact.mean) <= 0.01 * exact.mean);
    CHECK(std::abs(m.variance - exact.variance) <= 0.02 * exact.variance);
    const Eigen::VectorXd st = pce::sobol_total(s);
    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(st[j] - exact.total_order[j]) <= 0.03);
    CHECK(s.loo_error < 0.05);
}

TEST_CASE("moments are coefficient identities") {
    pce::Surrogate<double> s;
    s.order = 1;
    s.basis = pce::total_degree_multi_indices(2, 1);
    s.coefficients = (Eigen::VectorXd(3) << 2.0, 3.0, 4.0).finished();
    s.input_lo = Eigen::VectorXd::Constant(2, -1.0);
    s.input_hi = Eigen::VectorXd::Ones(2);
    const pce::Moments m = pce::moments(s);
    CHECK(m.mean == 2.0);
    CHECK(m.variance == 25.0);
}

TEST_CASE("sobol_total") {
    SUBCASE("additive responses split the variance and sum to one") {
        Rng rng(31);
        const int n = 80;
        Eigen::MatrixXd u = latin_hypercube(n, 2, rng);
        Eigen::MatrixXd X = 2.0 * u.array() - 1.0;
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i)
            y[i] = X(i, 0) * X(i, 0) + 0.5 * X(i, 1); // exactly representable at order 2
        const auto s = pce::fit_pce<double>(X, y, 2, Eigen::VectorXd::Constant(2, -1.0),
                                            Eigen::VectorXd::Ones(2));
        const Eigen::VectorXd st = pce::sobol_total(s);
        CHECK(st.sum() == doctest::Approx(1.0).epsilon(2e-2));
        for (int j = 0; j < 2; ++j) {
            CHECK(st[j] >= 0.0);
            CHECK(st[j] <= 1.0 + 1e-6);
        }
    }
    SUBCASE("flat surrogate raises ZeroVariance") {
        pce::Surrogate<double> s;
        s.order = 1;
        s.basis = pce::total_degree_multi_indices(1, 1);
        s.coefficients = (Eigen::VectorXd(2) << 5.0, 0.0).finished();
        s.input_lo = Eigen::VectorXd::Constant(1, -1.0);
        s.input_hi = Eigen::VectorXd::Ones(1);
        CHECK_THROWS_AS(pce::sobol_total(s), pce::ZeroVariance);
    }
}

TEST_CASE("pdf_estimate") {
    SUBCASE("constant surrogate lands in a single bin") {
        pce::Surrogate<double> s;
        s.order = 1;
        s.basis = pce::total_degree_multi_indices(1, 1);
        s.coefficients = (Eigen::VectorXd(2) << 4.5, 0.0).finished();
        s.input_lo = Eigen::VectorXd::Constant(1, -1.0);
        s.input_hi = Eigen::VectorXd::Ones(1);
        const pce::Histogram h = pce::pdf_estimate(s, 10000, 30, 1);
        CHECK(h.counts.size() == 1);
        CHECK(h.counts[0] == 10000.0);
        CHECK(h.mean == doctest::Approx(4.5));
        CHECK(h.std_dev == doctest::Approx(0.0));
    }
    SUBCASE("linear surrogate pushes uniform input to a uniform histogram") {
        pce::Surrogate<double> s;
        s.order = 1;
        s.basis = pce::total_degree_multi_indices(1, 1);
        s.coefficients = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
        s.input_lo = Eigen::VectorXd::Constant(1, -1.0);
        s.input_hi = Eigen::VectorXd::Ones(1);
        const long n = 200000;
        const int bins = 20;
        const pce::Histogram h = pce::pdf_estimate(s, n, bins, 2);
        const double expected = static_cast<double>(n) / bins;
        for (int b = 0; b < bins; ++b)
            CHECK(std::abs(h.counts[b] - expected) < 5.0 * std::sqrt(expected));
    }
    SUBCASE("Monte Carlo moments agree with the coefficient identities to 0.5%") {
        Eigen::MatrixXd X;
        Eigen::VectorXd y;
        ishigami_design(300, 424242, X, y);
        const auto s = pce::fit_pce<double>(X, y, 2, kMinusPi, kPlusPi);
        const pce::Moments m = pce::moments(s);
        const pce::Histogram h = pce::pdf_estimate(s, 1000000, 60, 3);
        CHECK(std::abs(h.mean - m.mean) <= 0.005 * std::abs(m.mean));
        CHECK(std::abs(h.std_dev - std::sqrt(m.variance)) <= 0.005 * std::sqrt(m.variance));
    }
}
