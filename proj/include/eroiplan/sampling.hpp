#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace eroiplan {

/// Seeded random stream with platform-independent draws. mt19937_64 output
/// is pinned by the standard and the uniform mappings below avoid the
/// implementation-defined std::uniform_*_distribution machinery, so a seed
/// reproduces bit-identical experiments everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), unbiased by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1)
            return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return r % n;
    }

private:
    std::mt19937_64 gen_;
};

/// Latin hypercube design on [0,1)^d: per dimension, one point in each of the
/// n strata with a random offset, strata shuffled independently. Draw order
/// is fixed (dimension-major) so a seed determines the matrix.
inline Eigen::MatrixXd latin_hypercube(int n, int d, Rng& rng) {
    Eigen::MatrixXd samples(n, d);
    std::vector<int> perm(n);
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        for (int i = 0; i < n; ++i)
            samples(i, j) = (perm[i] + rng.uniform01()) / n;
    }
    return samples;
}

} // namespace eroiplan
