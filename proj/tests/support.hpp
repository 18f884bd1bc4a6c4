#pragma once

#include "kolmo/structure.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <random>

namespace kolmo::test {

// K1: nilpotent, homogeneous. K2: B² = B, non-homogeneous.
inline KolmogorovStructure k1()
{
    Eigen::MatrixXd b(2, 2);
    b << 0, 0, 1, 0;
    return validate_structure(b, {1, 1});
}

inline KolmogorovStructure k2()
{
    Eigen::MatrixXd b(2, 2);
    b << 1, 0, 1, 0;
    return validate_structure(b, {1, 1});
}

inline std::shared_ptr<const KolmogorovStructure> share(KolmogorovStructure s)
{
    return std::make_shared<const KolmogorovStructure>(std::move(s));
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * std::uniform_real_distribution<double>()(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    Eigen::VectorXd vector(Eigen::Index n, double lo = -1.0, double hi = 1.0)
    {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i) = uniform(lo, hi);
        }
        return v;
    }

    Eigen::MatrixXd matrix(Eigen::Index r, Eigen::Index c, double lo = -1.0, double hi = 1.0)
    {
        Eigen::MatrixXd m(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < c; ++j) {
                m(i, j) = uniform(lo, hi);
            }
        }
        return m;
    }

    GroupPoint point(int d, double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), vector(d, lo, hi)}; }

private:
    std::mt19937_64 engine_;
};

/// Matrix with the permitted block pattern for `sizes`: arbitrary blocks on and
/// above the diagonal, B_{j,j-1} = [I | 0] + perturbation, zeros below.
inline Eigen::MatrixXd random_block_matrix(Gen& g, const std::vector<int>& sizes, double scale = 0.5)
{
    std::vector<int> off{0};
    for (int p : sizes) {
        off.push_back(off.back() + p);
    }
    const int d = off.back();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    const int nb = static_cast<int>(sizes.size());
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            if (i > j + 1) {
                continue;
            }
            Eigen::MatrixXd blk = g.matrix(sizes[i], sizes[j], -scale, scale);
            if (i == j + 1) {
                blk *= 0.2;
                blk.leftCols(sizes[i]) += Eigen::MatrixXd::Identity(sizes[i], sizes[i]);
            }
            b.block(off[i], off[j], sizes[i], sizes[j]) = blk;
        }
    }
    return b;
}

/// The random 4x4 structure with sizes (2, 1, 1) used throughout.
inline KolmogorovStructure k4(std::uint64_t seed = 7)
{
    Gen g(seed);
    return validate_structure(random_block_matrix(g, {2, 1, 1}), {2, 1, 1});
}

/// Σ_{n<terms} Aⁿ / (n+k)!, plain summation in long double.
inline Eigen::MatrixXd series_oracle(const Eigen::MatrixXd& a, int k, int terms = 50)
{
    using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const M al = a.cast<long double>();
    M power = M::Identity(a.rows(), a.cols());
    M sum = M::Zero(a.rows(), a.cols());
    long double fact = 1.0L;
    for (int i = 2; i <= k; ++i) {
        fact *= i;
    }
    for (int n = 0; n < terms; ++n) {
        sum += power / fact;
        power = power * al;
        fact *= static_cast<long double>(n + k + 1);
    }
    return sum.cast<double>();
}

} // namespace kolmo::test
