#pragma once

#include "kolmo/point.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace kolmo {

/// Drift matrix B of a Kolmogorov-type group together with its block reading
///
///     B = | B00 B01 ... B0r |
///         | B10 B11 ... B1r |      B_{i,j} is p_i x p_j,
///         |  0  B21 ... B2r |      rank B_{j,j-1} = p_j,
///         |  :        .   : |      p_0 >= p_1 >= ... >= p_r >= 1.
///         |  0   0 .. Brr   |
///
/// Instances only come out of validate_structure() and are immutable.
class KolmogorovStructure {
public:
    int dimension() const { return static_cast<int>(matrix_.rows()); }
    /// Number of subdiagonal steps r (block count minus one).
    int depth() const { return static_cast<int>(block_sizes_.size()) - 1; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    std::span<const int> block_sizes() const { return block_sizes_; }
    int block_size(int j) const { return block_sizes_.at(j); }
    /// First coordinate of block j (the cumulative offset p̄_{j-1}).
    int block_begin(int j) const { return offsets_.at(j); }
    /// One past the last coordinate of block j (p̄_j).
    int block_end(int j) const { return offsets_.at(j + 1); }
    /// Block that coordinate i (0-based) belongs to.
    int block_of(int coordinate) const;
    bool homogeneous() const { return homogeneous_; }

    /// Copy of the (i, j) block of B.
    Eigen::MatrixXd block(int i, int j) const;

private:
    friend KolmogorovStructure validate_structure(const Eigen::MatrixXd&, std::vector<int>);
    KolmogorovStructure() = default;

    Eigen::MatrixXd matrix_;
    std::vector<int> block_sizes_;
    std::vector<int> offsets_;  // offsets_[j] = p_0 + ... + p_{j-1}, size r+2
    bool homogeneous_ = false;
};

/// Singular-value threshold relative to sigma_max(B) under which a subdiagonal
/// block counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Checks the block conditions on B and builds the structure.
/// Throws BlockShapeError, MonotonicityError, SparsityError or RankError
/// (checked in that order).
KolmogorovStructure validate_structure(const Eigen::MatrixXd& matrix, std::vector<int> block_sizes);

/// Multi-index over the d space coordinates with its cached B-length
/// |β|_B = Σ_j Σ_{i in block j} (2j+1) β_i.
class MultiIndex {
public:
    MultiIndex() = default;
    /// Throws DimensionError if entries.size() != d, ValidationError on negative entries.
    MultiIndex(std::vector<int> entries, const KolmogorovStructure& structure);

    static MultiIndex zero(const KolmogorovStructure& structure);

    std::span<const int> entries() const { return entries_; }
    int operator[](std::size_t i) const { return entries_[i]; }
    std::size_t size() const { return entries_.size(); }
    int b_length() const { return b_length_; }
    /// Euclidean order |β| = Σ β_i.
    int order() const;
    /// β! = Π β_i!
    double factorial() const;

    /// Entrywise sum; b_length adds.
    MultiIndex operator+(const MultiIndex& other) const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<int> entries_;
    int b_length_ = 0;
};

/// |β|_B for a raw entry list. Throws DimensionError on length mismatch.
int b_length(std::span<const int> beta, const KolmogorovStructure& structure);
inline int b_length(const MultiIndex& beta, const KolmogorovStructure&) { return beta.b_length(); }

/// One stratum of ℝ×ℝ^d: the time direction or space block W_i.
class Stratum {
public:
    static Stratum time() { return Stratum(true, 0); }
    static Stratum block(int i) { return Stratum(false, i); }
    bool is_time() const { return time_; }
    int index() const { return index_; }

private:
    Stratum(bool time, int index) : time_(time), index_(index) {}
    bool time_;
    int index_;
};

/// Formal degree: 2 for time, 2i+1 for W_i. Throws IndexError for blocks outside 0..r.
int formal_degree(Stratum stratum, const KolmogorovStructure& structure);

/// D(λ)(t, x) = (λ²t, λx⁽⁰⁾, λ³x⁽¹⁾, ..., λ^{2r+1}x⁽ʳ⁾).
/// Throws NotHomogeneousError unless the upper blocks of B vanish, ValidationError for λ <= 0.
GroupPoint dilation(double lambda, const GroupPoint& z, const KolmogorovStructure& structure);

} // namespace kolmo
