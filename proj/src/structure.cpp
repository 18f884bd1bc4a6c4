#include "kolmo/structure.hpp"

#include "kolmo/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace kolmo {

namespace {

double smallest_singular_value(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double largest_singular_value(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s.size() == 0 ? 0.0 : s(0);
}

} // namespace

int KolmogorovStructure::block_of(int coordinate) const
{
    if (coordinate < 0 || coordinate >= dimension()) {
        throw IndexError("coordinate " + std::to_string(coordinate) + " outside 0.." +
                         std::to_string(dimension() - 1));
    }
    int j = 0;
    while (coordinate >= offsets_[j + 1]) {
        ++j;
    }
    return j;
}

Eigen::MatrixXd KolmogorovStructure::block(int i, int j) const
{
    if (i < 0 || j < 0 || i > depth() || j > depth()) {
        throw IndexError("block (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    return matrix_.block(offsets_[i], offsets_[j], block_sizes_[i], block_sizes_[j]);
}

KolmogorovStructure validate_structure(const Eigen::MatrixXd& matrix, std::vector<int> block_sizes)
{
    if (matrix.rows() != matrix.cols()) {
        throw BlockShapeError("matrix is " + std::to_string(matrix.rows()) + "x" +
                              std::to_string(matrix.cols()) + ", expected square");
    }
    if (block_sizes.empty()) {
        throw BlockShapeError("at least one block size is required");
    }
    for (int p : block_sizes) {
        if (p < 1) {
            throw BlockShapeError("block sizes must be positive, got " + std::to_string(p));
        }
    }
    const int d = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    if (d != matrix.rows()) {
        throw BlockShapeError("block sizes sum to " + std::to_string(d) + " but matrix has dimension " +
                              std::to_string(matrix.rows()));
    }
    for (std::size_t j = 1; j < block_sizes.size(); ++j) {
        if (block_sizes[j] > block_sizes[j - 1]) {
            throw MonotonicityError("block sizes must be non-increasing: p_" + std::to_string(j) + " = " +
                                    std::to_string(block_sizes[j]) + " > p_" + std::to_string(j - 1) + " = " +
                                    std::to_string(block_sizes[j - 1]));
        }
    }
    if (!matrix.allFinite()) {
        throw BlockShapeError("matrix has non-finite entries");
    }

    KolmogorovStructure s;
    s.matrix_ = matrix;
    s.block_sizes_ = std::move(block_sizes);
    s.offsets_.assign(s.block_sizes_.size() + 1, 0);
    std::partial_sum(s.block_sizes_.begin(), s.block_sizes_.end(), s.offsets_.begin() + 1);

    const int r = s.depth();
    for (int i = 2; i <= r; ++i) {
        for (int j = 0; j + 2 <= i; ++j) {
            if (!s.block(i, j).isZero(0.0)) {
                throw SparsityError("block B_{" + std::to_string(i) + "," + std::to_string(j) +
                                    "} must vanish (below the first subdiagonal)");
            }
        }
    }

    const double scale = largest_singular_value(matrix);
    for (int j = 1; j <= r; ++j) {
        const double sigma = smallest_singular_value(s.block(j, j - 1));
        if (!(sigma >= kRankTolerance * scale) || sigma == 0.0) {
            throw RankError("block B_{" + std::to_string(j) + "," + std::to_string(j - 1) + "} has rank < " +
                            std::to_string(s.block_sizes_[j]) + " (sigma_min = " + std::to_string(sigma) + ")");
        }
    }

    s.homogeneous_ = true;
    for (int i = 0; i <= r && s.homogeneous_; ++i) {
        for (int j = i; j <= r; ++j) {
            if (!s.block(i, j).isZero(0.0)) {
                s.homogeneous_ = false;
                break;
            }
        }
    }
    return s;
}

MultiIndex::MultiIndex(std::vector<int> entries, const KolmogorovStructure& structure)
    : entries_(std::move(entries)), b_length_(kolmo::b_length(entries_, structure))
{
}

MultiIndex MultiIndex::zero(const KolmogorovStructure& structure)
{
    return MultiIndex(std::vector<int>(structure.dimension(), 0), structure);
}

int MultiIndex::order() const
{
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

double MultiIndex::factorial() const
{
    double f = 1.0;
    for (int b : entries_) {
        f *= std::tgamma(b + 1.0);
    }
    return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    if (other.entries_.size() != entries_.size()) {
        throw DimensionError("multi-index length mismatch");
    }
    MultiIndex sum = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        sum.entries_[i] += other.entries_[i];
    }
    sum.b_length_ += other.b_length_;
    return sum;
}

int b_length(std::span<const int> beta, const KolmogorovStructure& structure)
{
    if (static_cast<int>(beta.size()) != structure.dimension()) {
        throw DimensionError("multi-index has " + std::to_string(beta.size()) + " entries, expected " +
                             std::to_string(structure.dimension()));
    }
    int total = 0;
    for (int j = 0; j <= structure.depth(); ++j) {
        for (int i = structure.block_begin(j); i < structure.block_end(j); ++i) {
            if (beta[i] < 0) {
                throw ValidationError("multi-index entries must be non-negative");
            }
            total += (2 * j + 1) * beta[i];
        }
    }
    return total;
}

int formal_degree(Stratum stratum, const KolmogorovStructure& structure)
{
    if (stratum.is_time()) {
        return 2;
    }
    if (stratum.index() < 0 || stratum.index() > structure.depth()) {
        throw IndexError("stratum W_" + std::to_string(stratum.index()) + " does not exist (r = " +
                         std::to_string(structure.depth()) + ")");
    }
    return 2 * stratum.index() + 1;
}

GroupPoint dilation(double lambda, const GroupPoint& z, const KolmogorovStructure& structure)
{
    if (!structure.homogeneous()) {
        throw NotHomogeneousError("dilations are automorphisms only when the blocks B_{i,j}, i <= j, vanish");
    }
    if (!(lambda > 0.0)) {
        throw ValidationError("dilation factor must be positive");
    }
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    GroupPoint out = z;
    out.t *= lambda * lambda;
    for (int j = 0; j <= structure.depth(); ++j) {
        const double factor = std::pow(lambda, 2 * j + 1);
        out.x.segment(structure.block_begin(j), structure.block_size(j)) *= factor;
    }
    return out;
}

} // namespace kolmo
