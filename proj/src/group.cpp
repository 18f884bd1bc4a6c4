#include "kolmo/group.hpp"

#include "kolmo/errors.hpp"

#include <cmath>
#include <string>

namespace kolmo {

namespace {

constexpr double kSquaringThreshold = 0.5;
constexpr int kMaxSeriesTerms = 1000;

double max_norm(const Eigen::MatrixXd& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_dimension(const GroupPoint& z, const KolmogorovStructure& structure)
{
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point has space dimension " + std::to_string(z.dimension()) +
                             ", structure has " + std::to_string(structure.dimension()));
    }
}

} // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a)
{
    const Eigen::Index n = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > kSquaringThreshold) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kSquaringThreshold)));
    }
    const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
        if (max_norm(term) <= 1e-18 * max_norm(sum)) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

Eigen::MatrixXd exp_B(double s, const KolmogorovStructure& structure)
{
    return expm(s * structure.matrix());
}

Eigen::MatrixXd phi(const Eigen::MatrixXd& a, int k)
{
    if (k != 1 && k != 2) {
        throw ValidationError("phi is provided for k = 1, 2 only");
    }
    if (a.rows() != a.cols()) {
        throw DimensionError("phi needs a square matrix");
    }
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n) / (k == 1 ? 1.0 : 2.0);
    Eigen::MatrixXd sum = term;
    int small_in_a_row = 0;
    for (int m = 1; m < kMaxSeriesTerms; ++m) {
        term = term * a / static_cast<double>(m + k);
        sum += term;
        const double t = max_norm(term);
        if (t == 0.0) {
            break;
        }
        small_in_a_row = t < 1e-16 * max_norm(sum) ? small_in_a_row + 1 : 0;
        if (small_in_a_row == 2) {
            break;
        }
    }
    return sum;
}

GroupPoint compose(const GroupPoint& z, const GroupPoint& w, const KolmogorovStructure& structure)
{
    check_dimension(z, structure);
    check_dimension(w, structure);
    return {z.t + w.t, exp_B(w.t, structure) * z.x + w.x};
}

GroupPoint inverse(const GroupPoint& z, const KolmogorovStructure& structure)
{
    check_dimension(z, structure);
    return {-z.t, -(exp_B(-z.t, structure) * z.x)};
}

double b_norm_space(const Eigen::VectorXd& x, const KolmogorovStructure& structure, NormExponent exponent)
{
    if (x.size() != structure.dimension()) {
        throw DimensionError("vector dimension does not match structure");
    }
    double total = 0.0;
    for (int j = 0; j <= structure.depth(); ++j) {
        const double weight = 2.0 * j + 1.0;
        const double power = exponent == NormExponent::Homogeneous ? 1.0 / weight : weight;
        for (int i = structure.block_begin(j); i < structure.block_end(j); ++i) {
            const double a = std::abs(x(i));
            total += j == 0 ? a : std::pow(a, power);
        }
    }
    return total;
}

double b_norm(const GroupPoint& z, const KolmogorovStructure& structure, NormExponent exponent)
{
    check_dimension(z, structure);
    return std::sqrt(std::abs(z.t)) + b_norm_space(z.x, structure, exponent);
}

double semi_distance(const GroupPoint& zeta, const GroupPoint& z, const KolmogorovStructure& structure,
                     NormExponent exponent)
{
    return b_norm(compose(inverse(zeta, structure), z, structure), structure, exponent);
}

double relative_error(const Eigen::MatrixXd& value, const Eigen::MatrixXd& reference)
{
    return max_norm(value - reference) / std::max(1.0, max_norm(reference));
}

double relative_error(const GroupPoint& value, const GroupPoint& reference)
{
    return relative_error(value.stacked(), reference.stacked());
}

} // namespace kolmo
