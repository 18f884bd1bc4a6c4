#include "kolmo/connect.hpp"

#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"

#include <cmath>
#include <string>

namespace kolmo {

namespace {

void require_two_blocks(const KolmogorovStructure& s)
{
    if (s.depth() < 1) {
        throw ValidationError("curves in the y block need at least two blocks");
    }
}

void require_rank_one(const KolmogorovStructure& s)
{
    if (s.depth() != 1) {
        throw NotRankOneStructure("connection solver is implemented for r = 1 only (got r = " +
                                  std::to_string(s.depth()) + ")");
    }
}

void require_direction(const Eigen::VectorXd& v, const KolmogorovStructure& s)
{
    if (v.size() != s.block_size(0)) {
        throw DimensionError("direction has " + std::to_string(v.size()) + " entries, expected p_0 = " +
                             std::to_string(s.block_size(0)));
    }
}

// (v, 0, ..., 0) in ℝ^d
Eigen::VectorXd lift(const Eigen::VectorXd& v, const KolmogorovStructure& s)
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(s.dimension());
    out.head(v.size()) = v;
    return out;
}

double sigma_min(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

} // namespace

GroupPoint flow(const GroupPoint& z, LieOp field, double delta, const KolmogorovStructure& structure)
{
    if (!field.is_drift() && (field.coordinate() < 0 || field.coordinate() >= structure.block_size(0))) {
        throw FieldIndexError("X_" + std::to_string(field.coordinate() + 1) + " is not a field (p_0 = " +
                              std::to_string(structure.block_size(0)) + ")");
    }
    return advance(field, delta, z, structure);
}

GroupPoint gamma0(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure)
{
    require_direction(v, structure);
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    GroupPoint out = z;
    out.x.head(v.size()) += delta * v;
    return out;
}

GroupPoint gamma(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure)
{
    require_two_blocks(structure);
    require_direction(v, structure);
    const double d2 = delta * delta;
    const Eigen::VectorXd b00v = structure.block(0, 0) * v;
    GroupPoint p = gamma0(z, v, delta, structure);
    p = flow(p, LieOp::Y(), d2, structure);
    p = gamma0(p, v, -delta, structure);
    p = flow(p, LieOp::Y(), -d2, structure);
    return gamma0(p, b00v, -delta * d2, structure);
}

GroupPoint gamma_closed_form(const GroupPoint& z, const Eigen::VectorXd& v, double delta,
                             const KolmogorovStructure& structure)
{
    require_two_blocks(structure);
    require_direction(v, structure);
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    const Eigen::MatrixXd& b = structure.matrix();
    const double d2 = delta * delta;
    const Eigen::VectorXd lifted = lift(v, structure);
    const int p0 = structure.block_size(0);
    const int p1 = structure.block_size(1);

    GroupPoint out = z;
    out.x.segment(p0, p1) += delta * d2 * (structure.block(1, 0) * v);
    out.x -= delta * d2 * d2 * (phi(-d2 * b, 2) * (b * (b * lifted)));
    return out;
}

Eigen::VectorXd correction_direction(const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure)
{
    require_direction(v, structure);
    const Eigen::MatrixXd& b = structure.matrix();
    const int p0 = structure.block_size(0);
    const Eigen::MatrixXd series = phi(-delta * delta * b, 2) * b * b;
    return series.topLeftCorner(p0, p0) * v;
}

GroupPoint g_curve(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure)
{
    const double d5 = std::pow(delta, 5);
    return gamma0(gamma(z, v, delta, structure), correction_direction(v, delta, structure), d5, structure);
}

Eigen::MatrixXd remainder_map(double delta, const KolmogorovStructure& structure)
{
    require_rank_one(structure);
    const Eigen::MatrixXd& b = structure.matrix();
    const Eigen::MatrixXd full = phi(-delta * delta * b, 1) * b;
    const int p0 = structure.block_size(0);
    const int p1 = structure.block_size(1);
    return full.block(p0, 0, p1, p0);
}

Eigen::MatrixXd direction_basis(const KolmogorovStructure& structure)
{
    require_two_blocks(structure);
    const Eigen::MatrixXd b10 = structure.block(1, 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b10, Eigen::ComputeFullV);
    Eigen::MatrixXd q = svd.matrixV().leftCols(b10.rows());
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
        Eigen::Index arg = 0;
        q.col(c).cwiseAbs().maxCoeff(&arg);
        if (q(arg, c) < 0.0) {
            q.col(c) *= -1.0;
        }
    }
    return q;
}

double epsilon_bound(const KolmogorovStructure& structure)
{
    require_rank_one(structure);
    constexpr int kGrid = 64;
    constexpr int kBisections = 40;
    const double floor = 0.5 * sigma_min(structure.block(1, 0));

    auto admissible = [&](double bar) {
        for (int j = 0; j < kGrid; ++j) {
            const double delta = bar * static_cast<double>(j) / (kGrid - 1);
            if (sigma_min(remainder_map(delta, structure)) < floor) {
                return false;
            }
        }
        return true;
    };

    double bar = 1.0;
    if (!admissible(bar)) {
        double lo = 0.0;
        double hi = 1.0;
        for (int i = 0; i < kBisections; ++i) {
            const double mid = 0.5 * (lo + hi);
            (admissible(mid) ? lo : hi) = mid;
        }
        bar = lo;
    }
    return bar * bar * bar * floor;
}

ConnectionResult connect_y(const GroupPoint& z, const Eigen::VectorXd& eta, const KolmogorovStructure& structure)
{
    require_rank_one(structure);
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    const int p0 = structure.block_size(0);
    const int p1 = structure.block_size(1);
    if (eta.size() != p1) {
        throw DimensionError("increment has " + std::to_string(eta.size()) + " entries, expected p_1 = " +
                             std::to_string(p1));
    }
    const double eps = epsilon_bound(structure);
    const double size = eta.norm();
    if (size > eps) {
        throw EpsilonExceeded("|eta| = " + std::to_string(size) + " exceeds epsilon = " + std::to_string(eps));
    }

    const Eigen::MatrixXd q = direction_basis(structure);
    ConnectionResult result;
    if (size == 0.0) {
        result.v = q.col(0);
        return result;
    }

    auto solve = [&](const Eigen::MatrixXd& m) -> Eigen::VectorXd {
        return q * (m * q).fullPivLu().solve(eta);
    };
    Eigen::VectorXd w = solve(structure.block(1, 0));
    double step = 0.0;
    int it = 0;
    for (it = 1; it <= kConnectMaxIterations; ++it) {
        const Eigen::VectorXd next = solve(remainder_map(std::cbrt(w.norm()), structure));
        step = (next - w).norm();
        w = next;
        if (step <= 1e-15 * w.norm()) {
            break;
        }
    }
    if (!(step <= kConnectStepTolerance * std::max(w.norm(), 1e-300)) || !w.allFinite()) {
        throw NoConvergence("connection fixed point did not settle in " + std::to_string(kConnectMaxIterations) +
                            " iterations");
    }

    result.delta = std::cbrt(w.norm());
    result.v = w / w.norm();
    result.iterations = std::min(it, kConnectMaxIterations);

    GroupPoint target = z;
    target.x.segment(p0, p1) += eta;
    result.residual = max_abs_difference(g_curve(z, result.v, result.delta, structure), target);
    if (result.residual > kConnectResidualTolerance) {
        throw NoConvergence("connection residual " + std::to_string(result.residual) + " above tolerance");
    }
    return result;
}

} // namespace kolmo
