#pragma once

#include <Eigen/Dense>

namespace kolmo {

/// Element z = (t, x) of ℝ×ℝ^d.
struct GroupPoint {
    double t = 0.0;
    Eigen::VectorXd x;

    GroupPoint() = default;
    GroupPoint(double time, Eigen::VectorXd space) : t(time), x(std::move(space)) {}

    /// The identity (0, 0) in dimension d.
    static GroupPoint identity(int d) { return {0.0, Eigen::VectorXd::Zero(d)}; }

    /// Packs (t, x_1, ..., x_d) into one vector and back.
    static GroupPoint from_stacked(const Eigen::VectorXd& stacked)
    {
        return {stacked(0), stacked.tail(stacked.size() - 1)};
    }
    Eigen::VectorXd stacked() const
    {
        Eigen::VectorXd out(x.size() + 1);
        out << t, x;
        return out;
    }

    int dimension() const { return static_cast<int>(x.size()); }
};

/// Max-norm distance between two points of the same dimension.
inline double max_abs_difference(const GroupPoint& a, const GroupPoint& b)
{
    return std::max(std::abs(a.t - b.t), (a.x - b.x).cwiseAbs().maxCoeff());
}

} // namespace kolmo
