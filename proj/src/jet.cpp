#include "kolmo/jet.hpp"

#include "kolmo/group.hpp"

#include <stdexcept>

namespace kolmo {

namespace {

void require_same_shape(const Multilinear& a, const Multilinear& b)
{
    if (a.variables() != b.variables()) {
        throw std::logic_error("multilinear values over different variable sets");
    }
}

} // namespace

Multilinear::Multilinear(int variables, double constant)
    : variables_(variables), coeffs_(std::size_t{1} << variables, 0.0)
{
    coeffs_[0] = constant;
}

Multilinear Multilinear::variable(int variables, int q, double value)
{
    Multilinear v(variables, value);
    v.coeffs_[std::size_t{1} << q] = 1.0;
    return v;
}

Multilinear Multilinear::times_variable(int q) const
{
    Multilinear out(variables_, 0.0);
    const std::uint32_t bit = 1u << q;
    for (std::uint32_t mask = 0; mask < coeffs_.size(); ++mask) {
        if ((mask & bit) == 0) {
            out.coeffs_[mask | bit] = coeffs_[mask];
        }
    }
    return out;
}

Multilinear& Multilinear::operator+=(const Multilinear& o)
{
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

Multilinear& Multilinear::operator-=(const Multilinear& o)
{
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
}

Multilinear& Multilinear::operator*=(const Multilinear& o)
{
    require_same_shape(*this, o);
    std::vector<double> out(coeffs_.size(), 0.0);
    // every (a, b) with disjoint masks contributes to a | b; walk submasks of each target
    for (std::uint32_t target = 0; target < out.size(); ++target) {
        double acc = 0.0;
        std::uint32_t sub = target;
        while (true) {
            acc += coeffs_[sub] * o.coeffs_[target ^ sub];
            if (sub == 0) {
                break;
            }
            sub = (sub - 1) & target;
        }
        out[target] = acc;
    }
    coeffs_ = std::move(out);
    return *this;
}

Multilinear& Multilinear::operator+=(double c)
{
    coeffs_[0] += c;
    return *this;
}

Multilinear& Multilinear::operator*=(double c)
{
    for (double& x : coeffs_) {
        x *= c;
    }
    return *this;
}

Multilinear Multilinear::operator-() const
{
    Multilinear out = *this;
    out *= -1.0;
    return out;
}

Multilinear Multilinear::compose(std::span<const double> derivatives) const
{
    Multilinear nilpotent = *this;
    nilpotent.coeffs_[0] = 0.0;
    Multilinear result(variables_, derivatives.empty() ? 0.0 : derivatives[0]);
    Multilinear power(variables_, 1.0);
    double factorial = 1.0;
    for (int j = 1; j <= variables_ && j < static_cast<int>(derivatives.size()); ++j) {
        power *= nilpotent;
        factorial *= j;
        Multilinear term = power;
        term *= derivatives[j] / factorial;
        result += term;
    }
    return result;
}

Multilinear sin(const Multilinear& a)
{
    const double s = std::sin(a.constant());
    const double c = std::cos(a.constant());
    std::vector<double> d(a.variables() + 1);
    const double cycle[4] = {s, c, -s, -c};
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = cycle[j % 4];
    }
    return a.compose(d);
}

Multilinear cos(const Multilinear& a)
{
    const double s = std::sin(a.constant());
    const double c = std::cos(a.constant());
    std::vector<double> d(a.variables() + 1);
    const double cycle[4] = {c, -s, -c, s};
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = cycle[j % 4];
    }
    return a.compose(d);
}

Multilinear exp(const Multilinear& a)
{
    std::vector<double> d(a.variables() + 1, std::exp(a.constant()));
    return a.compose(d);
}

Multilinear pow(const Multilinear& a, int n)
{
    if (n < 0) {
        throw std::domain_error("negative powers are not supported");
    }
    Multilinear result(a.variables(), 1.0);
    for (int i = 0; i < n; ++i) {
        result *= a;
    }
    return result;
}

Multilinear sqrt(const Multilinear& a)
{
    const double a0 = a.constant();
    if (!(a0 > 0.0)) {
        throw std::domain_error("sqrt of a non-positive jet");
    }
    std::vector<double> d(a.variables() + 1);
    double c = 1.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = c * std::pow(a0, 0.5 - static_cast<double>(j));
        c *= 0.5 - static_cast<double>(j);
    }
    return a.compose(d);
}

std::vector<double> exp_apply(const Eigen::MatrixXd& b, double tau, const Eigen::VectorXd& xi)
{
    const Eigen::VectorXd v = expm(tau * b) * xi;
    return {v.data(), v.data() + v.size()};
}

std::vector<Multilinear> exp_apply(const Eigen::MatrixXd& b, const Multilinear& tau, const Eigen::VectorXd& xi)
{
    // e^{(c+N)B} = e^{cB} Σ_j Nʲ Bʲ / j!, finite because N^{m+1} = 0
    const int m = tau.variables();
    Multilinear nilpotent = tau - tau.constant();
    Eigen::VectorXd bj_v = expm(tau.constant() * b) * xi;
    std::vector<Multilinear> out(xi.size(), Multilinear(m, 0.0));
    Multilinear weight(m, 1.0);
    for (int j = 0; j <= m; ++j) {
        if (j > 0) {
            weight *= nilpotent;
            weight *= 1.0 / j;
            bj_v = b * bj_v;
        }
        for (Eigen::Index i = 0; i < xi.size(); ++i) {
            out[i] += weight * bj_v(i);
        }
    }
    return out;
}

} // namespace kolmo
