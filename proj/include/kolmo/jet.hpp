#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace kolmo {

/// Truncated polynomial in m independent variables h_1..h_m with h_q² = 0.
///
/// Coefficients are indexed by the bitmask of the variables in the monomial, so
/// a value carries 2^m numbers and the top coefficient is ∂_{h_1}...∂_{h_m} of
/// whatever was computed. Composing flows e^{h_q V_q} on such values gives
/// exact iterated Lie derivatives V_1 V_2 ... V_m u, because every flow is
/// affine to first order in its own parameter.
class Multilinear {
public:
    Multilinear() = default;
    Multilinear(int variables, double constant);

    static Multilinear variable(int variables, int q, double value = 0.0);

    int variables() const { return variables_; }
    double constant() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
    /// Coefficient of the product of all variables.
    double top() const { return coeffs_.back(); }
    double operator[](std::uint32_t mask) const { return coeffs_[mask]; }

    /// h_q * (*this)
    Multilinear times_variable(int q) const;

    Multilinear& operator+=(const Multilinear& o);
    Multilinear& operator-=(const Multilinear& o);
    Multilinear& operator*=(const Multilinear& o);
    Multilinear& operator+=(double c);
    Multilinear& operator*=(double c);

    friend Multilinear operator+(Multilinear a, const Multilinear& b) { return a += b; }
    friend Multilinear operator-(Multilinear a, const Multilinear& b) { return a -= b; }
    friend Multilinear operator*(Multilinear a, const Multilinear& b) { return a *= b; }
    friend Multilinear operator+(Multilinear a, double c) { return a += c; }
    friend Multilinear operator+(double c, Multilinear a) { return a += c; }
    friend Multilinear operator-(Multilinear a, double c) { return a += -c; }
    friend Multilinear operator-(double c, const Multilinear& a) { return -a + c; }
    friend Multilinear operator*(Multilinear a, double c) { return a *= c; }
    friend Multilinear operator*(double c, Multilinear a) { return a *= c; }
    friend Multilinear operator/(Multilinear a, double c) { return a *= 1.0 / c; }
    Multilinear operator-() const;

    /// f(a) = Σ_j f^{(j)}(a₀) Nʲ/j! where a = a₀ + N; `derivatives[j]` = f^{(j)}(a₀).
    Multilinear compose(std::span<const double> derivatives) const;

private:
    int variables_ = 0;
    std::vector<double> coeffs_;
};

Multilinear sin(const Multilinear& a);
Multilinear cos(const Multilinear& a);
Multilinear exp(const Multilinear& a);
Multilinear pow(const Multilinear& a, int n);
/// Square root; the constant part must be positive.
Multilinear sqrt(const Multilinear& a);

inline double pow(double a, int n) { return std::pow(a, n); }

/// Scalar types the test-function templates are instantiated for.
template <class T>
T constant_like(const T& like, double c)
{
    if constexpr (std::is_same_v<T, double>) {
        (void)like;
        return c;
    } else {
        return T(like.variables(), c);
    }
}

/// e^{τB} ξ, with τ possibly carrying nilpotent parts.
std::vector<double> exp_apply(const Eigen::MatrixXd& b, double tau, const Eigen::VectorXd& xi);
std::vector<Multilinear> exp_apply(const Eigen::MatrixXd& b, const Multilinear& tau, const Eigen::VectorXd& xi);

} // namespace kolmo
