#pragma once

#include "kolmo/calculus.hpp"
#include "kolmo/jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

/// Declared regularity of functions that are C^∞.
inline constexpr int kSmoothRegularity = 1000;

/// Wraps a scalar template `f(t, x)` into a DerivativeOracle whose exact path
/// evaluates f on multilinear jets. `F` must provide
///
///     template <class T> T operator()(const T& t, std::span<const T> x) const;
///
/// for T = double and T = Multilinear.
template <class F>
DerivativeOracle make_jet_oracle(std::shared_ptr<const KolmogorovStructure> structure, F f, int regularity,
                                 std::string name)
{
    auto value = [f](const GroupPoint& z) {
        std::vector<double> x(z.x.data(), z.x.data() + z.x.size());
        return f(z.t, std::span<const double>(x));
    };
    auto exact = [f, s = structure](std::span<const LieOp> word, const GroupPoint& z) {
        const int m = static_cast<int>(word.size());
        const Eigen::MatrixXd& b = s->matrix();
        Multilinear t(m, z.t);
        std::vector<Multilinear> x;
        x.reserve(z.x.size());
        for (Eigen::Index i = 0; i < z.x.size(); ++i) {
            x.emplace_back(m, z.x(i));
        }
        for (int q = 0; q < m; ++q) {
            const LieOp op = word[q];
            if (op.is_drift()) {
                // e^{h_q Y}: (t + h_q, (I + h_q B) x) exactly, since h_q² = 0
                std::vector<Multilinear> bx(x.size(), Multilinear(m, 0.0));
                for (std::size_t i = 0; i < x.size(); ++i) {
                    for (std::size_t j = 0; j < x.size(); ++j) {
                        if (b(i, j) != 0.0) {
                            bx[i] += x[j] * b(i, j);
                        }
                    }
                }
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] += bx[i].times_variable(q);
                }
                t += Multilinear::variable(m, q);
            } else {
                x.at(op.coordinate()) += Multilinear::variable(m, q);
            }
        }
        return f(t, std::span<const Multilinear>(x)).top();
    };
    return DerivativeOracle(std::move(structure), std::move(value), WordDerivative(std::move(exact)), regularity,
                            std::move(name));
}

/// Builds a registry function by name:
///
///   const, t, x<i> (1-based coordinate), y (first coordinate of block 1),
///   linear, xy, cubic_x, sin_mix, exp_mix, cos_prod, poly_trig, gauss,
///   absx1 (|x_1|, Lipschitz only, no exact path),
///   mono:<k>:<b1>,...,<bd>[@<s>,<xi1>,...,<xid>]   intrinsic monomial, centered at the origin by default.
///
/// Throws ValidationError for unknown names or malformed monomial specs.
DerivativeOracle make_function(std::string_view spec, std::shared_ptr<const KolmogorovStructure> structure);

/// The intrinsic monomial (t - s)^k (x - e^{(t-s)B}ξ)^β as an oracle.
DerivativeOracle make_intrinsic_monomial(int k, const MultiIndex& beta, const GroupPoint& center,
                                         std::shared_ptr<const KolmogorovStructure> structure);

/// Names accepted by make_function (monomials excluded).
std::vector<std::string> registry_names(const KolmogorovStructure& structure);

/// Non-polynomial smooth composites used by the convergence experiments.
std::vector<std::string> smooth_registry();

} // namespace kolmo
