#pragma once

#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kolmo {

/// First-order operator along which functions are differentiated: the drift
/// field Y = ∂_t + <Bx, ∇_x> or a coordinate derivative ∂_{x_i}. The fields
/// X_i are the partials of the first block.
class LieOp {
public:
    static LieOp Y() { return LieOp(-1); }
    /// ∂_{x_i}, 0-based coordinate index.
    static LieOp partial(int i) { return LieOp(i); }

    bool is_drift() const { return index_ < 0; }
    int coordinate() const { return index_; }
    /// "Y" or "X<i+1>".
    std::string label() const;

    friend bool operator==(LieOp a, LieOp b) { return a.index_ == b.index_; }

private:
    explicit LieOp(int index) : index_(index) {}
    int index_;
};

/// e^{hY}(t, x) = (t + h, e^{hB}x) or (t, x + h e_i).
GroupPoint advance(LieOp op, double h, const GroupPoint& z, const KolmogorovStructure& structure);

using PointFunction = std::function<double(const GroupPoint&)>;
/// Exact value of V_1 V_2 ... V_m u at a point, V_1 outermost.
using WordDerivative = std::function<double(std::span<const LieOp>, const GroupPoint&)>;

struct FdOptions {
    /// Base step h; nested stencils of total order m use h^{1/m}.
    double step = 1e-5;
    /// One level of Richardson extrapolation on every central difference.
    bool richardson = true;
};

/// Nested finite differences refuse to run with an effective step below this.
inline constexpr double kMinFdStep = 1e-8;

enum class DerivativeMode {
    /// Exact derivative when the oracle has one, finite differences otherwise.
    Auto,
    FiniteDifference,
    Exact,
};

/// A scalar function on ℝ×ℝ^d that can be differentiated along Lie operators.
///
/// Derivatives come from an optional exact routine, else from nested central
/// differences. differentiate() returns the oracle of V u, so recursive
/// constructions such as the C^{k,α}_B seminorm compose without losing the
/// exact path. The regularity is a declaration: the largest n for which the
/// function is claimed to lie in C^{n,1}_B.
class DerivativeOracle {
public:
    DerivativeOracle(std::shared_ptr<const KolmogorovStructure> structure, PointFunction value,
                     std::optional<WordDerivative> exact, int regularity, std::string name = {});

    const KolmogorovStructure& structure() const { return *structure_; }
    const std::shared_ptr<const KolmogorovStructure>& structure_ptr() const { return structure_; }
    const std::string& name() const { return name_; }
    int regularity() const { return regularity_; }
    bool has_exact() const { return exact_.has_value(); }
    const FdOptions& fd_options() const { return fd_; }
    /// Operators already applied by differentiate(), outermost first.
    std::span<const LieOp> applied() const { return applied_; }

    DerivativeOracle with_fd_options(FdOptions fd) const;

    /// Value of the function. Throws EvaluationError on non-finite values.
    double operator()(const GroupPoint& z) const { return derivative({}, z); }

    /// V_1 ... V_m of this function at z (V_1 outermost).
    double derivative(std::span<const LieOp> word, const GroupPoint& z,
                      DerivativeMode mode = DerivativeMode::Auto) const;

    /// Oracle of V u. Regularity drops by 2 for Y and by 2j+1 for a partial in block j.
    DerivativeOracle differentiate(LieOp op) const;

private:
    double finite_difference(std::span<const LieOp> word, const GroupPoint& z, double h) const;
    double evaluate(const GroupPoint& z) const;

    std::shared_ptr<const KolmogorovStructure> structure_;
    PointFunction value_;
    std::optional<WordDerivative> exact_;
    int regularity_;
    std::string name_;
    FdOptions fd_;
    std::vector<LieOp> applied_;
};

/// Nested central differences of `u` along `word` with a fixed step h at every
/// level (no step scaling). Exposed for convergence measurements.
double finite_difference(const PointFunction& u, std::span<const LieOp> word, const GroupPoint& z, double h,
                         bool richardson, const KolmogorovStructure& structure);

/// The word Y^k ∂^β: k copies of Y (outermost) followed by β_i copies of ∂_{x_i}.
std::vector<LieOp> mixed_word(int k, const MultiIndex& beta);

/// Yu(z): central difference [u(e^{hY}z) - u(e^{-hY}z)] / 2h unless an exact path exists.
double lie_derivative_Y(const DerivativeOracle& u, const GroupPoint& z,
                        DerivativeMode mode = DerivativeMode::Auto);

/// Y^k ∂^β u(ζ), ∂^β applied first. Throws InsufficientRegularity when
/// 2k + |β|_B exceeds the declared regularity, StepUnderflowError when the
/// nested step would fall below kMinFdStep.
double mixed_derivative(const DerivativeOracle& u, const GroupPoint& zeta, int k, const MultiIndex& beta,
                        DerivativeMode mode = DerivativeMode::Auto);

struct TaylorIndex {
    int k = 0;
    MultiIndex beta;

    int degree() const { return 2 * k + beta.b_length(); }
    friend bool operator==(const TaylorIndex&, const TaylorIndex&) = default;
    friend auto operator<=>(const TaylorIndex& a, const TaylorIndex& b)
    {
        if (auto c = a.k <=> b.k; c != 0) {
            return c;
        }
        return a.beta <=> b.beta;
    }
};

/// Every (k, β) with 2k + |β|_B <= n, in lexicographic order of (k, β).
std::vector<TaylorIndex> enumerate_terms(int n, const KolmogorovStructure& structure);

struct TaylorTerm {
    TaylorIndex index;
    /// Y^k ∂^β u(ζ) / (k! β!)
    double coefficient = 0.0;
};

/// Coefficient table of the intrinsic Taylor polynomial
///
///     T_n u(ζ, z) = Σ_{2k+|β|_B <= n} c_{k,β} (t - s)^k (x - e^{(t-s)B} ξ)^β,   ζ = (s, ξ).
class TaylorExpansion {
public:
    TaylorExpansion(GroupPoint center, int order, std::vector<TaylorTerm> terms);

    const GroupPoint& center() const { return center_; }
    int order() const { return order_; }
    std::span<const TaylorTerm> terms() const { return terms_; }
    /// Throws IndexError if (k, β) is not in the table.
    double coefficient(int k, const MultiIndex& beta) const;

private:
    GroupPoint center_;
    int order_;
    std::vector<TaylorTerm> terms_;
};

/// Populates every enumerated term. Terms are computed in parallel; the table
/// is identical to taylor_coefficients_serial().
TaylorExpansion taylor_coefficients(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                    DerivativeMode mode = DerivativeMode::Auto);
TaylorExpansion taylor_coefficients_serial(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                           DerivativeMode mode = DerivativeMode::Auto);

/// T_n u(ζ, z).
double taylor_eval(const TaylorExpansion& expansion, const GroupPoint& z, const KolmogorovStructure& structure);

/// (t - s)^k (x - e^{(t-s)B} ξ)^β, the building block of T_n.
double intrinsic_monomial(int k, const MultiIndex& beta, const GroupPoint& center, const GroupPoint& z,
                          const KolmogorovStructure& structure);

} // namespace kolmo
