#pragma once

#include "kolmo/calculus.hpp"
#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <optional>
#include <string>

namespace kolmo {

/// Closed axis-aligned box [lower, upper] in ℝ×ℝ^d.
struct Box {
    GroupPoint lower;
    GroupPoint upper;

    bool contains(const GroupPoint& z) const;
    int dimension() const { return lower.dimension(); }
};

/// Box Ω together with an inner box Ω₀ whose closure lies in the interior of Ω.
class BoxDomain {
public:
    /// Throws DomainError if either box is empty or Ω₀ touches the boundary of Ω.
    BoxDomain(Box outer, Box inner);

    const Box& outer() const { return outer_; }
    const Box& inner() const { return inner_; }

private:
    Box outer_;
    Box inner_;
};

/// δ_z: the largest δ̄ <= 1 such that e^{δX_i}(z) and e^{δY}(z) stay in Ω for |δ| <= δ̄.
/// Bisection (40 steps) on the membership test; the Y-curve is checked at 8
/// points per side. Returns 0 on the boundary. Throws OutsideDomainError if z ∉ Ω.
double delta_z(const GroupPoint& z, const Box& omega, const KolmogorovStructure& structure);

/// δ_{Ω₀} = min δ_z over the closure of Ω₀, sampled on a fixed 4-interval-per-axis grid
/// so that it does not change with the seminorm sampling resolution.
double delta_omega0(const BoxDomain& domain, const KolmogorovStructure& structure);

struct SeminormSample {
    GroupPoint z;
    double delta = 0.0;
    std::string field;
};

/// Grid estimate of a seminorm. `value` is a lower bound of the supremum and
/// never decreases when `grid` is doubled.
struct SeminormReport {
    double value = 0.0;
    std::optional<SeminormSample> argmax;
    /// Intervals per axis of the sampling grid over the closure of Ω₀.
    int grid = 0;
    double delta_omega0 = 0.0;
};

/// Number of log-spaced δ values in [1e-4 δ_{Ω₀}, δ_{Ω₀}]; both signs are used.
inline constexpr int kDeltaSamples = 32;

/// ‖u‖_{C^α_{X_i}(Ω₀)} (exponent α ∈ ]0,1]) or ‖u‖_{C^α_Y(Ω₀)} (exponent α/2, α ∈ ]0,2]),
/// the sup of |u(e^{δV}z) - u(z)| / |δ|^{exponent} over a (grid+1)^{d+1} lattice of Ω₀ and
/// kDeltaSamples values of δ. Parallel over lattice points; throws RangeError on α.
SeminormReport field_seminorm(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha,
                              int grid);
SeminormReport field_seminorm(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha,
                              int grid, double delta_omega0);
/// Single-threaded reference; returns exactly what field_seminorm() returns.
SeminormReport field_seminorm_serial(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha,
                                     int grid, double delta_omega0);

/// ‖u‖_{C^{k,α}_B(Ω₀)} by the recursion
///
///   k = 0:  ‖u‖_{C^α_Y} + Σ_i ‖u‖_{C^α_{X_i}}
///   k = 1:  ‖u‖_{C^{1+α}_Y} + Σ_i ‖∂_{x_i}u‖_{C^{0,α}_B}
///   k >= 2: ‖Yu‖_{C^{k-2,α}_B} + Σ_i ‖∂_{x_i}u‖_{C^{k-1,α}_B}
///
/// Derivative functions come from DerivativeOracle::differentiate(). The
/// argmax reported is the one of the largest single field term.
/// Throws InsufficientRegularity when u declares less than k, RangeError for α ∉ ]0,1].
SeminormReport holder_seminorm(const DerivativeOracle& u, const BoxDomain& domain, int k, double alpha,
                               const KolmogorovStructure& structure, int grid);

} // namespace kolmo
