#pragma once

#include "kolmo/calculus.hpp"
#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <Eigen/Dense>

namespace kolmo {

// Points are read as z = (t, x, y): x the first block (p_0 coordinates), y the
// second (p_1 coordinates). Directions v live in ℝ^{p_0}.

/// Integral curve of a field: e^{δX_i}(t, x) = (t, x + δe_i), e^{δY}(t, x) = (t + δ, e^{δB}x).
/// Throws FieldIndexError unless X_i belongs to the first block.
GroupPoint flow(const GroupPoint& z, LieOp field, double delta, const KolmogorovStructure& structure);

/// γ⁽⁰⁾_{v,δ}(t, x, y) = (t, x + δv, y).
GroupPoint gamma0(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure);

/// γ_{v,δ} = γ⁽⁰⁾_{B00 v, -δ³} ∘ e^{-δ²Y} ∘ γ⁽⁰⁾_{v,-δ} ∘ e^{δ²Y} ∘ γ⁽⁰⁾_{v,δ}, evaluated by
/// composing the flows.
GroupPoint gamma(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure);

/// Same curve from its expansion (t, x, y + δ³B10 v) - δ⁵ (0, φ₂(-δ²B) B² (v, 0)).
GroupPoint gamma_closed_form(const GroupPoint& z, const Eigen::VectorXd& v, double delta,
                             const KolmogorovStructure& structure);

/// v' = Σ_n (-1)ⁿ δ^{2n} (B^{n+2})₀₀ v / (n+2)!, the top-left block of φ₂(-δ²B)B² applied to v.
Eigen::VectorXd correction_direction(const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure);

/// g_{v,δ} = γ⁽⁰⁾_{v',δ⁵} ∘ γ_{v,δ}; moves only the y block.
GroupPoint g_curve(const GroupPoint& z, const Eigen::VectorXd& v, double delta, const KolmogorovStructure& structure);

/// M(δ) with M(δ)v = R(δ, v) = Σ_n (-1)ⁿ δ^{2n} (B^{n+1})₁₀ v / (n+1)!, i.e. the (1,0)
/// block of φ₁(-δ²B)B. g_{v,δ}(z) - z = (0, 0, δ³ M(δ) v). Requires r = 1.
Eigen::MatrixXd remainder_map(double delta, const KolmogorovStructure& structure);

/// Orthonormal basis (p_0 x p_1) of the row space of B10, each column signed so
/// that its largest entry is positive. Directions are searched in its span.
Eigen::MatrixXd direction_basis(const KolmogorovStructure& structure);

/// Radius ε under which connect_y is guaranteed to land.
///
/// δ̄ is the largest δ <= 1 (1, or 40 bisection steps) such that
/// σ_min(M(δ')) >= σ_min(B10)/2 on a 64-point grid of [0, δ̄];
/// then ε = δ̄³ σ_min(B10) / 2. A numerical surrogate, not a proof.
double epsilon_bound(const KolmogorovStructure& structure);

struct ConnectionResult {
    double delta = 0.0;
    /// Unit vector in ℝ^{p_0}.
    Eigen::VectorXd v;
    /// max-norm of g_{v,δ}(z) - (t, x, y + η)
    double residual = 0.0;
    int iterations = 0;
};

inline constexpr int kConnectMaxIterations = 100;
inline constexpr double kConnectStepTolerance = 1e-12;
inline constexpr double kConnectResidualTolerance = 1e-10;

/// Finds δ >= 0 and |v| = 1 with g_{v,δ}(z) = (t, x, y + η).
///
/// Fixed point on w = δ³v: w ← Q (M(|w|^{1/3}) Q)⁻¹ η starting from Q (B10 Q)⁻¹ η,
/// with Q = direction_basis(). η = 0 returns δ = 0 and v = Q's first column.
/// Throws NotRankOneStructure (r != 1), DimensionError, EpsilonExceeded
/// (|η| > epsilon_bound) and NoConvergence.
ConnectionResult connect_y(const GroupPoint& z, const Eigen::VectorXd& eta, const KolmogorovStructure& structure);

} // namespace kolmo
