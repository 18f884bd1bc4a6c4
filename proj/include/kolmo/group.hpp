#pragma once

#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <Eigen/Dense>

namespace kolmo {

/// Matrix exponential by Taylor series on A/2^s with ‖A/2^s‖_∞ <= 0.5,
/// followed by s squarings.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// e^{sB} for the drift matrix of the structure.
Eigen::MatrixXd exp_B(double s, const KolmogorovStructure& structure);

/// φ_k(A) = Σ_{n>=0} Aⁿ/(n+k)! for k in {1, 2}.
///
/// Plain truncated summation, no squaring. The series stops once a term's
/// max-norm drops below 1e-16 times the running sum (two terms in a row, or
/// an exactly vanishing term for nilpotent A). Satisfies A φ₁(A) = e^A - I and
/// A φ₂(A) = φ₁(A) - I.
Eigen::MatrixXd phi(const Eigen::MatrixXd& a, int k);

/// (t, x) ∘ (s, ξ) = (t + s, e^{sB}x + ξ)
GroupPoint compose(const GroupPoint& z, const GroupPoint& w, const KolmogorovStructure& structure);

/// (t, x)⁻¹ = (-t, -e^{-tB}x)
GroupPoint inverse(const GroupPoint& z, const KolmogorovStructure& structure);

enum class NormExponent {
    /// |x_i|^{1/(2j+1)}: homogeneous of degree one under dilations.
    Homogeneous,
    /// |x_i|^{2j+1}, the exponent as it appears in the original printed formula.
    /// Kept only for side-by-side comparison.
    Printed,
};

/// ‖(t, x)‖_B = |t|^{1/2} + Σ_j Σ_{i in block j} |x_i|^{1/(2j+1)}.
double b_norm(const GroupPoint& z, const KolmogorovStructure& structure,
              NormExponent exponent = NormExponent::Homogeneous);

/// Space part |x|_B of the norm only.
double b_norm_space(const Eigen::VectorXd& x, const KolmogorovStructure& structure,
                    NormExponent exponent = NormExponent::Homogeneous);

/// ‖ζ⁻¹ ∘ z‖_B. Not symmetric in general.
double semi_distance(const GroupPoint& zeta, const GroupPoint& z, const KolmogorovStructure& structure,
                     NormExponent exponent = NormExponent::Homogeneous);

/// Max-norm error relative to max(1, ‖reference‖_max).
double relative_error(const Eigen::MatrixXd& value, const Eigen::MatrixXd& reference);
double relative_error(const GroupPoint& value, const GroupPoint& reference);

} // namespace kolmo
