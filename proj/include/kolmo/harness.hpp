#pragma once

#include "kolmo/calculus.hpp"
#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kolmo {

struct RemainderSample {
    GroupPoint zeta;
    GroupPoint z;
    double scale = 0.0;
    /// ‖ζ⁻¹∘z‖_B
    double b_distance = 0.0;
    /// |u(z) - T_n u(ζ, z)|
    double remainder = 0.0;
    /// (‖ζ⁻¹∘w‖_B + ‖w⁻¹∘z‖_B) / b_distance with w = e^{(t-s)Y}ζ.
    double time_split_ratio = 0.0;
};

/// Random directions θ ∈ [-1, 1]^{d+1}, drawn once and reused at every scale.
struct DirectionSpec {
    int count = 4;
    std::uint64_t seed = 1;
};

/// For each scale s and direction θ, z = ζ∘(θ_t s², θ_i s^{2j+1} for coordinate i in block j)
/// and the remainder of T_n u(ζ, ·) at z. Samples are ordered scale-major and
/// computed in parallel; the Taylor coefficients are computed once.
std::vector<RemainderSample> remainder_experiment(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                                  const std::vector<double>& scales, DirectionSpec directions,
                                                  DerivativeMode mode = DerivativeMode::Auto);
/// Single-threaded reference with identical output.
std::vector<RemainderSample> remainder_experiment_serial(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                                         const std::vector<double>& scales, DirectionSpec directions,
                                                         DerivativeMode mode = DerivativeMode::Auto);

/// count values log-spaced over [lo, hi], both ends included.
std::vector<double> log_scales(double lo, double hi, int count);

struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int count = 0;
};

/// Remainders at or below this are treated as exact zeros.
inline constexpr double kRemainderFloor = 1e-14;

/// Least-squares line through (log b_distance, log remainder) over the samples
/// with remainder > kRemainderFloor. Throws DegenerateSamples if no sample is
/// left (exact reproduction), InsufficientSamples if fewer than 8 remain or
/// their b_distance spans less than two decades.
OrderFit fit_order(const std::vector<RemainderSample>& samples);

/// |Σ_i v_i [X_i, Y]u(z) - <∇_x u, B00 v> - <∇_y u, B10 v>| with every derivative a
/// plain central difference of step h, so the defect is the stencil error.
double commutator_check(const DerivativeOracle& u, const GroupPoint& z, const Eigen::VectorXd& v, double h);

/// ∂_y u(z) from the commutator: the least-squares solution w of
/// B10ᵀ w = ([∂_x, Y] - B00ᵀ ∂_x) u(z), derivatives by finite differences.
/// Throws NotRankOneStructure unless r = 1.
Eigen::VectorXd reconstruct_dy(const DerivativeOracle& u, const GroupPoint& z);

/// |u(g_{v,δ}(z)) - T̄₃u(z, g_{v,δ}(z))| with
///
///   T̄₃u(z, ζ) = Σ_{i<=3} (ξ - x)^i/i! ∂_x^i u(z) + (η - y)/B10 ([∂_x, Y] - B00 ∂_x) u(z).
///
/// Derivatives use the exact path when available. Throws NotScalarBlocks unless p_0 = p_1 = 1 and r = 1.
double barT3_check(const DerivativeOracle& u, const GroupPoint& z, double v, double delta);

struct VerifyConfig {
    int order = 2;
    double alpha = 1.0;
    double scale_lo = 1e-3;
    double scale_hi = 1e-1;
    int scale_count = 16;
    DirectionSpec directions{};
    double slope_tolerance = 0.15;
    /// Bound on time_split_ratio.
    double time_split_bound = 4.0;
    std::optional<GroupPoint> zeta;
};

struct VerifyReport {
    std::vector<RemainderSample> samples;
    /// Absent when every remainder is below kRemainderFloor.
    std::optional<OrderFit> fit;
    bool exact = false;
    double slope_threshold = 0.0;
    /// max remainder / b_distance^{n+α}; reported only.
    double max_ratio = 0.0;
    double max_time_split = 0.0;
    bool slope_pass = false;
    bool time_split_pass = false;

    bool passed() const { return slope_pass && time_split_pass; }
};

/// Remainder experiment plus its order fit. An exact reproduction passes the
/// slope criterion. Throws InsufficientRegularity when u declares less than n.
VerifyReport verify_remainder(const DerivativeOracle& u, const VerifyConfig& config);

/// Default expansion point used when VerifyConfig::zeta is unset: (0.1, 0.2, -0.1, 0.3, ...).
GroupPoint default_center(int dimension);

} // namespace kolmo
