#include "kolmo/harness.hpp"

#include "kolmo/connect.hpp"
#include "kolmo/detail/parallel.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"

#include <cmath>
#include <random>

namespace kolmo {

namespace {

std::vector<Eigen::VectorXd> draw_directions(DirectionSpec spec, int dimension)
{
    if (spec.count < 1) {
        throw ValidationError("need at least one sampling direction");
    }
    std::mt19937_64 gen(spec.seed);
    // 53 random bits mapped to [-1, 1]; avoids implementation-defined distributions
    auto uniform = [&gen] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
    std::vector<Eigen::VectorXd> out;
    for (int i = 0; i < spec.count; ++i) {
        Eigen::VectorXd theta(dimension + 1);
        for (Eigen::Index c = 0; c < theta.size(); ++c) {
            theta(c) = uniform();
        }
        out.push_back(std::move(theta));
    }
    return out;
}

GroupPoint increment(const Eigen::VectorXd& theta, double scale, const KolmogorovStructure& s)
{
    GroupPoint inc = GroupPoint::identity(s.dimension());
    inc.t = theta(0) * scale * scale;
    for (int c = 0; c < s.dimension(); ++c) {
        inc.x(c) = theta(c + 1) * std::pow(scale, 2 * s.block_of(c) + 1);
    }
    return inc;
}

struct Experiment {
    TaylorExpansion expansion;
    std::vector<Eigen::VectorXd> directions;
};

Experiment prepare(const DerivativeOracle& u, const GroupPoint& zeta, int n, DirectionSpec spec,
                   DerivativeMode mode, bool parallel)
{
    if (zeta.dimension() != u.structure().dimension()) {
        throw DimensionError("expansion point dimension does not match structure");
    }
    auto expansion = parallel ? taylor_coefficients(u, zeta, n, mode) : taylor_coefficients_serial(u, zeta, n, mode);
    return {std::move(expansion), draw_directions(spec, u.structure().dimension())};
}

RemainderSample make_sample(const DerivativeOracle& u, const Experiment& e, double scale, const Eigen::VectorXd& theta)
{
    const KolmogorovStructure& s = u.structure();
    const GroupPoint& zeta = e.expansion.center();
    RemainderSample out;
    out.zeta = zeta;
    out.scale = scale;
    out.z = compose(zeta, increment(theta, scale, s), s);
    out.b_distance = semi_distance(zeta, out.z, s);
    out.remainder = std::abs(u(out.z) - taylor_eval(e.expansion, out.z, s));
    const GroupPoint w = advance(LieOp::Y(), out.z.t - zeta.t, zeta, s);
    const double split = semi_distance(zeta, w, s) + semi_distance(w, out.z, s);
    out.time_split_ratio = out.b_distance > 0.0 ? split / out.b_distance : 1.0;
    return out;
}

std::vector<double> finite_scales(const std::vector<double>& scales)
{
    for (double sc : scales) {
        if (!(sc > 0.0) || !std::isfinite(sc)) {
            throw ValidationError("scales must be positive and finite");
        }
    }
    return scales;
}

} // namespace

std::vector<RemainderSample> remainder_experiment(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                                  const std::vector<double>& scales, DirectionSpec directions,
                                                  DerivativeMode mode)
{
    const auto sc = finite_scales(scales);
    if (sc.empty()) {
        return {};
    }
    const Experiment e = prepare(u, zeta, n, directions, mode, true);
    const auto per_scale = static_cast<std::int64_t>(e.directions.size());
    std::vector<RemainderSample> out(sc.size() * e.directions.size());
    detail::parallel_for(static_cast<std::int64_t>(out.size()), [&](std::int64_t i) {
        out[i] = make_sample(u, e, sc[i / per_scale], e.directions[i % per_scale]);
    });
    return out;
}

std::vector<RemainderSample> remainder_experiment_serial(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                                         const std::vector<double>& scales, DirectionSpec directions,
                                                         DerivativeMode mode)
{
    const auto sc = finite_scales(scales);
    if (sc.empty()) {
        return {};
    }
    const Experiment e = prepare(u, zeta, n, directions, mode, false);
    std::vector<RemainderSample> out;
    for (double scale : sc) {
        for (const auto& theta : e.directions) {
            out.push_back(make_sample(u, e, scale, theta));
        }
    }
    return out;
}

std::vector<double> log_scales(double lo, double hi, int count)
{
    if (!(lo > 0.0) || !(hi >= lo) || count < 1 || (count == 1 && hi != lo)) {
        throw ValidationError("scales need 0 < lo <= hi and count >= 1 (count = 1 only when lo = hi)");
    }
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        out[i] = count == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

OrderFit fit_order(const std::vector<RemainderSample>& samples)
{
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& s : samples) {
        if (s.remainder > kRemainderFloor && s.b_distance > 0.0) {
            lx.push_back(std::log(s.b_distance));
            ly.push_back(std::log(s.remainder));
        }
    }
    if (lx.empty()) {
        throw DegenerateSamples("all remainders at or below 1e-14: exact reproduction");
    }
    const auto [lo, hi] = std::minmax_element(lx.begin(), lx.end());
    if (lx.size() < 8 || *hi - *lo < 2.0 * std::log(10.0)) {
        throw InsufficientSamples("order fit needs >= 8 positive remainders spanning two decades (have " +
                                  std::to_string(lx.size()) + ")");
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    OrderFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    fit.count = static_cast<int>(lx.size());
    return fit;
}

double commutator_check(const DerivativeOracle& u, const GroupPoint& z, const Eigen::VectorXd& v, double h)
{
    const KolmogorovStructure& s = u.structure();
    const int p0 = s.block_size(0);
    if (v.size() != p0) {
        throw DimensionError("direction must have p_0 entries");
    }
    if (!(h > 0.0)) {
        throw ValidationError("step must be positive");
    }
    const PointFunction f = [&u](const GroupPoint& p) { return u(p); };
    auto fd = [&](std::initializer_list<LieOp> word) {
        return finite_difference(f, std::span<const LieOp>(word.begin(), word.size()), z, h, false, s);
    };

    double lhs = 0.0;
    for (int i = 0; i < p0; ++i) {
        if (v(i) != 0.0) {
            const LieOp xi = LieOp::partial(i);
            lhs += v(i) * (fd({xi, LieOp::Y()}) - fd({LieOp::Y(), xi}));
        }
    }
    // B (v, 0): the first block column, i.e. B00 v stacked over B10 v
    const Eigen::VectorXd bv = s.matrix().leftCols(p0) * v;
    double rhs = 0.0;
    for (int c = 0; c < s.dimension(); ++c) {
        if (bv(c) != 0.0) {
            rhs += bv(c) * fd({LieOp::partial(c)});
        }
    }
    return std::abs(lhs - rhs);
}

Eigen::VectorXd reconstruct_dy(const DerivativeOracle& u, const GroupPoint& z)
{
    const KolmogorovStructure& s = u.structure();
    if (s.depth() != 1) {
        throw NotRankOneStructure("reconstruction of the y-gradient needs r = 1");
    }
    const int p0 = s.block_size(0);
    constexpr auto fd = DerivativeMode::FiniteDifference;
    Eigen::VectorXd rhs(p0);
    Eigen::VectorXd grad_x(p0);
    for (int i = 0; i < p0; ++i) {
        const LieOp xi = LieOp::partial(i);
        const LieOp xy[] = {xi, LieOp::Y()};
        const LieOp yx[] = {LieOp::Y(), xi};
        const LieOp x1[] = {xi};
        rhs(i) = u.derivative(xy, z, fd) - u.derivative(yx, z, fd);
        grad_x(i) = u.derivative(x1, z, fd);
    }
    rhs -= s.block(0, 0).transpose() * grad_x;
    return s.block(1, 0).transpose().completeOrthogonalDecomposition().solve(rhs);
}

double barT3_check(const DerivativeOracle& u, const GroupPoint& z, double v, double delta)
{
    const KolmogorovStructure& s = u.structure();
    if (s.depth() != 1 || s.block_size(0) != 1 || s.block_size(1) != 1) {
        throw NotScalarBlocks("T-bar-3 is defined for p_0 = p_1 = 1");
    }
    const GroupPoint g = g_curve(z, Eigen::VectorXd::Constant(1, v), delta, s);
    const double b00 = s.block(0, 0)(0, 0);
    const double b10 = s.block(1, 0)(0, 0);
    const LieOp x = LieOp::partial(0);

    double taylor = 0.0;
    double power = 1.0;
    double factorial = 1.0;
    std::vector<LieOp> word;
    for (int i = 0; i <= 3; ++i) {
        if (i > 0) {
            power *= g.x(0) - z.x(0);
            factorial *= i;
            word.push_back(x);
        }
        if (power != 0.0 || i == 0) {
            taylor += power / factorial * u.derivative(word, z);
        }
    }
    const LieOp xy[] = {x, LieOp::Y()};
    const LieOp yx[] = {LieOp::Y(), x};
    const LieOp x1[] = {x};
    const double commutator = u.derivative(xy, z) - u.derivative(yx, z);
    taylor += (g.x(1) - z.x(1)) / b10 * (commutator - b00 * u.derivative(x1, z));
    return std::abs(u(g) - taylor);
}

GroupPoint default_center(int dimension)
{
    static constexpr double kPattern[] = {0.2, -0.1, 0.3, -0.25};
    GroupPoint out = GroupPoint::identity(dimension);
    out.t = 0.1;
    for (int i = 0; i < dimension; ++i) {
        out.x(i) = kPattern[i % 4];
    }
    return out;
}

VerifyReport verify_remainder(const DerivativeOracle& u, const VerifyConfig& config)
{
    if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
        throw RangeError("alpha must lie in ]0, 1]");
    }
    if (u.regularity() < config.order) {
        throw InsufficientRegularity(u.name() + " declares regularity " + std::to_string(u.regularity()) +
                                     " below the order " + std::to_string(config.order));
    }
    const KolmogorovStructure& s = u.structure();
    const GroupPoint zeta = config.zeta.value_or(default_center(s.dimension()));
    VerifyReport report;
    report.samples = remainder_experiment(u, zeta, config.order,
                                          log_scales(config.scale_lo, config.scale_hi, config.scale_count),
                                          config.directions);
    const double exponent = config.order + config.alpha;
    report.slope_threshold = exponent - config.slope_tolerance;
    for (const auto& sm : report.samples) {
        if (sm.b_distance > 0.0) {
            report.max_ratio = std::max(report.max_ratio, sm.remainder / std::pow(sm.b_distance, exponent));
        }
        report.max_time_split = std::max(report.max_time_split, sm.time_split_ratio);
    }
    try {
        report.fit = fit_order(report.samples);
        report.slope_pass = report.fit->slope >= report.slope_threshold;
    } catch (const DegenerateSamples&) {
        report.exact = true;
        report.slope_pass = true;
    }
    report.time_split_pass = report.max_time_split <= config.time_split_bound;
    return report;
}

} // namespace kolmo
