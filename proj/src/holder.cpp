#include "kolmo/holder.hpp"

#include "kolmo/detail/parallel.hpp"
#include "kolmo/errors.hpp"

#include <cmath>
#include <vector>

namespace kolmo {

namespace {

constexpr int kBisections = 40;
constexpr int kCurveSamples = 8;
constexpr int kReferenceGrid = 4;

bool is_nonempty(const Box& b)
{
    if (b.lower.dimension() != b.upper.dimension() || b.lower.dimension() == 0) {
        return false;
    }
    const Eigen::VectorXd lo = b.lower.stacked();
    const Eigen::VectorXd hi = b.upper.stacked();
    return lo.allFinite() && hi.allFinite() && (lo.array() < hi.array()).all();
}

bool curves_inside(const GroupPoint& z, double bar, const Box& omega, const KolmogorovStructure& s)
{
    for (int i = 0; i < s.block_size(0); ++i) {
        for (double sign : {-1.0, 1.0}) {
            if (!omega.contains(advance(LieOp::partial(i), sign * bar, z, s))) {
                return false;
            }
        }
    }
    for (int j = 1; j <= kCurveSamples; ++j) {
        const double delta = bar * static_cast<double>(j) / kCurveSamples;
        if (!omega.contains(advance(LieOp::Y(), delta, z, s)) || !omega.contains(advance(LieOp::Y(), -delta, z, s))) {
            return false;
        }
    }
    return true;
}

/// Lattice with `intervals` steps per axis over the closed box.
class Lattice {
public:
    Lattice(const Box& box, int intervals)
        : lo_(box.lower.stacked()), hi_(box.upper.stacked()), intervals_(intervals)
    {
        count_ = 1;
        for (Eigen::Index a = 0; a < lo_.size(); ++a) {
            count_ *= intervals_ + 1;
        }
    }

    std::int64_t size() const { return count_; }

    GroupPoint point(std::int64_t index) const
    {
        Eigen::VectorXd p(lo_.size());
        for (Eigen::Index a = 0; a < lo_.size(); ++a) {
            const auto j = index % (intervals_ + 1);
            index /= intervals_ + 1;
            // endpoints exact so that refined lattices contain the coarse ones bit for bit
            p(a) = j == intervals_ ? hi_(a) : lo_(a) + (hi_(a) - lo_(a)) * static_cast<double>(j) / intervals_;
        }
        return GroupPoint::from_stacked(p);
    }

private:
    Eigen::VectorXd lo_;
    Eigen::VectorXd hi_;
    int intervals_;
    std::int64_t count_ = 0;
};

std::vector<double> delta_grid(double delta_omega0)
{
    std::vector<double> out(kDeltaSamples);
    const double lo = std::log(1e-4 * delta_omega0);
    const double hi = std::log(delta_omega0);
    for (int i = 0; i < kDeltaSamples; ++i) {
        out[i] = i == kDeltaSamples - 1 ? delta_omega0
                                        : std::exp(lo + (hi - lo) * static_cast<double>(i) / (kDeltaSamples - 1));
    }
    return out;
}

double field_exponent(LieOp field, double alpha, const KolmogorovStructure& s)
{
    if (field.is_drift()) {
        if (!(alpha > 0.0 && alpha <= 2.0)) {
            throw RangeError("Y-Hölder exponent must lie in ]0, 2]");
        }
        return 0.5 * alpha;
    }
    if (field.coordinate() < 0 || field.coordinate() >= s.block_size(0)) {
        throw FieldIndexError("X_" + std::to_string(field.coordinate() + 1) + " is not a field");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw RangeError("X-Hölder exponent must lie in ]0, 1]");
    }
    return alpha;
}

struct PointBest {
    double value = 0.0;
    int delta_index = -1;
    double delta = 0.0;
};

PointBest sweep_point(const DerivativeOracle& u, const GroupPoint& z, LieOp field, double exponent,
                      const std::vector<double>& deltas)
{
    const KolmogorovStructure& s = u.structure();
    const double base = u(z);
    PointBest best;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double denom = std::pow(deltas[i], exponent);
        for (double sign : {-1.0, 1.0}) {
            const double delta = sign * deltas[i];
            const double q = std::abs(u(advance(field, delta, z, s)) - base) / denom;
            if (q > best.value) {
                best = {q, static_cast<int>(i), delta};
            }
        }
    }
    return best;
}

struct SweepSetup {
    Lattice lattice;
    std::vector<double> deltas;
    double exponent;
};

SweepSetup prepare(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha, int grid,
                   double delta_omega0)
{
    if (grid < 1) {
        throw ValidationError("seminorm grid needs at least one interval per axis");
    }
    if (domain.inner().dimension() != u.structure().dimension()) {
        throw DimensionError("domain dimension does not match structure");
    }
    if (!(delta_omega0 > 0.0)) {
        throw DomainError("delta_Omega0 must be positive");
    }
    return {Lattice(domain.inner(), grid), delta_grid(delta_omega0), field_exponent(field, alpha, u.structure())};
}

SeminormReport make_report(const std::vector<PointBest>& per_point, const Lattice& lattice, LieOp field, int grid,
                           double delta_omega0)
{
    SeminormReport report;
    report.grid = grid;
    report.delta_omega0 = delta_omega0;
    std::int64_t arg = -1;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(per_point.size()); ++i) {
        if (per_point[i].value > report.value) {
            report.value = per_point[i].value;
            arg = i;
        }
    }
    if (arg >= 0) {
        report.argmax = SeminormSample{lattice.point(arg), per_point[arg].delta, field.label()};
    }
    return report;
}

} // namespace

bool Box::contains(const GroupPoint& z) const
{
    if (z.dimension() != lower.dimension()) {
        return false;
    }
    if (z.t < lower.t || z.t > upper.t) {
        return false;
    }
    return (z.x.array() >= lower.x.array()).all() && (z.x.array() <= upper.x.array()).all();
}

BoxDomain::BoxDomain(Box outer, Box inner) : outer_(std::move(outer)), inner_(std::move(inner))
{
    if (!is_nonempty(outer_) || !is_nonempty(inner_)) {
        throw DomainError("boxes must have finite corners with lower < upper in every coordinate");
    }
    if (outer_.dimension() != inner_.dimension()) {
        throw DomainError("inner and outer boxes have different dimensions");
    }
    const Eigen::VectorXd olo = outer_.lower.stacked();
    const Eigen::VectorXd ohi = outer_.upper.stacked();
    const Eigen::VectorXd ilo = inner_.lower.stacked();
    const Eigen::VectorXd ihi = inner_.upper.stacked();
    if (!((ilo.array() > olo.array()).all() && (ihi.array() < ohi.array()).all())) {
        throw DomainError("closure of the inner box must lie in the interior of the outer box");
    }
}

double delta_z(const GroupPoint& z, const Box& omega, const KolmogorovStructure& structure)
{
    if (z.dimension() != structure.dimension() || omega.dimension() != structure.dimension()) {
        throw DimensionError("point or box dimension does not match structure");
    }
    if (!omega.contains(z)) {
        throw OutsideDomainError("point lies outside the domain");
    }
    if (curves_inside(z, 1.0, omega, structure)) {
        return 1.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < kBisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        (curves_inside(z, mid, omega, structure) ? lo : hi) = mid;
    }
    return lo;
}

double delta_omega0(const BoxDomain& domain, const KolmogorovStructure& structure)
{
    const Lattice lattice(domain.inner(), kReferenceGrid);
    std::vector<double> values(static_cast<std::size_t>(lattice.size()));
    detail::parallel_for(lattice.size(), [&](std::int64_t i) {
        values[i] = delta_z(lattice.point(i), domain.outer(), structure);
    });
    double m = 1.0;
    for (double v : values) {
        m = std::min(m, v);
    }
    return m;
}

SeminormReport field_seminorm(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha, int grid)
{
    return field_seminorm(u, domain, field, alpha, grid, delta_omega0(domain, u.structure()));
}

SeminormReport field_seminorm(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha, int grid,
                              double delta_omega0)
{
    const SweepSetup setup = prepare(u, domain, field, alpha, grid, delta_omega0);
    std::vector<PointBest> per_point(static_cast<std::size_t>(setup.lattice.size()));
    detail::parallel_for(setup.lattice.size(), [&](std::int64_t i) {
        per_point[i] = sweep_point(u, setup.lattice.point(i), field, setup.exponent, setup.deltas);
    });
    return make_report(per_point, setup.lattice, field, grid, delta_omega0);
}

SeminormReport field_seminorm_serial(const DerivativeOracle& u, const BoxDomain& domain, LieOp field, double alpha,
                                     int grid, double delta_omega0)
{
    const SweepSetup setup = prepare(u, domain, field, alpha, grid, delta_omega0);
    std::vector<PointBest> per_point;
    per_point.reserve(static_cast<std::size_t>(setup.lattice.size()));
    for (std::int64_t i = 0; i < setup.lattice.size(); ++i) {
        per_point.push_back(sweep_point(u, setup.lattice.point(i), field, setup.exponent, setup.deltas));
    }
    return make_report(per_point, setup.lattice, field, grid, delta_omega0);
}

namespace {

// Sum of terms, keeping the argmax of the largest one.
struct Accumulator {
    SeminormReport total;
    double largest = -1.0;

    void add(const SeminormReport& term)
    {
        total.value += term.value;
        if (term.value > largest && term.argmax) {
            largest = term.value;
            total.argmax = term.argmax;
        }
    }
};

SeminormReport recurse(const DerivativeOracle& u, const BoxDomain& domain, int k, double alpha, int grid,
                       double delta0)
{
    const KolmogorovStructure& s = u.structure();
    if (u.regularity() < k) {
        throw InsufficientRegularity(u.name() + " declares regularity " + std::to_string(u.regularity()) +
                                     ", C^{" + std::to_string(k) + ",alpha}_B requested");
    }
    Accumulator acc;
    acc.total.grid = grid;
    acc.total.delta_omega0 = delta0;
    const int p0 = s.block_size(0);
    if (k == 0) {
        acc.add(field_seminorm(u, domain, LieOp::Y(), alpha, grid, delta0));
        for (int i = 0; i < p0; ++i) {
            acc.add(field_seminorm(u, domain, LieOp::partial(i), alpha, grid, delta0));
        }
    } else if (k == 1) {
        acc.add(field_seminorm(u, domain, LieOp::Y(), alpha + 1.0, grid, delta0));
        for (int i = 0; i < p0; ++i) {
            acc.add(recurse(u.differentiate(LieOp::partial(i)), domain, 0, alpha, grid, delta0));
        }
    } else {
        acc.add(recurse(u.differentiate(LieOp::Y()), domain, k - 2, alpha, grid, delta0));
        for (int i = 0; i < p0; ++i) {
            acc.add(recurse(u.differentiate(LieOp::partial(i)), domain, k - 1, alpha, grid, delta0));
        }
    }
    return acc.total;
}

} // namespace

SeminormReport holder_seminorm(const DerivativeOracle& u, const BoxDomain& domain, int k, double alpha,
                               const KolmogorovStructure& structure, int grid)
{
    if (structure.dimension() != u.structure().dimension()) {
        throw DimensionError("function and structure have different dimensions");
    }
    if (k < 0) {
        throw ValidationError("Hölder order must be non-negative");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw RangeError("alpha must lie in ]0, 1]");
    }
    return recurse(u, domain, k, alpha, grid, delta_omega0(domain, structure));
}

} // namespace kolmo
