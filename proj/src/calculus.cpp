#include "kolmo/calculus.hpp"

#include "kolmo/detail/parallel.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"

#include <cmath>
#include <functional>

namespace kolmo {

namespace {

double integer_power(double base, int exponent)
{
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

int regularity_cost(LieOp op, const KolmogorovStructure& structure)
{
    return op.is_drift() ? 2 : 2 * structure.block_of(op.coordinate()) + 1;
}

template <class Eval>
double nested_difference(const Eval& eval, std::span<const LieOp> word, const GroupPoint& z, double h,
                         bool richardson, const KolmogorovStructure& structure)
{
    if (word.empty()) {
        return eval(z);
    }
    const LieOp op = word.front();
    const auto rest = word.subspan(1);
    auto along = [&](double step) {
        return nested_difference(eval, rest, advance(op, step, z, structure), h, richardson, structure);
    };
    auto central = [&](double step) { return (along(step) - along(-step)) / (2.0 * step); };
    if (!richardson) {
        return central(h);
    }
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

} // namespace

std::string LieOp::label() const
{
    return is_drift() ? "Y" : "X" + std::to_string(index_ + 1);
}

GroupPoint advance(LieOp op, double h, const GroupPoint& z, const KolmogorovStructure& structure)
{
    if (z.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    if (op.is_drift()) {
        return {z.t + h, exp_B(h, structure) * z.x};
    }
    if (op.coordinate() >= structure.dimension()) {
        throw FieldIndexError("coordinate " + std::to_string(op.coordinate()) + " out of range");
    }
    GroupPoint out = z;
    out.x(op.coordinate()) += h;
    return out;
}

DerivativeOracle::DerivativeOracle(std::shared_ptr<const KolmogorovStructure> structure, PointFunction value,
                                   std::optional<WordDerivative> exact, int regularity, std::string name)
    : structure_(std::move(structure)),
      value_(std::move(value)),
      exact_(std::move(exact)),
      regularity_(regularity),
      name_(std::move(name))
{
    if (!structure_ || !value_) {
        throw ValidationError("derivative oracle needs a structure and a value function");
    }
}

DerivativeOracle DerivativeOracle::with_fd_options(FdOptions fd) const
{
    if (!(fd.step > 0.0)) {
        throw ValidationError("finite-difference step must be positive");
    }
    DerivativeOracle out = *this;
    out.fd_ = fd;
    return out;
}

double DerivativeOracle::evaluate(const GroupPoint& z) const
{
    const double v = value_(z);
    if (!std::isfinite(v)) {
        throw EvaluationError("function " + name_ + " is not finite at the requested point");
    }
    return v;
}

double DerivativeOracle::derivative(std::span<const LieOp> word, const GroupPoint& z, DerivativeMode mode) const
{
    if (z.dimension() != structure_->dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    std::vector<LieOp> full(word.begin(), word.end());
    full.insert(full.end(), applied_.begin(), applied_.end());
    if (full.empty()) {
        return evaluate(z);
    }
    if (mode == DerivativeMode::Exact && !exact_) {
        throw ValidationError("function " + name_ + " has no exact derivatives");
    }
    if (exact_ && mode != DerivativeMode::FiniteDifference) {
        const double v = (*exact_)(full, z);
        if (!std::isfinite(v)) {
            throw EvaluationError("exact derivative of " + name_ + " is not finite");
        }
        return v;
    }
    const double h = std::pow(fd_.step, 1.0 / static_cast<double>(full.size()));
    if (h < kMinFdStep) {
        throw StepUnderflowError("nested finite-difference step " + std::to_string(h) + " below " +
                                 std::to_string(kMinFdStep));
    }
    return finite_difference(full, z, h);
}

double DerivativeOracle::finite_difference(std::span<const LieOp> word, const GroupPoint& z, double h) const
{
    auto eval = [this](const GroupPoint& p) { return evaluate(p); };
    return nested_difference(eval, word, z, h, fd_.richardson, *structure_);
}

DerivativeOracle DerivativeOracle::differentiate(LieOp op) const
{
    if (!op.is_drift() && (op.coordinate() < 0 || op.coordinate() >= structure_->dimension())) {
        throw FieldIndexError("coordinate " + std::to_string(op.coordinate()) + " out of range");
    }
    DerivativeOracle out = *this;
    out.applied_.insert(out.applied_.begin(), op);
    out.regularity_ = regularity_ - regularity_cost(op, *structure_);
    out.name_ = op.label() + "(" + name_ + ")";
    return out;
}

double finite_difference(const PointFunction& u, std::span<const LieOp> word, const GroupPoint& z, double h,
                         bool richardson, const KolmogorovStructure& structure)
{
    if (!(h >= kMinFdStep)) {
        throw StepUnderflowError("finite-difference step below " + std::to_string(kMinFdStep));
    }
    return nested_difference(u, word, z, h, richardson, structure);
}

std::vector<LieOp> mixed_word(int k, const MultiIndex& beta)
{
    std::vector<LieOp> word(static_cast<std::size_t>(k), LieOp::Y());
    for (std::size_t i = 0; i < beta.size(); ++i) {
        for (int c = 0; c < beta[i]; ++c) {
            word.push_back(LieOp::partial(static_cast<int>(i)));
        }
    }
    return word;
}

double lie_derivative_Y(const DerivativeOracle& u, const GroupPoint& z, DerivativeMode mode)
{
    const LieOp y[] = {LieOp::Y()};
    return u.derivative(y, z, mode);
}

double mixed_derivative(const DerivativeOracle& u, const GroupPoint& zeta, int k, const MultiIndex& beta,
                        DerivativeMode mode)
{
    if (k < 0) {
        throw ValidationError("derivative order k must be non-negative");
    }
    if (static_cast<int>(beta.size()) != u.structure().dimension()) {
        throw DimensionError("multi-index length does not match structure");
    }
    const int degree = 2 * k + beta.b_length();
    if (degree > u.regularity()) {
        throw InsufficientRegularity("Y^" + std::to_string(k) + " d^beta has B-degree " + std::to_string(degree) +
                                     " but " + u.name() + " declares regularity " +
                                     std::to_string(u.regularity()));
    }
    return u.derivative(mixed_word(k, beta), zeta, mode);
}

std::vector<TaylorIndex> enumerate_terms(int n, const KolmogorovStructure& structure)
{
    std::vector<TaylorIndex> out;
    if (n < 0) {
        return out;
    }
    const int d = structure.dimension();
    std::vector<int> weight(d);
    for (int i = 0; i < d; ++i) {
        weight[i] = 2 * structure.block_of(i) + 1;
    }
    std::vector<int> beta(d, 0);
    for (int k = 0; 2 * k <= n; ++k) {
        const int budget = n - 2 * k;
        // coordinates in order, each entry increasing: lexicographic order of β
        std::function<void(int, int)> fill = [&](int i, int remaining) {
            if (i == d) {
                out.push_back({k, MultiIndex(beta, structure)});
                return;
            }
            for (int b = 0; b * weight[i] <= remaining; ++b) {
                beta[i] = b;
                fill(i + 1, remaining - b * weight[i]);
            }
            beta[i] = 0;
        };
        fill(0, budget);
    }
    return out;
}

TaylorExpansion::TaylorExpansion(GroupPoint center, int order, std::vector<TaylorTerm> terms)
    : center_(std::move(center)), order_(order), terms_(std::move(terms))
{
}

double TaylorExpansion::coefficient(int k, const MultiIndex& beta) const
{
    for (const auto& term : terms_) {
        if (term.index.k == k && term.index.beta == beta) {
            return term.coefficient;
        }
    }
    throw IndexError("term (k, beta) not in the expansion");
}

namespace {

double term_coefficient(const DerivativeOracle& u, const GroupPoint& zeta, const TaylorIndex& index,
                        DerivativeMode mode)
{
    const double derivative = mixed_derivative(u, zeta, index.k, index.beta, mode);
    return derivative / (std::tgamma(index.k + 1.0) * index.beta.factorial());
}

void check_order(const DerivativeOracle& u, const GroupPoint& zeta, int n)
{
    if (n < 0) {
        throw ValidationError("Taylor order must be non-negative");
    }
    if (zeta.dimension() != u.structure().dimension()) {
        throw DimensionError("center dimension does not match structure");
    }
    if (n > u.regularity()) {
        throw InsufficientRegularity("order " + std::to_string(n) + " exceeds the declared regularity of " +
                                     u.name());
    }
}

} // namespace

TaylorExpansion taylor_coefficients(const DerivativeOracle& u, const GroupPoint& zeta, int n, DerivativeMode mode)
{
    check_order(u, zeta, n);
    auto indices = enumerate_terms(n, u.structure());
    std::vector<TaylorTerm> terms(indices.size());
    detail::parallel_for(static_cast<std::int64_t>(indices.size()), [&](std::int64_t i) {
        terms[i] = {indices[i], term_coefficient(u, zeta, indices[i], mode)};
    });
    return {zeta, n, std::move(terms)};
}

TaylorExpansion taylor_coefficients_serial(const DerivativeOracle& u, const GroupPoint& zeta, int n,
                                           DerivativeMode mode)
{
    check_order(u, zeta, n);
    std::vector<TaylorTerm> terms;
    for (auto& index : enumerate_terms(n, u.structure())) {
        const double c = term_coefficient(u, zeta, index, mode);
        terms.push_back({std::move(index), c});
    }
    return {zeta, n, std::move(terms)};
}

double taylor_eval(const TaylorExpansion& expansion, const GroupPoint& z, const KolmogorovStructure& structure)
{
    const GroupPoint& zeta = expansion.center();
    if (z.dimension() != structure.dimension() || zeta.dimension() != structure.dimension()) {
        throw DimensionError("point dimension does not match structure");
    }
    const double tau = z.t - zeta.t;
    const Eigen::VectorXd w = z.x - exp_B(tau, structure) * zeta.x;
    double sum = 0.0;
    for (const auto& term : expansion.terms()) {
        double m = term.coefficient * integer_power(tau, term.index.k);
        for (std::size_t i = 0; i < term.index.beta.size(); ++i) {
            m *= integer_power(w(static_cast<Eigen::Index>(i)), term.index.beta[i]);
        }
        sum += m;
    }
    return sum;
}

double intrinsic_monomial(int k, const MultiIndex& beta, const GroupPoint& center, const GroupPoint& z,
                          const KolmogorovStructure& structure)
{
    const double tau = z.t - center.t;
    const Eigen::VectorXd w = z.x - exp_B(tau, structure) * center.x;
    double m = integer_power(tau, k);
    for (std::size_t i = 0; i < beta.size(); ++i) {
        m *= integer_power(w(static_cast<Eigen::Index>(i)), beta[i]);
    }
    return m;
}

} // namespace kolmo
