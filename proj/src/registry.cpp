#include "kolmo/registry.hpp"

#include "kolmo/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace kolmo {

namespace {

using std::cos;
using std::exp;
using std::sin;

// Index of the coordinate named "y": first coordinate of block 1, or the last
// coordinate when there is a single block.
int y_coordinate(const KolmogorovStructure& s)
{
    return s.depth() >= 1 ? s.block_begin(1) : s.dimension() - 1;
}

struct Constant {
    double c;
    template <class T>
    T operator()(const T& t, std::span<const T>) const { return constant_like(t, c); }
};

struct Time {
    template <class T>
    T operator()(const T& t, std::span<const T>) const { return t; }
};

struct Coordinate {
    int i;
    template <class T>
    T operator()(const T&, std::span<const T> x) const { return x[i]; }
};

struct Linear {
    int last;
    template <class T>
    T operator()(const T& t, std::span<const T> x) const { return 2.0 + 0.5 * t - x[0] + 0.75 * x[last]; }
};

struct Product {
    int a, b;
    template <class T>
    T operator()(const T&, std::span<const T> x) const { return x[a] * x[b]; }
};

struct CubicX {
    template <class T>
    T operator()(const T&, std::span<const T> x) const
    {
        const T& u = x[0];
        return u * u * u - 2.0 * (u * u) + 0.5 * u + 1.0;
    }
};

struct SinMix {
    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        T phase = 0.7 * t;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double c = (i % 2 == 0 ? 0.9 : -0.6) / (1.0 + static_cast<double>(i));
            phase += c * x[i];
        }
        return sin(phase);
    }
};

struct ExpMix {
    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        T a = 0.3 * t - 0.5 * x[0];
        for (std::size_t i = 1; i < x.size(); ++i) {
            a += (0.4 / static_cast<double>(i)) * x[i];
        }
        return exp(a);
    }
};

struct CosProd {
    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        const T& last = x[x.size() - 1];
        return cos(t - x[0]) * (1.0 + last * last);
    }
};

struct PolyTrig {
    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        const T& last = x[x.size() - 1];
        return (1.0 + t + x[0] * x[0]) * sin(last + 0.5 * t);
    }
};

struct Gauss {
    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        T q = t * t;
        for (const T& xi : x) {
            q += xi * xi;
        }
        return exp(-0.5 * q);
    }
};

struct IntrinsicMonomial {
    int k;
    std::vector<int> beta;
    GroupPoint center;
    std::shared_ptr<const KolmogorovStructure> structure;

    template <class T>
    T operator()(const T& t, std::span<const T> x) const
    {
        const T tau = t - center.t;
        const auto e = exp_apply(structure->matrix(), tau, center.x);
        T m = constant_like(t, 1.0);
        for (int i = 0; i < k; ++i) {
            m = m * tau;
        }
        for (std::size_t i = 0; i < beta.size(); ++i) {
            const T w = x[i] - e[i];
            for (int c = 0; c < beta[i]; ++c) {
                m = m * w;
            }
        }
        return m;
    }
};

std::vector<double> parse_numbers(std::string_view text)
{
    std::vector<double> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("malformed number '" + item + "'");
        }
        if (used != item.size()) {
            throw ValidationError("malformed number '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

DerivativeOracle parse_monomial(std::string_view spec, std::shared_ptr<const KolmogorovStructure> structure)
{
    // mono:<k>:<b1>,...,<bd>[@<s>,<xi1>,...]
    const auto body = spec.substr(5);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError("monomial spec must read mono:<k>:<beta>[@<center>]");
    }
    const auto at = body.find('@');
    const auto k_text = body.substr(0, colon);
    const auto beta_text = body.substr(colon + 1, at == std::string_view::npos ? std::string_view::npos : at - colon - 1);
    int k = 0;
    if (auto [p, ec] = std::from_chars(k_text.data(), k_text.data() + k_text.size(), k);
        ec != std::errc() || p != k_text.data() + k_text.size() || k < 0) {
        throw ValidationError("monomial order k must be a non-negative integer");
    }
    std::vector<int> beta;
    for (double b : parse_numbers(beta_text)) {
        if (b < 0 || b != std::floor(b)) {
            throw ValidationError("monomial exponents must be non-negative integers");
        }
        beta.push_back(static_cast<int>(b));
    }
    GroupPoint center = GroupPoint::identity(structure->dimension());
    if (at != std::string_view::npos) {
        const auto c = parse_numbers(body.substr(at + 1));
        if (static_cast<int>(c.size()) != structure->dimension() + 1) {
            throw DimensionError("monomial center needs t and d space coordinates");
        }
        center = GroupPoint::from_stacked(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    const MultiIndex multi_index(std::move(beta), *structure);
    return make_intrinsic_monomial(k, multi_index, center, std::move(structure));
}

} // namespace

DerivativeOracle make_intrinsic_monomial(int k, const MultiIndex& beta, const GroupPoint& center,
                                         std::shared_ptr<const KolmogorovStructure> structure)
{
    if (k < 0) {
        throw ValidationError("monomial order k must be non-negative");
    }
    if (center.dimension() != structure->dimension()) {
        throw DimensionError("monomial center dimension does not match structure");
    }
    std::string name = "mono:" + std::to_string(k) + ":";
    for (std::size_t i = 0; i < beta.size(); ++i) {
        name += (i ? "," : "") + std::to_string(beta[i]);
    }
    IntrinsicMonomial f{k, {beta.entries().begin(), beta.entries().end()}, center, structure};
    return make_jet_oracle(std::move(structure), std::move(f), kSmoothRegularity, std::move(name));
}

DerivativeOracle make_function(std::string_view spec, std::shared_ptr<const KolmogorovStructure> structure)
{
    if (!structure) {
        throw ValidationError("registry functions need a structure");
    }
    const int d = structure->dimension();
    const std::string name(spec);
    auto jet = [&](auto f) { return make_jet_oracle(structure, f, kSmoothRegularity, name); };

    if (spec.starts_with("mono:")) {
        return parse_monomial(spec, structure);
    }
    if (spec == "const") return jet(Constant{1.5});
    if (spec == "t") return jet(Time{});
    if (spec == "y") return jet(Coordinate{y_coordinate(*structure)});
    if (spec == "linear") return jet(Linear{d - 1});
    if (spec == "xy") return jet(Product{0, y_coordinate(*structure)});
    if (spec == "cubic_x") return jet(CubicX{});
    if (spec == "sin_mix") return jet(SinMix{});
    if (spec == "exp_mix") return jet(ExpMix{});
    if (spec == "cos_prod") return jet(CosProd{});
    if (spec == "poly_trig") return jet(PolyTrig{});
    if (spec == "gauss") return jet(Gauss{});
    if (spec == "absx1") {
        return DerivativeOracle(
            structure, [](const GroupPoint& z) { return std::abs(z.x(0)); }, std::nullopt, 0, name);
    }
    if (spec.size() > 1 && spec[0] == 'x') {
        int i = 0;
        const auto digits = spec.substr(1);
        if (auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
            ec == std::errc() && p == digits.data() + digits.size()) {
            if (i < 1 || i > d) {
                throw ValidationError("coordinate function " + name + " outside x1..x" + std::to_string(d));
            }
            return jet(Coordinate{i - 1});
        }
    }
    throw ValidationError("unknown function '" + name + "'");
}

std::vector<std::string> registry_names(const KolmogorovStructure& structure)
{
    std::vector<std::string> names = {"const", "t", "y", "linear", "xy", "cubic_x", "sin_mix",
                                      "exp_mix", "cos_prod", "poly_trig", "gauss", "absx1"};
    for (int i = 1; i <= structure.dimension(); ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return names;
}

std::vector<std::string> smooth_registry()
{
    return {"sin_mix", "exp_mix", "cos_prod", "poly_trig", "gauss"};
}

} // namespace kolmo
