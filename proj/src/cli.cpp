#include "kolmo/cli.hpp"

#include "kolmo/calculus.hpp"
#include "kolmo/connect.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"
#include "kolmo/harness.hpp"
#include "kolmo/holder.hpp"
#include "kolmo/io.hpp"
#include "kolmo/registry.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

namespace kolmo::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string structure;
    std::string point;
    std::string left;
    std::string right;
    std::string from;
    std::string to;
    bool printed_exponent = false;
    std::string function;
    std::string center;
    int order = 2;
    std::string derivatives = "auto";
    std::string eta;
    std::string box;
    std::string inner_box;
    double alpha = 1.0;
    int grid = 8;
    std::string field;
    std::string scales = "0.001:0.1:16";
    std::uint64_t seed = 1;
    int directions = 4;
    double tolerance = 0.15;
    std::string csv;
    std::string format = "json";
};

std::shared_ptr<const KolmogorovStructure> load(const Options& o)
{
    return std::make_shared<const KolmogorovStructure>(io::load_structure(o.structure));
}

DerivativeMode parse_mode(const std::string& text)
{
    if (text == "auto") return DerivativeMode::Auto;
    if (text == "fd") return DerivativeMode::FiniteDifference;
    if (text == "exact") return DerivativeMode::Exact;
    throw CLI::ValidationError("--derivatives", "expected auto, fd or exact");
}

LieOp parse_field(const std::string& text, const KolmogorovStructure& s)
{
    if (text == "Y") {
        return LieOp::Y();
    }
    if (text.size() > 1 && text[0] == 'X') {
        int i = 0;
        try {
            i = std::stoi(text.substr(1));
        } catch (const std::exception&) {
            i = 0;
        }
        if (i >= 1 && i <= s.block_size(0)) {
            return LieOp::partial(i - 1);
        }
    }
    throw FieldIndexError("field must be Y or X1..X" + std::to_string(s.block_size(0)) + ", got '" + text + "'");
}

std::vector<double> parse_scales(const std::string& text)
{
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) {
        throw CLI::ValidationError("--scales", "expected lo:hi:count");
    }
    const double lo = io::parse_list(text.substr(0, first)).at(0);
    const double hi = io::parse_list(text.substr(first + 1, second - first - 1)).at(0);
    const double count = io::parse_list(text.substr(second + 1)).at(0);
    if (count != std::floor(count) || count < 1 || count > 1e6) {
        throw CLI::ValidationError("--scales", "count must be a positive integer");
    }
    return log_scales(lo, hi, static_cast<int>(count));
}

int cmd_validate(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    out << "valid: true\n";
    out << "dimension: " << s->dimension() << "\n";
    out << "depth: " << s->depth() << "\n";
    out << "block_sizes:";
    for (int p : s->block_sizes()) {
        out << ' ' << p;
    }
    out << "\nhomogeneous: " << (s->homogeneous() ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_compose(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    out << io::format(compose(io::parse_point(o.left, s->dimension()), io::parse_point(o.right, s->dimension()), *s))
        << "\n";
    return kExitOk;
}

int cmd_inverse(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    out << io::format(inverse(io::parse_point(o.point, s->dimension()), *s)) << "\n";
    return kExitOk;
}

int cmd_norm(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    const auto exponent = o.printed_exponent ? NormExponent::Printed : NormExponent::Homogeneous;
    out << io::format(b_norm(io::parse_point(o.point, s->dimension()), *s, exponent)) << "\n";
    return kExitOk;
}

int cmd_distance(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    const auto exponent = o.printed_exponent ? NormExponent::Printed : NormExponent::Homogeneous;
    out << io::format(semi_distance(io::parse_point(o.from, s->dimension()), io::parse_point(o.to, s->dimension()),
                                    *s, exponent))
        << "\n";
    return kExitOk;
}

int cmd_taylor(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    const auto u = make_function(o.function, s);
    const GroupPoint center = io::parse_point(o.center, s->dimension());
    const TaylorExpansion t = taylor_coefficients(u, center, o.order, parse_mode(o.derivatives));
    json terms = json::array();
    for (const auto& term : t.terms()) {
        terms.push_back({{"k", term.index.k},
                         {"beta", std::vector<int>(term.index.beta.entries().begin(), term.index.beta.entries().end())},
                         {"degree", term.index.degree()},
                         {"coefficient", io::round15(term.coefficient)}});
    }
    const json doc = {{"function", o.function}, {"center", io::to_json(center)}, {"order", o.order}, {"terms", terms}};
    out << doc.dump(2) << "\n";
    if (!o.point.empty()) {
        out << io::format(taylor_eval(t, io::parse_point(o.point, s->dimension()), *s)) << "\n";
    }
    return kExitOk;
}

int cmd_connect(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    const ConnectionResult r = connect_y(io::parse_point(o.point, s->dimension()), io::parse_vector(o.eta), *s);
    const json doc = {{"delta", io::round15(r.delta)},
                      {"v", io::to_json(r.v)},
                      {"residual", io::round15(r.residual)},
                      {"iterations", r.iterations}};
    out << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_seminorm(const Options& o, std::ostream& out)
{
    const auto s = load(o);
    const auto u = make_function(o.function, s);
    const BoxDomain domain(io::parse_box(o.box, s->dimension()), io::parse_box(o.inner_box, s->dimension()));
    const SeminormReport report = o.field.empty()
                                      ? holder_seminorm(u, domain, o.order, o.alpha, *s, o.grid)
                                      : field_seminorm(u, domain, parse_field(o.field, *s), o.alpha, o.grid);
    json doc = io::to_json(report);
    doc["function"] = o.function;
    if (o.field.empty()) {
        doc["order"] = o.order;
    } else {
        doc["field"] = o.field;
    }
    doc["alpha"] = io::round15(o.alpha);
    out << doc.dump(2) << "\n";
    return kExitOk;
}

void write_csv(const std::vector<RemainderSample>& samples, std::ostream& out)
{
    out << "scale,b_distance,remainder\n";
    for (const auto& sm : samples) {
        out << io::format(sm.scale) << ',' << io::format(sm.b_distance) << ',' << io::format(sm.remainder) << '\n';
    }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto s = load(o);
    const auto u = make_function(o.function, s);
    const auto scales = parse_scales(o.scales);
    VerifyConfig config;
    config.order = o.order;
    config.alpha = o.alpha;
    config.scale_lo = scales.front();
    config.scale_hi = scales.back();
    config.scale_count = static_cast<int>(scales.size());
    config.directions = {o.directions, o.seed};
    config.slope_tolerance = o.tolerance;
    if (!o.center.empty()) {
        config.zeta = io::parse_point(o.center, s->dimension());
    }
    const VerifyReport r = verify_remainder(u, config);

    if (!o.csv.empty()) {
        std::ofstream file(o.csv, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot write '" + o.csv + "'");
        }
        write_csv(r.samples, file);
    }

    json summary = {{"function", o.function},
                    {"order", o.order},
                    {"alpha", io::round15(o.alpha)},
                    {"samples", r.samples.size()},
                    {"exact", r.exact},
                    {"slope_threshold", io::round15(r.slope_threshold)},
                    {"max_ratio", io::round15(r.max_ratio)},
                    {"max_time_split", io::round15(r.max_time_split)}};
    if (r.fit) {
        summary["slope"] = io::round15(r.fit->slope);
        summary["intercept"] = io::round15(r.fit->intercept);
        summary["r2"] = io::round15(r.fit->r2);
        summary["fit_count"] = r.fit->count;
    } else {
        summary["slope"] = nullptr;
        summary["r2"] = nullptr;
    }
    summary["criteria"] = {{"remainder_order", r.slope_pass}, {"time_split", r.time_split_pass}};
    summary["pass"] = r.passed();

    if (o.format == "csv") {
        write_csv(r.samples, out);
        err << summary.dump() << "\n";
    } else if (o.format == "plain") {
        for (const auto& [key, value] : summary.items()) {
            out << key << ": " << value.dump() << "\n";
        }
    } else {
        out << summary.dump(2) << "\n";
    }
    return r.passed() ? kExitOk : kExitCriteriaFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Kolmogorov group calculus: structures, Taylor polynomials, connection curves, Hölder seminorms "
                 "and remainder experiments.",
                 "kolmo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    Options o;
    std::function<int()> action;

    auto add = [&](const std::string& name, const std::string& description, auto body) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--structure", o.structure, "Structure JSON file {\"block_sizes\": [...], \"matrix\": [[...]]}")
            ->required();
        sub->callback([&action, &o, &out, &err, body] { action = [&o, &out, &err, body] { return body(o, out, err); }; });
        return sub;
    };

    add("validate", "Validate a structure and report its shape and homogeneity",
        [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_validate(opt, os); });

    auto* compose_cmd = add("compose", "Group product left∘right",
                            [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_compose(opt, os); });
    compose_cmd->add_option("--left", o.left, "Point t,x1,...,xd")->required();
    compose_cmd->add_option("--right", o.right, "Point t,x1,...,xd")->required();

    auto* inverse_cmd = add("inverse", "Group inverse of a point",
                            [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_inverse(opt, os); });
    inverse_cmd->add_option("--point", o.point, "Point t,x1,...,xd")->required();

    auto* norm_cmd = add("norm", "B-norm of a point",
                         [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_norm(opt, os); });
    norm_cmd->add_option("--point", o.point, "Point t,x1,...,xd")->required();
    norm_cmd->add_flag("--printed-exponent", o.printed_exponent,
                       "Use |x_i|^{2j+1} for block j instead of the homogeneous |x_i|^{1/(2j+1)}");

    auto* distance_cmd = add("distance", "Semi-distance ‖from⁻¹∘to‖_B",
                             [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_distance(opt, os); });
    distance_cmd->add_option("--from", o.from, "Point ζ = s,ξ1,...,ξd")->required();
    distance_cmd->add_option("--to", o.to, "Point z = t,x1,...,xd")->required();
    distance_cmd->add_flag("--printed-exponent", o.printed_exponent, "See norm --help");

    auto* taylor_cmd = add("taylor", "Intrinsic Taylor polynomial coefficients and value",
                           [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_taylor(opt, os); });
    taylor_cmd->add_option("--function", o.function, "Registry function name or mono:k:b1,...,bd[@center]")
        ->required();
    taylor_cmd->add_option("--center", o.center, "Expansion point ζ = s,ξ1,...,ξd")->required();
    taylor_cmd->add_option("--order", o.order, "Order n >= 0")->check(CLI::NonNegativeNumber)->capture_default_str();
    taylor_cmd->add_option("--point", o.point, "Evaluate T_n u(ζ, z) at z = t,x1,...,xd");
    taylor_cmd->add_option("--derivatives", o.derivatives, "auto | fd | exact")->capture_default_str();

    auto* connect_cmd = add("connect", "Solve g_{v,δ}(z) = (t, x, y + η) (r = 1 only)",
                            [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_connect(opt, os); });
    connect_cmd->add_option("--point", o.point, "Start point z = t,x1,...,xd")->required();
    connect_cmd->add_option("--eta", o.eta, "Increment η of the second block, p_1 comma-separated values")
        ->required();

    auto* seminorm_cmd = add("seminorm", "Grid estimate of a Hölder seminorm",
                             [](const Options& opt, std::ostream& os, std::ostream&) { return cmd_seminorm(opt, os); });
    seminorm_cmd->add_option("--function", o.function, "Registry function name")->required();
    seminorm_cmd->add_option("--box", o.box, "Domain Ω as lower:upper, corners t,x1,...,xd")->required();
    seminorm_cmd->add_option("--inner-box", o.inner_box, "Ω₀ as lower:upper, strictly inside Ω")->required();
    seminorm_cmd->add_option("--order", o.order, "k of C^{k,α}_B")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    seminorm_cmd->add_option("--alpha", o.alpha, "Hölder exponent")->capture_default_str();
    seminorm_cmd->add_option("--grid", o.grid, "Intervals per axis of the sampling grid")->capture_default_str();
    seminorm_cmd->add_option("--field", o.field,
                             "Single field seminorm (Y or X<i>) instead of C^{k,α}_B; α ∈ ]0,2] for Y");

    auto* verify_cmd = add("verify", "Taylor remainder order experiment",
                           [](const Options& opt, std::ostream& os, std::ostream& es) { return cmd_verify(opt, os, es); });
    verify_cmd->add_option("--function", o.function, "Registry function name")->required();
    verify_cmd->add_option("--order", o.order, "Taylor order n")->check(CLI::NonNegativeNumber)->capture_default_str();
    verify_cmd->add_option("--alpha", o.alpha, "Hölder exponent α ∈ ]0,1]")->capture_default_str();
    verify_cmd->add_option("--scales", o.scales, "lo:hi:count, log-spaced")->capture_default_str();
    verify_cmd->add_option("--seed", o.seed, "Direction sampler seed")->capture_default_str();
    verify_cmd->add_option("--directions", o.directions, "Random directions per scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--center", o.center, "Expansion point ζ (default 0.1,0.2,-0.1,...)");
    verify_cmd->add_option("--tolerance", o.tolerance, "Slope tolerance below n+α")->capture_default_str();
    verify_cmd->add_option("--csv", o.csv, "Also write samples (scale,b_distance,remainder) to this file");
    verify_cmd->add_option("--format", o.format, "Standard output: json | csv | plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action();
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const kolmo::NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const kolmo::Error& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace kolmo::cli
