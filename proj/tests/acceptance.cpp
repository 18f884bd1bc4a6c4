// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "kolmo/connect.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"
#include "kolmo/harness.hpp"
#include "kolmo/holder.hpp"
#include "kolmo/registry.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace kolmo;
using test::Gen;
using Shared = std::shared_ptr<const KolmogorovStructure>;

GroupPoint pt(double t, double x, double y) { return {t, Eigen::Vector2d(x, y)}; }

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::vector<Shared> canonical() { return {test::share(test::k1()), test::share(test::k2())}; }

Outcome group_algebra()
{
    double worst = 0.0;
    for (const auto& s : {test::k1(), test::k2(), test::k4()}) {
        Gen g(1001);
        const int d = s.dimension();
        for (int i = 0; i < 1000; ++i) {
            const GroupPoint a = g.point(d);
            const GroupPoint b = g.point(d);
            const GroupPoint c = g.point(d);
            const GroupPoint e = GroupPoint::identity(d);
            worst = std::max({worst, relative_error(compose(compose(a, b, s), c, s), compose(a, compose(b, c, s), s)),
                              relative_error(compose(e, a, s), a), relative_error(compose(a, e, s), a),
                              relative_error(compose(a, inverse(a, s), s), e),
                              relative_error(compose(inverse(a, s), a, s), e)});
            const double p = g.uniform(-2, 2);
            const double q = g.uniform(-2, 2);
            worst = std::max(worst, relative_error(exp_B(p + q, s), exp_B(p, s) * exp_B(q, s)));
            const Eigen::MatrixXd m = g.matrix(d, d, -2, 2);
            const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
            const Eigen::MatrixXd p1 = phi(m, 1);
            worst = std::max({worst, relative_error(m * p1, expm(m) - id), relative_error(m * phi(m, 2), p1 - id)});
        }
    }
    return {worst <= 1e-11, fmt("max error %.3g <= 1e-11", worst)};
}

Outcome homogeneity()
{
    const auto s = test::k1();
    Gen g(1002);
    double worst = 0.0;
    for (double lambda : {0.5, 2.0, 10.0}) {
        for (int i = 0; i < 1000; ++i) {
            const GroupPoint z = g.point(2);
            const double ref = lambda * b_norm(z, s);
            worst = std::max(worst, std::abs(b_norm(dilation(lambda, z, s), s) - ref) / ref);
        }
    }
    return {worst <= 1e-12, fmt("max relative error %.3g <= 1e-12", worst)};
}

Outcome connection()
{
    double residual = 0.0;
    double bound_ratio = 0.0;
    double law = 0.0;
    for (const auto& s : {test::k1(), test::k2()}) {
        const double eps = epsilon_bound(s);
        const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(s.block(1, 0)).singularValues().minCoeff();
        Gen g(1003);
        for (int i = 0; i < 1000; ++i) {
            const double eta = g.uniform(-0.5, 0.5) * eps;
            const auto r = connect_y(g.point(2), Eigen::VectorXd::Constant(1, eta), s);
            residual = std::max(residual, r.residual);
            if (eta != 0.0) {
                bound_ratio = std::max(bound_ratio, r.delta / (2.0 * std::cbrt(std::abs(eta) / smin)));
            }
            if (s.homogeneous()) {
                law = std::max(law, std::abs(r.delta - std::cbrt(std::abs(eta))));
            }
        }
    }
    const bool pass = residual <= 1e-10 && bound_ratio <= 1.0 && law <= 1e-12;
    return {pass, fmt("residual %.3g <= 1e-10, |δ|/bound %.3g <= 1", residual, bound_ratio) +
                      fmt(", K1 law error %.3g <= 1e-12", law)};
}

Outcome curves()
{
    double closed = 0.0;
    double cancel = 0.0;
    for (const auto& s : {test::k1(), test::k2()}) {
        Gen g(1004);
        for (int i = 0; i < 1000; ++i) {
            const GroupPoint z = g.point(2);
            const Eigen::VectorXd v = Eigen::VectorXd::Constant(1, g.uniform(-1, 1));
            const double d = g.uniform(-0.5, 0.5);
            closed = std::max(closed, relative_error(gamma(z, v, d, s), gamma_closed_form(z, v, d, s)));
            if (!s.homogeneous()) {
                const GroupPoint gz = g_curve(z, v, d, s);
                cancel = std::max({cancel, std::abs(gz.t - z.t), std::abs(gz.x(0) - z.x(0))});
            }
        }
    }
    return {closed <= 1e-11 && cancel <= 1e-11,
            fmt("closed form %.3g <= 1e-11, K2 cancellation %.3g <= 1e-11", closed, cancel)};
}

Outcome taylor_exactness()
{
    double fd_worst = 0.0;
    double ex_worst = 0.0;
    for (const auto& s : canonical()) {
        const GroupPoint zeta = pt(0.15, -0.25, 0.35);
        Gen g(1005);
        std::vector<GroupPoint> points;
        for (int i = 0; i < 200; ++i) {
            points.push_back(g.point(2));
        }
        for (int n = 0; n <= 4; ++n) {
            for (const auto& idx : enumerate_terms(n, *s)) {
                const auto m = make_intrinsic_monomial(idx.k, idx.beta, zeta, s);
                const auto fd = taylor_coefficients(m, zeta, n, DerivativeMode::FiniteDifference);
                const auto ex = taylor_coefficients(m, zeta, n, DerivativeMode::Exact);
                for (const auto& z : points) {
                    const double v = m(z);
                    fd_worst = std::max(fd_worst, std::abs(taylor_eval(fd, z, *s) - v));
                    ex_worst = std::max(ex_worst, std::abs(taylor_eval(ex, z, *s) - v));
                }
            }
        }
    }
    // machine zero: a few ulps of the O(1) monomial values
    return {fd_worst <= 1e-8 && ex_worst <= 1e-13,
            fmt("FD %.3g <= 1e-8, exact %.3g <= 1e-13", fd_worst, ex_worst)};
}

Outcome remainder_order()
{
    double margin = INFINITY;
    int fits = 0;
    int failures = 0;
    int min_samples = 1 << 30;
    for (const auto& s : canonical()) {
        for (const auto& name : smooth_registry()) {
            const auto u = make_function(name, s);
            for (int n = 0; n <= 3; ++n) {
                VerifyConfig config;
                config.order = n;
                config.alpha = 1.0;
                const auto r = verify_remainder(u, config);
                ++fits;
                if (!r.fit) {
                    failures += r.passed() ? 0 : 1;
                    continue;
                }
                min_samples = std::min(min_samples, r.fit->count);
                margin = std::min(margin, r.fit->slope - r.slope_threshold);
                failures += r.slope_pass && r.fit->count >= 32 ? 0 : 1;
            }
        }
    }
    return {failures == 0, std::to_string(fits - failures) + "/" + std::to_string(fits) + " fits" +
                               fmt(" slope >= n+α-0.15 (min margin %.3g), min samples ", margin) +
                               std::to_string(min_samples) + " >= 32"};
}

Outcome dy_reconstruction()
{
    const auto s = test::share(test::k2());
    double worst = 0.0;
    Gen g(1007);
    const LieOp dy = LieOp::partial(1);
    for (const auto& name : smooth_registry()) {
        const auto u = make_function(name, s);
        for (int i = 0; i < 100; ++i) {
            const GroupPoint z = g.point(2);
            const double direct = u.derivative(std::span<const LieOp>(&dy, 1), z, DerivativeMode::FiniteDifference);
            worst = std::max(worst, std::abs(reconstruct_dy(u, z)(0) - direct));
        }
    }
    return {worst <= 1e-6, fmt("max |difference| %.3g <= 1e-6", worst)};
}

Outcome commutator()
{
    double worst = INFINITY;
    const std::vector<double> steps = {0.1, 0.05, 0.025, 0.0125};
    for (const auto& s : canonical()) {
        for (const auto& name : smooth_registry()) {
            const auto u = make_function(name, s);
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (double h : steps) {
                const double x = std::log(h);
                const double y = std::log(commutator_check(u, pt(0.1, 0.3, -0.2), Eigen::VectorXd::Ones(1), h));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double m = static_cast<double>(steps.size());
            worst = std::min(worst, (m * sxy - sx * sy) / (m * sxx - sx * sx));
        }
    }
    return {worst >= 0.9, fmt("min measured order %.3g >= 0.9", worst)};
}

Outcome seminorm()
{
    const auto s = test::share(test::k2());
    const BoxDomain domain({pt(-2, -2, -2), pt(2, 2, 2)}, {pt(-1, -1, -1), pt(1, 1, 1)});
    const std::vector<std::string> names = {"const", "t",       "x1",      "linear",   "xy",
                                            "cubic_x", "sin_mix", "exp_mix", "cos_prod", "gauss"};
    int violations = 0;
    for (const auto& name : names) {
        const auto u = make_function(name, s);
        double previous = -1.0;
        for (int grid : {1, 2, 4}) {
            const double v = holder_seminorm(u, domain, 1, 0.5, *s, grid).value;
            violations += v < previous ? 1 : 0;
            previous = v;
        }
    }
    double exact_err = 0.0;
    for (const auto& st : canonical()) {
        for (int k = 0; k <= 2; ++k) {
            exact_err = std::max(exact_err, std::abs(holder_seminorm(make_function("const", st), domain, k, 0.5, *st, 4).value));
        }
        const auto x1 = field_seminorm(make_function("x1", st), domain, LieOp::partial(0), 1.0, 4);
        exact_err = std::max(exact_err, std::abs(x1.value - 1.0));
    }
    return {violations == 0 && exact_err <= 1e-9,
            std::to_string(violations) + " refinement violations on 10 functions" +
                fmt(", exact-value error %.3g <= 1e-9", exact_err)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"group algebra", group_algebra},
        {"homogeneity", homogeneity},
        {"connection", connection},
        {"curve identities", curves},
        {"Taylor exactness", taylor_exactness},
        {"remainder order", remainder_order},
        {"dy reconstruction", dy_reconstruction},
        {"commutator identity", commutator},
        {"seminorm estimator", seminorm},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
