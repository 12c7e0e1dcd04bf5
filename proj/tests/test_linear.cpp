#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "reidlab/linear.hpp"

using namespace reidlab;
using namespace reidlab::linear;
using numerics::SampledPath;
using numerics::ToleranceConfig;

namespace {

/// Exactly sampled cos/sin basis of omega^2 = 1 on [0, t1].
LinearBasis cos_sin_basis(double t1, std::size_t n) {
    SampledPath q1(2), q2(2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t1 * static_cast<double>(i) / static_cast<double>(n - 1);
        q1.push_back(t, {std::cos(t), -std::sin(t)});
        q2.push_back(t, {std::sin(t), std::cos(t)});
    }
    return LinearBasis(std::move(q1), std::move(q2), 1.0, 0.0,
                       FrequencyModel::constant(1.0));
}

}  // namespace

TEST_CASE("FrequencyModel evaluation") {
    REQUIRE(FrequencyModel::zero()(3.7) == 0.0);
    REQUIRE(FrequencyModel::constant(-0.25)(10.0) == -0.25);
    const auto poly = FrequencyModel::polynomial({1.0, 2.0, 3.0});
    REQUIRE(poly(2.0) == Catch::Approx(1.0 + 4.0 + 12.0));

    std::vector<double> grid, vals;
    for (double t = 0.0; t <= 5.01; t += 0.1) {
        grid.push_back(t);
        vals.push_back(1.0 + 0.5 * std::sin(t));
    }
    const auto tab = FrequencyModel::tabulated(grid, vals);
    for (double t : {0.33, 1.7, 4.2})
        REQUIRE(tab(t) == Catch::Approx(1.0 + 0.5 * std::sin(t)).margin(1e-4));
}

TEST_CASE("solve_basis: constant frequency gives cos/sin with W = 1") {
    const auto basis =
        solve_basis(FrequencyModel::constant(1.0), 0.0, 2.0 * M_PI, {});
    REQUIRE(basis.wronskian() == 1.0);
    for (std::size_t i = 0; i < basis.q1().size(); ++i) {
        const double t = basis.q1().t(i);
        REQUIRE(std::abs(basis.q1()(i, 0) - std::cos(t)) < 1e-8);
        REQUIRE(std::abs(basis.q2()(i, 0) - std::sin(t)) < 1e-8);
        REQUIRE(std::abs(basis.wronskian_at(i) - 1.0) < 1e-8);
    }
}

TEST_CASE("solve_basis: zero frequency gives q1 = 1, q2 = t") {
    const auto basis = solve_basis(FrequencyModel::zero(), 0.0, 5.0, {});
    for (std::size_t i = 0; i < basis.q1().size(); ++i) {
        const double t = basis.q1().t(i);
        REQUIRE(basis.q1()(i, 0) == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(basis.q2()(i, 0) == Catch::Approx(t).margin(1e-12));
        REQUIRE(basis.wronskian_at(i) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("solve_basis: omega^2 = -1/4 maps to the exponential basis of W = -1") {
    // u1 = q1 + q2/2 = e^{t/2}, u2 = q1 - q2/2 = e^{-t/2}. The map has
    // determinant -1, so the exponential pair carries Wronskian -1.
    const auto basis =
        solve_basis(FrequencyModel::constant(-0.25), 0.0, 2.0, {});
    for (std::size_t i = 0; i < basis.q1().size(); ++i) {
        const double t = basis.q1().t(i);
        const double u1 = basis.q1()(i, 0) + 0.5 * basis.q2()(i, 0);
        const double u2 = basis.q1()(i, 0) - 0.5 * basis.q2()(i, 0);
        const double u1t = basis.q1()(i, 1) + 0.5 * basis.q2()(i, 1);
        const double u2t = basis.q1()(i, 1) - 0.5 * basis.q2()(i, 1);
        REQUIRE(std::abs(u1 - std::exp(0.5 * t)) < 1e-8);
        REQUIRE(std::abs(u2 - std::exp(-0.5 * t)) < 1e-8);
        REQUIRE(u1 * u2t - u2 * u1t == Catch::Approx(-1.0).margin(1e-8));
    }
}

TEST_CASE("solve_basis honors a non-unit Wronskian normalization") {
    const auto basis =
        solve_basis(FrequencyModel::constant(1.0), 0.0, 3.0, {}, -1.0);
    REQUIRE(basis.wronskian() == -1.0);
    REQUIRE(std::abs(basis.wronskian_at(basis.q1().size() - 1) + 1.0) < 1e-8);
}

TEST_CASE("wronskian_drift: analytic basis has rounding-level drift") {
    const auto basis = cos_sin_basis(3.0, 301);
    REQUIRE(wronskian_drift(basis) < 1e-10);
}

TEST_CASE("wronskian_drift grows monotonically with looser tolerance") {
    ToleranceConfig tight;
    tight.rel_tol = 1e-10;
    tight.abs_tol = 1e-12;
    ToleranceConfig coarse;
    coarse.rel_tol = 1e-3;
    coarse.abs_tol = 1e-5;
    const auto freq = FrequencyModel::constant(2.0);
    const double drift_tight = wronskian_drift(solve_basis(freq, 0.0, 10.0, tight));
    const double drift_coarse = wronskian_drift(solve_basis(freq, 0.0, 10.0, coarse));
    REQUIRE(drift_tight < 1e-8);
    REQUIRE(drift_coarse > drift_tight);
}

TEST_CASE("canonical Wronskian stays within 10x the integration tolerance") {
    ToleranceConfig tol;
    tol.rel_tol = 1e-10;
    tol.abs_tol = 1e-12;
    std::vector<double> tab_grid, tab_vals;
    for (double t = -0.5; t <= 10.5; t += 0.05) {
        tab_grid.push_back(t);
        tab_vals.push_back(1.0 + 0.2 * std::cos(0.7 * t));
    }
    const std::vector<FrequencyModel> freqs = {
        FrequencyModel::zero(), FrequencyModel::constant(1.0),
        FrequencyModel::constant(-0.25),
        FrequencyModel::polynomial({1.0, 0.0, 0.01}),
        FrequencyModel::tabulated(tab_grid, tab_vals)};
    for (const auto& freq : freqs) {
        const auto basis = solve_basis(freq, 0.0, 10.0, tol);
        REQUIRE(wronskian_drift(basis) <= 10.0 * tol.rel_tol);
    }
}

TEST_CASE("reduction_of_order: cos seeds sin") {
    const SampledPath q1 = numerics::sample_functions(
        {[](double t) { return std::cos(t); },
         [](double t) { return -std::sin(t); }},
        0.0, 1.4, 1401);
    const SampledPath q2 = reduction_of_order(q1, 1.0, 0.0);
    for (std::size_t i = 0; i < q2.size(); ++i) {
        REQUIRE(std::abs(q2(i, 0) - std::sin(q2.t(i))) < 1e-8);
        REQUIRE(std::abs(q2(i, 1) - std::cos(q2.t(i))) < 1e-7);
    }
}

TEST_CASE("reduction_of_order: constant seeds the linear companion") {
    const SampledPath q1 = numerics::sample_functions(
        {[](double) { return 1.0; }, [](double) { return 0.0; }}, 0.0, 5.0,
        51);
    const SampledPath q2 = reduction_of_order(q1, 1.0, 0.0);
    for (std::size_t i = 0; i < q2.size(); ++i)
        REQUIRE(q2(i, 0) == Catch::Approx(q2.t(i)).margin(1e-12));
}

TEST_CASE("reduction_of_order output satisfies the oscillator equation") {
    const SampledPath q1 = numerics::sample_functions(
        {[](double t) { return std::cos(t); },
         [](double t) { return -std::sin(t); }},
        0.0, 1.4, 1401);
    const SampledPath q2 = reduction_of_order(q1, 1.0, 0.0);
    const auto residuals = numerics::fd_residual(
        q2, [](double, std::span<const double> y, std::span<const double>,
               std::span<const double> d2y) { return d2y[0] + y[0]; });
    REQUIRE(numerics::max_residual(residuals) < 1e-4);

    // Wronskian of seed and companion equals the requested W.
    for (std::size_t i = 0; i < q2.size(); ++i) {
        const double w = q1(i, 0) * q2(i, 1) - q2(i, 0) * q1(i, 1);
        REQUIRE(w == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("reduction_of_order rejects a zero crossing of the seed") {
    const SampledPath q1 = numerics::sample_functions(
        {[](double t) { return std::cos(t); },
         [](double t) { return -std::sin(t); }},
        0.0, 2.0, 201);
    try {
        reduction_of_order(q1, 1.0, 0.0);
        FAIL("expected SingularQ");
    } catch (const SingularQ& e) {
        REQUIRE(std::abs(e.where() - 0.5 * M_PI) < 1e-3);
    }
}

TEST_CASE("phase_integral: unit q gives Y = t - t0") {
    const SampledPath q = numerics::sample_functions(
        {[](double) { return 1.0; }, [](double) { return 0.0; }}, 1.0, 6.0,
        51);
    const SampledPath y = phase_integral(q, 1.0);
    for (std::size_t i = 0; i < y.size(); ++i)
        REQUIRE(y(i, 0) == Catch::Approx(y.t(i) - 1.0).margin(1e-12));
}

TEST_CASE("phase_integral: cosine gives Y = tan t") {
    const SampledPath q = numerics::sample_functions(
        {[](double t) { return std::cos(t); },
         [](double t) { return -std::sin(t); }},
        0.0, 1.4, 1401);
    const SampledPath y = phase_integral(q, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i)
        REQUIRE(std::abs(y(i, 0) - std::tan(y.t(i))) < 1e-8);
}

TEST_CASE("phase_integral is strictly increasing") {
    const SampledPath q = numerics::sample_functions(
        {[](double t) { return 1.0 + 0.3 * std::sin(t); },
         [](double t) { return 0.3 * std::cos(t); }},
        0.0, 8.0, 801);
    const SampledPath y = phase_integral(q, 0.0);
    for (std::size_t i = 1; i < y.size(); ++i)
        REQUIRE(y(i, 0) > y(i - 1, 0));
}

TEST_CASE("phase_integral matches the identity Y = q2 / (W q1)") {
    ToleranceConfig tol;
    std::vector<double> checkpoints;
    for (double t = 0.01; t < 1.4; t += 0.01) checkpoints.push_back(t);
    // Dense checkpoints bound the interpolation error of the 1/q1^2
    // integrand between integration nodes.
    const auto freq = FrequencyModel::constant(1.0);
    auto rhs = [&freq](double t, std::span<const double> y,
                       std::span<double> dydt) {
        const double w2 = freq(t);
        dydt[0] = y[1];
        dydt[1] = -w2 * y[0];
        dydt[2] = y[3];
        dydt[3] = -w2 * y[2];
    };
    const std::array<double, 4> y0 = {1.0, 0.0, 0.0, 1.0};
    const SampledPath joint =
        numerics::integrate_ivp(rhs, y0, 0.0, 1.4, tol, checkpoints);
    SampledPath q1(2);
    for (std::size_t i = 0; i < joint.size(); ++i)
        q1.push_back(joint.t(i), {joint(i, 0), joint(i, 1)});
    const SampledPath y = phase_integral(q1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double identity = joint(i, 2) / (1.0 * joint(i, 0));
        REQUIRE(std::abs(y(i, 0) - identity) < 1e-7);
    }
}

TEST_CASE("phase_integral rejects zero crossings") {
    const SampledPath q = numerics::sample_functions(
        {[](double t) { return std::cos(t); },
         [](double t) { return -std::sin(t); }},
        0.0, 3.0, 301);
    REQUIRE_THROWS_AS(phase_integral(q, 0.0), SingularQ);
}
