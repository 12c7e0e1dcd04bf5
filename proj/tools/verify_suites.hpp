#pragma once

// Property suites behind `reidlab verify`. Each suite checks the library's
// structural identities (closed forms against residuals, invariant
// formulations against each other, transform round trips, conservation
// along simulated trajectories) and reports one verdict per property with
// the measured value and its threshold. Randomized draws are driven by the
// run seed, so a report is reproducible bit for bit.

#include <cmath>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "reidlab/reidlab.hpp"
#include "report.hpp"

namespace reidlab::verify {

using report::Verdict;

namespace detail {

inline linear::LinearBasis analytic_cos_sin(double t_lo, double t_hi,
                                            std::size_t n) {
    numerics::SampledPath q1(2), q2(2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t =
            t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        q1.push_back(t, {std::cos(t), -std::sin(t)});
        q2.push_back(t, {std::sin(t), std::cos(t)});
    }
    return linear::LinearBasis(std::move(q1), std::move(q2), 1.0, 0.0,
                               linear::FrequencyModel::constant(1.0));
}

inline linear::LinearBasis analytic_one_t(double t_lo, double t_hi,
                                          std::size_t n) {
    numerics::SampledPath q1(2), q2(2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t =
            t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        q1.push_back(t, {1.0, 0.0});
        q2.push_back(t, {t, 1.0});
    }
    return linear::LinearBasis(std::move(q1), std::move(q2), 1.0, 0.0,
                               linear::FrequencyModel::zero());
}

inline reid::ReidTrajectory m3_closed_form_trajectory(double t_lo,
                                                      double t_hi,
                                                      std::size_t n) {
    reid::ReidTrajectory traj;
    traj.base = numerics::SampledPath(2);
    traj.aux = numerics::SampledPath(2);
    traj.basis = numerics::SampledPath(4);
    traj.phase = numerics::SampledPath(1);
    traj.params = reid::ReidParams{3, 1.0};
    traj.coeffs = reid::SuperpositionCoefficients{1.0, 0.0};
    traj.wronskian = 1.0;
    traj.t0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t =
            t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double qt = std::cbrt(1.0 + 0.5 * t * t * t);
        const double qtt = 0.5 * t * t / (qt * qt);
        traj.base.push_back(t, {1.0, 0.0});
        traj.aux.push_back(t, {qt, qtt});
        traj.basis.push_back(t, {1.0, 0.0, t, 1.0});
        traj.phase.push_back(t, {t});
    }
    return traj;
}

inline Verdict bound(const std::string& name, double measured,
                     double threshold, const std::string& note = "") {
    return Verdict{name, measured < threshold, measured, threshold, note};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<Verdict> suite_superposition(std::uint64_t) {
    std::vector<Verdict> out;
    const auto cs = detail::analytic_cos_sin(0.0, 6.0, 6001);

    {
        const auto qt = reid::reid_superposition(cs, {2, 1.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < qt.size(); ++i)
            worst = std::max(worst, std::abs(qt(i, 0) - 1.0));
        out.push_back(detail::bound("superposition.pinney_fixed_point", worst,
                                    1e-12));
    }
    {
        const double alpha = 2.5;
        const auto narrow = detail::analytic_cos_sin(0.0, 1.2, 1201);
        const auto qt = reid::reid_superposition(narrow, {2, alpha});
        double worst = 0.0;
        for (std::size_t i = 0; i < qt.size(); ++i) {
            const double t = qt.t(i);
            const double pinney = std::sqrt(std::cos(t) * std::cos(t) +
                                            alpha * std::sin(t) * std::sin(t));
            worst = std::max(worst, std::abs(qt(i, 0) - pinney));
        }
        out.push_back(detail::bound("superposition.m2_matches_pinney", worst,
                                    1e-13));

        const auto residuals = numerics::fd_residual(
            qt, [alpha](double, std::span<const double> y,
                        std::span<const double>, std::span<const double> d2y) {
                return d2y[0] + y[0] - alpha * numerics::ipow(y[0], -3);
            });
        out.push_back(detail::bound("superposition.equation_residual_m2",
                                    numerics::max_residual(residuals), 1e-4));
    }
    {
        const auto lin = detail::analytic_one_t(0.0, 3.0, 3001);
        const auto qt = reid::reid_superposition(lin, {3, 1.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < qt.size(); ++i) {
            const double exact = std::cbrt(1.0 + 0.5 * std::pow(qt.t(i), 3));
            worst = std::max(worst, std::abs(qt(i, 0) - exact));
        }
        out.push_back(detail::bound("superposition.m3_closed_form", worst,
                                    1e-12));

        const auto residuals = numerics::fd_residual(
            qt, [](double t, std::span<const double> y,
                   std::span<const double>, std::span<const double> d2y) {
                return d2y[0] - t * numerics::ipow(y[0], -5);
            });
        out.push_back(detail::bound("superposition.equation_residual_m3",
                                    numerics::max_residual(residuals), 1e-4));

        // The acceleration returned by reid_rhs must match the second
        // finite-difference derivative of the superposition path.
        double rhs_worst = 0.0;
        for (std::size_t i = 1; i + 1 < qt.size(); ++i) {
            const double h = qt.t(i + 1) - qt.t(i);
            const double d2 =
                (qt(i + 1, 0) - 2.0 * qt(i, 0) + qt(i - 1, 0)) / (h * h);
            const double rhs = reid::reid_rhs(qt.t(i), qt(i, 0), lin, {3, 1.0},
                                              linear::FrequencyModel::zero());
            rhs_worst = std::max(rhs_worst, std::abs(d2 - rhs));
        }
        out.push_back(
            detail::bound("superposition.rhs_consistency", rhs_worst, 1e-4));
    }
    {
        numerics::ToleranceConfig tol;
        const auto freq = linear::FrequencyModel::zero();
        const auto basis = linear::solve_basis(freq, 0.0, 3.0, tol);
        const auto traj = reid::simulate_reid(freq, {3, 1.0}, basis,
                                              {1.0, 0.0}, {1.0, 0.0}, 0.0, 3.0,
                                              tol);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double exact =
                std::cbrt(1.0 + 0.5 * std::pow(traj.t(i), 3));
            worst = std::max(worst, std::abs(traj.aux(i, 0) - exact));
        }
        out.push_back(detail::bound("superposition.simulation_tracks_closed",
                                    worst, 1e-7));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Verdict> suite_invariants(std::uint64_t seed) {
    std::vector<Verdict> out;
    std::mt19937_64 rng(seed);

    {
        // Sampled physical m=2 invariant against the closed constant
        // (a^2 alpha + b^2 W^2)/2 for random admissible (a, b, alpha).
        numerics::ToleranceConfig tol;
        tol.rel_tol = 1e-10;
        tol.abs_tol = 1e-12;
        std::uniform_real_distribution<double> a_draw(0.5, 1.5);
        std::uniform_real_distribution<double> b_draw(-1.0, 1.0);
        std::uniform_real_distribution<double> alpha_draw(-0.45, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const reid::SuperpositionCoefficients coeffs{a_draw(rng),
                                                         b_draw(rng)};
            double alpha = alpha_draw(rng);
            if (std::abs(alpha) < 0.05) alpha = 0.5;
            const double floor = -(coeffs.b / coeffs.a) * (coeffs.b / coeffs.a);
            if (alpha <= floor) alpha = 0.5 * std::abs(alpha) + 0.1;
            // Keep the Pinney companion positive: for alpha < 0 it dies at
            // sin^2 t = 1/(1 - alpha).
            const double t1 =
                (alpha < 0.0)
                    ? 0.9 * std::asin(1.0 / std::sqrt(1.0 - alpha))
                    : 5.0;
            const auto freq = linear::FrequencyModel::constant(1.0);
            const auto basis = linear::solve_basis(freq, 0.0, t1, tol);
            const auto traj =
                reid::simulate_reid(freq, {2, alpha}, basis, coeffs,
                                    {1.0, 0.0}, 0.0, t1, tol);
            const double expect =
                invariant::el_invariant_constant_m2(coeffs, alpha, 1.0);
            const auto report = invariant::drift_report(
                traj, invariant::Formulation::m2_physical, expect);
            worst = std::max(worst, report.max_abs_drift);
        }
        out.push_back(detail::bound("invariants.closed_constant_vs_sampled",
                                    worst, 1e-6));
    }
    {
        // Zero-invariant boundary b/a = sqrt(-alpha)/W, sampled analytically.
        const double alpha = -0.49;
        const double b = std::sqrt(-alpha);
        double worst =
            std::abs(invariant::el_invariant_constant_m2({1.0, b}, alpha, 1.0));
        for (double t = 0.0; t <= 0.9; t += 0.02) {
            const double q = std::cos(t) + b * std::sin(t);
            const double q_t = -std::sin(t) + b * std::cos(t);
            const double rad =
                std::cos(t) * std::cos(t) + alpha * std::sin(t) * std::sin(t);
            const double qt = std::sqrt(rad);
            const double qt_t =
                (std::cos(t) * -std::sin(t) +
                 alpha * std::sin(t) * std::cos(t)) /
                qt;
            worst = std::max(
                worst, std::abs(invariant::el_invariant_m2(q, q_t, qt, qt_t,
                                                           alpha)));
        }
        out.push_back(detail::bound("invariants.zero_boundary", worst, 1e-10));
    }
    {
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        std::uniform_real_distribution<double> alpha_draw(-3.0, 3.0);
        double mismatches = 0.0;
        for (int k = 0; k < 200; ++k) {
            reid::SuperpositionCoefficients c{coeff(rng), coeff(rng)};
            if (std::abs(c.a) < 1e-3) c.a = 1.0;
            double alpha = alpha_draw(rng);
            if (alpha == 0.0) alpha = 1.0;
            const double w = (k % 2 == 0) ? 1.0 : -1.0;
            const bool positive = invariant::positivity_condition(c, alpha, w);
            const bool value_positive =
                invariant::el_invariant_constant_m2(c, alpha, w) > 0.0;
            if (positive != value_positive) mismatches += 1.0;
        }
        out.push_back(detail::bound("invariants.positivity_equivalence",
                                    mismatches, 0.5,
                                    "exact boolean agreement over 200 draws"));
    }
    {
        std::uniform_real_distribution<double> rt_draw(0.7, 1.5);
        std::uniform_real_distribution<double> ry_draw(-1.0, 1.0);
        std::uniform_real_distribution<double> y_draw(0.5, 2.0);
        std::uniform_real_distribution<double> alpha_draw(-2.0, 2.0);
        std::uniform_real_distribution<double> q_draw(0.5, 2.0);
        double worst = 0.0;
        for (int m = 3; m <= 5; ++m) {
            for (int k = 0; k < 100; ++k) {
                double alpha = alpha_draw(rng);
                if (std::abs(alpha) < 0.1) alpha = 0.5;
                const double w = (k % 2 == 0) ? 1.0 : -1.0;
                const reid::ReidParams params{m, alpha};
                emden_fowler::EFState s;
                s.rtilde = rt_draw(rng);
                s.rtilde_y = ry_draw(rng);
                s.y = y_draw(rng);
                const double i_ef = invariant::el_invariant_ef(
                    s.rtilde, s.rtilde_y, s.y, params, w);
                const auto hyper = emden_fowler::ef_to_hyperbolic(s);
                const double i_hyp = invariant::el_invariant_hyperbolic(
                    hyper.qtilde, hyper.qtilde_eta, params, w);
                const double q = q_draw(rng);
                const double q_t = ry_draw(rng);
                const double i_phys = invariant::el_invariant_higher_physical(
                    q, q_t, s.rtilde * q, (s.rtilde_y + s.rtilde * q * q_t) / q,
                    s.y, params, w);
                worst = std::max({worst, std::abs(i_ef - i_hyp),
                                  std::abs(i_ef - i_phys),
                                  std::abs(i_hyp - i_phys)});
            }
        }
        out.push_back(
            detail::bound("invariants.cross_formulation", worst, 1e-10));
    }
    {
        numerics::ToleranceConfig tol;
        tol.rel_tol = 1e-10;
        tol.abs_tol = 1e-12;
        double worst = 0.0;
        {
            const auto freq = linear::FrequencyModel::constant(1.0);
            const auto basis = linear::solve_basis(freq, 0.0, 10.0, tol);
            const auto traj =
                reid::simulate_reid(freq, {2, 2.0}, basis, {1.0, 0.5},
                                    {1.0, 0.0}, 0.0, 10.0, tol);
            worst = std::max(
                worst, invariant::drift_report(
                           traj, invariant::Formulation::m2_physical)
                           .rel_drift);
        }
        for (int m : {3, 4}) {
            const auto freq = linear::FrequencyModel::zero();
            const auto basis = linear::solve_basis(freq, 0.0, 10.0, tol);
            const auto traj =
                reid::simulate_reid(freq, {m, 1.0}, basis, {1.0, 0.0},
                                    {1.2, 0.3}, 0.0, 10.0, tol);
            worst = std::max(
                worst, invariant::drift_report(
                           traj, invariant::Formulation::higher_physical)
                           .rel_drift);

            const auto hyper_freq = linear::FrequencyModel::constant(-0.25);
            const auto hyper_basis =
                linear::solve_basis(hyper_freq, 0.0, 10.0, tol);
            const auto hyper_traj =
                reid::simulate_reid(hyper_freq, {m, 1.0}, hyper_basis,
                                    {1.0, 0.0}, {1.1, -0.1}, 0.0, 10.0, tol,
                                    reid::PhaseTracking::on);
            worst = std::max(
                worst, invariant::drift_report(
                           hyper_traj, invariant::Formulation::higher_ef)
                           .rel_drift);
        }
        out.push_back(detail::bound("invariants.conservation_drift", worst,
                                    1e-6));
    }
    {
        double worst = 0.0;
        for (const auto& [m, alpha, w] :
             std::vector<std::tuple<int, double, double>>{
                 {2, 1.0, -1.0}, {3, 1.0, 1.0}, {4, 0.7, 1.0}}) {
            const reid::ReidParams params{m, alpha};
            for (int k = 0; k < 20; ++k) {
                const double eta = -2.0 + 4.0 * k / 19.0;
                const auto [qt, qteta] =
                    emden_fowler::hyperbolic_solution_state(eta, params, w);
                worst = std::max(
                    worst, std::abs(invariant::el_invariant_hyperbolic(
                               qt, qteta, params, w)));
            }
        }
        out.push_back(
            detail::bound("invariants.hyperbolic_reid_zero", worst, 1e-10));
    }
    {
        const double value =
            invariant::polyanin_invariant(reid::ReidParams{3, 2.0}, 1.0);
        out.push_back(detail::bound("invariants.polyanin_m3_special",
                                    std::abs(value - 0.375), 1e-15));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Verdict> suite_ef_chain(std::uint64_t seed) {
    std::vector<Verdict> out;
    std::mt19937_64 rng(seed);

    {
        std::uniform_real_distribution<double> y_draw(0.1, 6.0);
        std::uniform_real_distribution<double> r_draw(0.2, 3.0);
        std::uniform_real_distribution<double> d_draw(-2.0, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 300; ++k) {
            emden_fowler::EFState s;
            s.y = y_draw(rng);
            s.rtilde = r_draw(rng);
            s.rtilde_y = d_draw(rng);
            const auto back = emden_fowler::hyperbolic_to_ef(
                emden_fowler::ef_to_hyperbolic(s));
            worst = std::max({worst, std::abs(back.y - s.y) / (1.0 + s.y),
                              std::abs(back.rtilde - s.rtilde),
                              std::abs(back.rtilde_y - s.rtilde_y)});
        }
        out.push_back(detail::bound("ef_chain.round_trip", worst, 1e-12));
    }
    {
        double worst = 0.0;
        {
            const reid::ReidParams params{2, 1.0};
            const auto path = numerics::sample_function(
                [](double y) { return std::sqrt(1.0 + y * y); }, 0.001, 3.0,
                3000);
            worst = std::max(worst, numerics::max_residual(
                                        emden_fowler::ef_residual(path, params,
                                                                  1.0)));
            const auto general =
                reid::pinney_general(2.0, 1.0, 1.0, params, 1.0);
            const auto gpath = numerics::sample_function(
                [&general](double y) { return general(y); }, 0.001, 3.0, 3000);
            worst = std::max(worst,
                             numerics::max_residual(emden_fowler::ef_residual(
                                 gpath, params, 1.0)));
        }
        {
            const reid::ReidParams params{3, -0.5};
            const auto ray = reid::polyanin_particular(params, 1.0);
            const auto path = numerics::sample_function(
                [&ray](double y) { return ray(y); }, 0.25, 5.0, 4751);
            worst = std::max(worst,
                             numerics::max_residual(emden_fowler::ef_residual(
                                 path, params, 1.0)));
        }
        {
            const reid::ReidParams params{3, 1.0};
            numerics::SampledPath path(1);
            for (std::size_t i = 0; i < 4001; ++i) {
                const double eta = -2.0 + 4.0 * static_cast<double>(i) / 4000.0;
                path.push_back(
                    eta, {emden_fowler::hyperbolic_solution(eta, params, 1.0)});
            }
            worst = std::max(
                worst, numerics::max_residual(
                           emden_fowler::hyperbolic_residual(path, params,
                                                             1.0)));
        }
        out.push_back(
            detail::bound("ef_chain.closed_form_residuals", worst, 1e-4));
    }
    {
        const reid::ReidParams params{3, 1.0};
        const double inv = 0.375 * std::cbrt(0.5);
        const auto sol = emden_fowler::parametric_solution(
            params, 1.0, inv, {1.0, 2.0}, emden_fowler::Branch::minus, 1.0,
            3001);
        double identity = 0.0;
        for (std::size_t i = 0; i < sol.qtilde_grid.size(); ++i)
            identity = std::max(
                identity,
                std::abs(sol.rtilde_of_q[i] -
                         sol.qtilde_grid[i] * std::sqrt(sol.y_of_q[i])));
        out.push_back(
            detail::bound("ef_chain.parametric_r_eq_Q_sqrtY", identity, 1e-10));
        out.push_back(detail::bound(
            "ef_chain.parametric_ef_residual",
            numerics::max_residual(
                emden_fowler::ef_residual(sol.ef_path(), params, 1.0)),
            1e-4));

        const double tau0 = 2.0;
        const auto plus = emden_fowler::parametric_solution(
            params, 1.0, inv, {1.0, 2.0}, emden_fowler::Branch::plus, tau0,
            501);
        const auto minus = emden_fowler::parametric_solution(
            params, 1.0, inv, {1.0, 2.0}, emden_fowler::Branch::minus, tau0,
            501);
        double reciprocal = 0.0;
        for (std::size_t i = 0; i < plus.qtilde_grid.size(); ++i)
            reciprocal = std::max(
                reciprocal, std::abs(plus.y_of_q[i] * minus.y_of_q[i] *
                                         tau0 * tau0 -
                                     1.0));
        out.push_back(detail::bound("ef_chain.parametric_branch_reciprocal",
                                    reciprocal, 1e-10));
    }
    {
        double worst = 0.0;
        {
            const auto basis = detail::analytic_cos_sin(0.003, 1.4, 400);
            const auto recovered = emden_fowler::reid_recovery_physical(
                reid::ReidParams{2, 1.0}, basis);
            const auto direct =
                reid::reid_superposition(basis, reid::ReidParams{2, 1.0});
            for (std::size_t i = 0; i < recovered.size(); ++i)
                worst = std::max(worst,
                                 std::abs(recovered(i, 0) - direct(i, 0)));
        }
        {
            const auto basis = detail::analytic_one_t(0.01, 3.0, 400);
            const auto recovered = emden_fowler::reid_recovery_physical(
                reid::ReidParams{3, 1.0}, basis);
            const auto direct =
                reid::reid_superposition(basis, reid::ReidParams{3, 1.0});
            for (std::size_t i = 0; i < recovered.size(); ++i)
                worst = std::max(worst,
                                 std::abs(recovered(i, 0) - direct(i, 0)));
        }
        out.push_back(detail::bound("ef_chain.recovery_matches_superposition",
                                    worst, 1e-10));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Verdict> suite_abel(std::uint64_t) {
    std::vector<Verdict> out;

    {
        const reid::ReidParams params{3, 1.0};
        std::vector<emden_fowler::EFState> states;
        for (double eta = -1.5; eta <= 1.5; eta += 0.05) {
            const auto [qt, qteta] =
                emden_fowler::hyperbolic_solution_state(eta, params, 1.0);
            emden_fowler::HyperbolicState h;
            h.eta = eta;
            h.qtilde = qt;
            h.qtilde_eta = qteta;
            states.push_back(emden_fowler::hyperbolic_to_ef(h));
        }
        const auto result = emden_fowler::abel_chain(states, params, 1.0);
        out.push_back(detail::bound("abel.hyperbolic_fit_zero",
                                    std::abs(result.fitted_invariant), 1e-8));
        out.push_back(detail::bound("abel.relation_residual",
                                    result.max_relation_residual, 1e-8));
    }
    {
        const reid::ReidParams params{2, 1.0};
        const auto pinney = reid::pinney_general(2.0, 1.0, 1.0, params, 1.0);
        std::vector<emden_fowler::EFState> states;
        for (double y = 0.3; y <= 4.0; y += 0.02) {
            emden_fowler::EFState s;
            s.y = y;
            s.rtilde = pinney(y);
            s.rtilde_y = pinney.derivative(y);
            states.push_back(s);
        }
        const double expect = invariant::el_invariant_ef(
            states[0].rtilde, states[0].rtilde_y, states[0].y, params, 1.0);
        const auto result = emden_fowler::abel_chain(states, params, 1.0);
        out.push_back(detail::bound(
            "abel.pinney_fit_matches_ef",
            std::abs(result.fitted_invariant - expect), 1e-6));
    }
    {
        const reid::ReidParams params{3, -0.5};
        const auto ray = reid::polyanin_particular(params, 1.0);
        std::vector<emden_fowler::EFState> states;
        for (double y = 0.5; y <= 2.0; y += 0.1) {
            emden_fowler::EFState s;
            s.y = y;
            s.rtilde = ray(y);
            s.rtilde_y = ray.derivative(y);
            states.push_back(s);
        }
        Verdict v;
        v.name = "abel.polyanin_expected_degenerate";
        v.threshold = 1.0;
        try {
            emden_fowler::abel_chain(states, params, 1.0);
            v.pass = false;
            v.measured = 0.0;
            v.note = "expected DegenerateU was not raised";
        } catch (const DegenerateU&) {
            v.pass = true;
            v.measured = 1.0;
            v.note = "expected-skip: DegenerateU raised as documented (u = 1/2 on the Polyanin ray)";
        }
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Verdict> suite_mechanics(std::uint64_t seed) {
    std::vector<Verdict> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.7, 1.8);
    std::uniform_real_distribution<double> vel(-1.5, 1.5);

    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const reid::ReidParams params{2 + k % 4,
                                          (k % 3 == 0) ? -0.8 : 1.3};
            const double w = (k % 2 == 0) ? 1.0 : -1.0;
            const double tau = pos(rng), rt = pos(rng), rdot = vel(rng);
            const double p_tau = tau * tau * rdot;
            worst = std::max(
                worst, std::abs(mechanics::hamiltonian_tau(tau, p_tau, rt,
                                                           params, w) -
                                (p_tau * rdot -
                                 mechanics::lagrangian_tau(tau, rt, rdot,
                                                           params, w))));
            const double y = pos(rng), ry = vel(rng);
            worst = std::max(
                worst,
                std::abs(mechanics::hamiltonian_y(y, -ry, rt, params, w) -
                         (-ry * (-y * y * ry) -
                          mechanics::lagrangian_y(y, rt, ry, params, w))));
        }
        out.push_back(detail::bound("mechanics.legendre_identity", worst,
                                    1e-12));
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const reid::ReidParams params{2 + k % 4, 1.3};
            const double y = pos(rng), rt = pos(rng), p = vel(rng);
            worst = std::max(
                worst,
                std::abs(mechanics::hamiltonian_y(y, p, rt, params, 1.0) -
                         mechanics::hamiltonian_tau(1.0 / y, p, rt, params,
                                                    1.0)));
        }
        out.push_back(detail::bound("mechanics.chart_agreement", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const reid::ReidParams params{2 + k % 5,
                                          (k % 3 == 0) ? -0.8 : 1.1};
            const double w = (k % 2 == 0) ? 1.0 : -1.0;
            const double y = pos(rng), rt = pos(rng), ry = vel(rng);
            const double canonical = mechanics::invariant_canonical(
                1.0 / y, rt, -ry * y * y, params, w);
            const double half =
                invariant::el_invariant_ef(rt, ry, y, params, w);
            worst = std::max(worst, std::abs(canonical - 2.0 * half));
        }
        out.push_back(detail::bound("mechanics.canonical_equals_twice_ef",
                                    worst, 1e-10));
    }
    {
        const reid::ReidParams params{3, -0.5};
        const double k_ray = std::pow(2.0, 1.0 / 6.0);
        const double h = 1e-5;
        double worst = 0.0;
        for (double tau = 0.5; tau <= 2.5; tau += 0.05) {
            const double p_plus =
                (tau + h) * (tau + h) * (-0.5 * k_ray * std::pow(tau + h, -1.5));
            const double p_minus =
                (tau - h) * (tau - h) * (-0.5 * k_ray * std::pow(tau - h, -1.5));
            const double dp_dtau = (p_plus - p_minus) / (2.0 * h);
            const double rt = k_ray / std::sqrt(tau);
            const double rdot = -0.5 * k_ray * std::pow(tau, -1.5);
            const double dl_dr =
                (mechanics::lagrangian_tau(tau, rt + h, rdot, params, 1.0) -
                 mechanics::lagrangian_tau(tau, rt - h, rdot, params, 1.0)) /
                (2.0 * h);
            worst = std::max(worst, std::abs(dp_dtau - dl_dr));
        }
        out.push_back(detail::bound("mechanics.euler_lagrange_residual",
                                    worst, 1e-4));
    }
    {
        const reid::ReidParams params{2, 1.0};
        const auto pinney = reid::pinney_general(2.0, 1.0, 1.0, params, 1.0);
        const double h = 1e-6;
        double worst = 0.0;
        for (double y = 0.5; y <= 2.0; y += 0.05) {
            const double rt = pinney(y);
            const double p = -pinney.derivative(y);
            const double dp_dy =
                -(pinney.derivative(y + h) - pinney.derivative(y - h)) /
                (2.0 * h);
            const double dh_dr =
                (mechanics::hamiltonian_y(y, p, rt + h, params, 1.0) -
                 mechanics::hamiltonian_y(y, p, rt - h, params, 1.0)) /
                (2.0 * h);
            worst = std::max(worst, std::abs(dp_dy - dh_dr / (y * y)));
        }
        out.push_back(detail::bound("mechanics.hamilton_flow_ef_residual",
                                    worst, 1e-4));
    }
    {
        const auto freq = linear::FrequencyModel::constant(1.0);
        const auto basis = linear::solve_basis(freq, 0.0, 1.4, {});
        const reid::ReidParams params{3, 1.5};
        const double h = 1e-6;
        double worst = 0.0;
        for (double t = 0.3; t <= 1.2; t += 0.1) {
            const double y =
                basis.q2_at(t) / (basis.wronskian() * basis.q1_at(t));
            const double qt = 1.1;
            const double dh_dqt =
                (mechanics::reid_hamiltonian(t, qt + h, 0.0, basis, y, params,
                                             freq) -
                 mechanics::reid_hamiltonian(t, qt - h, 0.0, basis, y, params,
                                             freq)) /
                (2.0 * h);
            const double accel = reid::reid_rhs(t, qt, basis, params, freq);
            worst = std::max(worst, std::abs(-dh_dqt - accel));
        }
        out.push_back(detail::bound("mechanics.reid_hamiltonian_rhs", worst,
                                    1e-5));
    }
    {
        double worst = 0.0;
        worst = std::max(worst, mechanics::poisson_conservation_check(
                                    detail::m3_closed_form_trajectory(0.0, 3.0,
                                                                      151),
                                    linear::FrequencyModel::zero()));
        numerics::ToleranceConfig tol;
        tol.rel_tol = 1e-10;
        tol.abs_tol = 1e-12;
        const auto freq = linear::FrequencyModel::constant(1.0);
        const auto basis = linear::solve_basis(freq, 0.0, 1.4, tol);
        const auto traj = reid::simulate_reid(freq, {2, 2.0}, basis,
                                              {1.0, 0.0}, {1.0, 0.0}, 0.0, 1.4,
                                              tol, reid::PhaseTracking::on);
        worst = std::max(worst, mechanics::poisson_conservation_check(traj,
                                                                      freq));
        out.push_back(detail::bound("mechanics.poisson_conservation", worst,
                                    1e-5));
    }
    {
        double worst = 0.0;
        for (int m : {2, 3, 4, 5}) {
            const auto kepler = mechanics::KeplerParams::integrable(1.3, 0.8, m);
            for (int k = 0; k < 20; ++k) {
                const double t = 0.1 + 2.0 * k / 19.0;
                const auto [r, rdot] =
                    mechanics::radial_solution_state(t, kepler);
                worst = std::max(
                    worst,
                    std::abs(mechanics::radial_invariant(r, rdot, kepler)));
            }
        }
        out.push_back(detail::bound("mechanics.kepler_zero_invariant", worst,
                                    1e-8));

        const auto unit = mechanics::KeplerParams::integrable(1.0, 1.0, 2);
        out.push_back(detail::bound(
            "mechanics.radial_initial_value",
            std::abs(mechanics::radial_solution(0.0, unit) - std::sqrt(2.0)),
            1e-12));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<Verdict> run_suite(const std::string& name,
                                      std::uint64_t seed) {
    if (name == "superposition") return suite_superposition(seed);
    if (name == "invariants") return suite_invariants(seed);
    if (name == "ef_chain") return suite_ef_chain(seed);
    if (name == "abel") return suite_abel(seed);
    if (name == "mechanics") return suite_mechanics(seed);
    if (name == "all") {
        std::vector<Verdict> out;
        for (const char* suite :
             {"superposition", "invariants", "ef_chain", "abel", "mechanics"}) {
            auto verdicts = run_suite(suite, seed);
            out.insert(out.end(), verdicts.begin(), verdicts.end());
        }
        return out;
    }
    throw ConfigError("verify: unknown suite '" + name + "'");
}

}  // namespace reidlab::verify
