#pragma once

// The Emden-Fowler reduction of the Reid system and its solution machinery:
//
//   rtilde = qtilde / q,  Y = int dt / q^2   maps the Reid equation to
//   rtilde_YY = alpha W^{m-2} Y^{m-2} rtilde^{1-2m},
//
// and the further substitutions tau = 1/Y, Qtilde = rtilde / sqrt(Y),
// tau = e^eta produce the constant-coefficient hyperbolic oscillator
// Qtilde_etaeta - Qtilde/4 = alpha W^{m-2} Qtilde^{1-2m}. The module holds
// the coordinate transforms (with their chain-rule derivative maps, derived
// once and verified by finite-difference tests), the closed-form solutions,
// the exponential parametric quadrature solutions, the recovery of the
// nonlinear superposition formula, and the Abel -> Bernoulli -> linear
// reduction whose integration constant recovers the invariant.
//
// Derivative maps used throughout (eta = -ln Y):
//   Qtilde     = rtilde / sqrt(Y)
//   Qtilde_eta = (1/2) rtilde / sqrt(Y) - rtilde_Y sqrt(Y)
//   rtilde     = Qtilde sqrt(Y)
//   rtilde_Y   = ((1/2) Qtilde - Qtilde_eta) / sqrt(Y)

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "reidlab/errors.hpp"
#include "reidlab/linear.hpp"
#include "reidlab/numerics.hpp"
#include "reidlab/reid.hpp"

namespace reidlab::emden_fowler {

using linear::LinearBasis;
using numerics::SampledPath;
using numerics::ToleranceConfig;
using reid::ReidParams;

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// Emden-Fowler coordinates (Y, rtilde, rtilde_Y).
struct EFState {
    double y = 1.0;
    double rtilde = 1.0;
    double rtilde_y = 0.0;

    void validate() const {
        if (!numerics::is_finite(y) || !numerics::is_finite(rtilde) ||
            !numerics::is_finite(rtilde_y))
            throw NonFiniteState("EFState: non-finite component");
        if (!(y > 0.0)) throw NonpositiveY("EFState: Y must be positive", y);
        if (!(rtilde > 0.0))
            throw SingularRtilde("EFState: rtilde must be positive");
    }
};

/// Hyperbolic-chart coordinates (eta, Qtilde, Qtilde_eta), tau = e^eta.
struct HyperbolicState {
    double eta = 0.0;
    double qtilde = 1.0;
    double qtilde_eta = 0.0;

    void validate() const {
        if (!numerics::is_finite(eta) || !numerics::is_finite(qtilde) ||
            !numerics::is_finite(qtilde_eta))
            throw NonFiniteState("HyperbolicState: non-finite component");
        if (!(qtilde > 0.0))
            throw SingularQtilde("HyperbolicState: Qtilde must be positive");
    }
};

/// One point of the Abel reduction chain z -> u -> v -> phi. At an
/// isolated crossing of u = 1/2 the reciprocal v diverges (stored as
/// +/-inf) while phi = (u - 1/2)^2 stays finite; only a path with
/// u = 1/2 identically (the Polyanin ray) makes the chain singular.
struct AbelChainState {
    double z = 0.0;    // (Y / rtilde^2)^m
    double u = 0.0;    // Y rtilde_Y / rtilde
    double v = 0.0;    // 1 / (u - 1/2)
    double phi = 0.0;  // v^{-2} = (u - 1/2)^2
};

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// Physical sample -> Emden-Fowler state: rtilde = qtilde/q and
/// rtilde_Y = q qtilde_t - qtilde q_t (the Wronskian of q and qtilde).
inline EFState to_ef(double q, double q_t, double qtilde, double qtilde_t,
                     double y) {
    if (q == 0.0) throw SingularQ("to_ef: q = 0");
    EFState state;
    state.y = y;
    state.rtilde = qtilde / q;
    state.rtilde_y = q * qtilde_t - qtilde * q_t;
    if (!numerics::is_finite(state.rtilde) ||
        !numerics::is_finite(state.rtilde_y))
        throw NonFiniteState("to_ef: non-finite state");
    return state;
}

inline HyperbolicState ef_to_hyperbolic(const EFState& state) {
    state.validate();
    const double sqrt_y = std::sqrt(state.y);
    HyperbolicState out;
    out.eta = -std::log(state.y);
    out.qtilde = state.rtilde / sqrt_y;
    out.qtilde_eta = 0.5 * state.rtilde / sqrt_y - state.rtilde_y * sqrt_y;
    return out;
}

inline EFState hyperbolic_to_ef(const HyperbolicState& state) {
    state.validate();
    const double y = std::exp(-state.eta);
    const double sqrt_y = std::sqrt(y);
    EFState out;
    out.y = y;
    out.rtilde = state.qtilde * sqrt_y;
    out.rtilde_y = (0.5 * state.qtilde - state.qtilde_eta) / sqrt_y;
    return out;
}

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

/// Per-point |rtilde_YY - alpha W^{m-2} Y^{m-2} rtilde^{1-2m}| of a sampled
/// rtilde(Y) path (component 0), via central finite differences.
inline std::vector<double> ef_residual(const SampledPath& path,
                                       const ReidParams& params,
                                       double wronskian) {
    params.validate();
    const double coeff =
        params.alpha * numerics::ipow(wronskian, params.m - 2);
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!(path.t(i) > 0.0))
            throw NonpositiveY("ef_residual: Y must be positive", path.t(i));
        if (!(path(i, 0) > 0.0))
            throw SingularRtilde("ef_residual: rtilde must be positive");
    }
    const int m = params.m;
    return numerics::fd_residual(
        path, [coeff, m](double y, std::span<const double> r,
                         std::span<const double>, std::span<const double> d2r) {
            return d2r[0] - coeff * numerics::ipow(y, m - 2) *
                                numerics::ipow(r[0], 1 - 2 * m);
        });
}

/// Residual of the constant-frequency hyperbolic Reid equation
/// Qtilde_etaeta - Qtilde/4 - alpha W^{m-2} Qtilde^{1-2m} on a sampled
/// Qtilde(eta) path.
inline std::vector<double> hyperbolic_residual(const SampledPath& path,
                                               const ReidParams& params,
                                               double wronskian) {
    params.validate();
    const double coeff =
        params.alpha * numerics::ipow(wronskian, params.m - 2);
    const int m = params.m;
    return numerics::fd_residual(
        path, [coeff, m](double, std::span<const double> q,
                         std::span<const double>, std::span<const double> d2q) {
            return d2q[0] - 0.25 * q[0] - coeff * numerics::ipow(q[0], 1 - 2 * m);
        });
}

// ---------------------------------------------------------------------------
// Closed forms in the hyperbolic chart
// ---------------------------------------------------------------------------

/// Reid-formula solution of the hyperbolic equation:
/// Qtilde(eta) = (e^{m eta/2} + kappa e^{-m eta/2})^{1/m}.
inline double hyperbolic_solution(double eta, const ReidParams& params,
                                  double wronskian) {
    params.validate();
    const double kappa = params.kappa(wronskian);
    const double half = 0.5 * params.m * eta;
    const double radicand = std::exp(half) + kappa * std::exp(-half);
    if (!(radicand > 0.0)) {
        std::ostringstream msg;
        msg << "hyperbolic_solution: radicand " << radicand
            << " at eta=" << eta;
        throw NegativeRadicand(msg.str(), eta);
    }
    return std::pow(radicand, 1.0 / params.m);
}

/// Value and eta-derivative of the Reid-formula solution.
inline std::pair<double, double> hyperbolic_solution_state(
    double eta, const ReidParams& params, double wronskian) {
    const double value = hyperbolic_solution(eta, params, wronskian);
    const double kappa = params.kappa(wronskian);
    const double half = 0.5 * params.m * eta;
    const double s = std::exp(half);
    const double d = kappa * std::exp(-half);
    // d/deta (s + d)^{1/m} = ((s - d)/2) (s + d)^{1/m - 1}
    const double slope = 0.5 * (s - d) * std::pow(s + d, 1.0 / params.m - 1.0);
    return {value, slope};
}

/// Energy polynomial P(Qtilde) = Qtilde^2/4 - kappa Qtilde^{2-2m} + 2I,
/// equal to Qtilde_eta^2 along solutions with invariant I. May be negative;
/// callers gate on positivity.
inline double p_polynomial(double qtilde, const ReidParams& params,
                           double wronskian, double invariant) {
    params.validate();
    if (!(qtilde > 0.0))
        throw SingularQtilde("p_polynomial: Qtilde must be positive");
    return 0.25 * qtilde * qtilde -
           params.kappa(wronskian) * numerics::ipow(qtilde, 2 - 2 * params.m) +
           2.0 * invariant;
}

// ---------------------------------------------------------------------------
// Parametric solutions
// ---------------------------------------------------------------------------

enum class Branch { plus, minus };

inline const char* to_string(Branch b) {
    return b == Branch::plus ? "+" : "-";
}

/// Exponential parametric solution of the Emden-Fowler equation,
/// parameterized by Qtilde on a grid:
///   Y(Qtilde)      = (1/tau0) exp(-s Phi(Qtilde))
///   rtilde(Qtilde) = (Qtilde/sqrt(tau0)) exp(-s Phi(Qtilde)/2)
/// with Phi the cumulative integral of P^{-1/2} from the left end of the
/// range and s = +1 for branch plus (Qtilde_eta = +sqrt(P)), s = -1 for
/// branch minus. rtilde = Qtilde sqrt(Y) holds pointwise by construction;
/// the substantive check is the Emden-Fowler residual.
struct ParametricSolution {
    std::vector<double> qtilde_grid;
    std::vector<double> y_of_q;
    std::vector<double> rtilde_of_q;
    std::vector<double> rtilde_y_of_q;  // analytic, ((1/2)Q - Q_eta)/sqrt(Y)
    Branch branch = Branch::plus;
    double tau0 = 1.0;
    double invariant = 0.0;

    /// Repackage as a sampled (rtilde, rtilde_Y) path over ascending Y.
    SampledPath ef_path() const {
        SampledPath path(2);
        const std::size_t n = qtilde_grid.size();
        const bool ascending = n >= 2 && y_of_q[1] > y_of_q[0];
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = ascending ? k : n - 1 - k;
            path.push_back(y_of_q[i], {rtilde_of_q[i], rtilde_y_of_q[i]});
        }
        return path;
    }
};

inline ParametricSolution parametric_solution(
    const ReidParams& params, double wronskian, double invariant,
    std::pair<double, double> q_range, Branch branch, double tau0,
    std::size_t n, const ToleranceConfig& tol = {}) {
    params.validate();
    const auto [lo, hi] = q_range;
    if (!(lo > 0.0) || !(hi > lo))
        throw ConfigError("parametric_solution: need 0 < Q_lo < Q_hi");
    if (!(tau0 > 0.0))
        throw ConfigError("parametric_solution: tau0 must be positive");
    if (n < 2) throw ConfigError("parametric_solution: need n >= 2");

    auto p_of = [&](double q) {
        return p_polynomial(q, params, wronskian, invariant);
    };
    // Keep P safely positive across the whole range: a turning point inside
    // the range makes the quadrature singular.
    constexpr double kPMin = 1e-10;
    const std::size_t probes = std::max<std::size_t>(8 * n, 64);
    for (std::size_t i = 0; i <= probes; ++i) {
        const double q = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(probes);
        const double p = p_of(q);
        if (!(p >= kPMin)) {
            std::ostringstream msg;
            msg << "parametric_solution: P(" << q << ") = " << p
                << " is not positive (turning point inside range)";
            throw NonpositiveP(msg.str(), q);
        }
    }

    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(n - 1);
    auto theta = [&](double q) { return 1.0 / std::sqrt(p_of(q)); };
    const std::vector<double> phi =
        numerics::cumulative_quadrature(theta, grid, tol);

    const double s = (branch == Branch::plus) ? 1.0 : -1.0;
    ParametricSolution sol;
    sol.qtilde_grid = grid;
    sol.branch = branch;
    sol.tau0 = tau0;
    sol.invariant = invariant;
    sol.y_of_q.resize(n);
    sol.rtilde_of_q.resize(n);
    sol.rtilde_y_of_q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::exp(-s * phi[i]) / tau0;
        const double rt = grid[i] * std::exp(-0.5 * s * phi[i]) / std::sqrt(tau0);
        const double q_eta = s * std::sqrt(p_of(grid[i]));
        sol.y_of_q[i] = y;
        sol.rtilde_of_q[i] = rt;
        sol.rtilde_y_of_q[i] = (0.5 * grid[i] - q_eta) / std::sqrt(y);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Recovery of the nonlinear superposition formula
// ---------------------------------------------------------------------------

/// Qtilde and rtilde of the Reid-formula solution expressed in Y:
/// Qtilde(Y) = (Y^{-m/2} + kappa Y^{m/2})^{1/m}, rtilde = Qtilde sqrt(Y).
struct RecoveredSolution {
    std::vector<double> y_grid;
    std::vector<double> qtilde;
    std::vector<double> rtilde;
};

inline RecoveredSolution reid_recovery(const ReidParams& params,
                                       double wronskian,
                                       std::span<const double> y_grid) {
    params.validate();
    const double kappa = params.kappa(wronskian);
    RecoveredSolution out;
    out.y_grid.assign(y_grid.begin(), y_grid.end());
    out.qtilde.reserve(y_grid.size());
    out.rtilde.reserve(y_grid.size());
    for (double y : y_grid) {
        if (!(y > 0.0)) throw NonpositiveY("reid_recovery: Y must be positive", y);
        const double radicand = std::pow(y, -0.5 * params.m) +
                                kappa * std::pow(y, 0.5 * params.m);
        if (!(radicand > 0.0)) {
            std::ostringstream msg;
            msg << "reid_recovery: radicand " << radicand << " at Y=" << y;
            throw NegativeRadicand(msg.str(), y);
        }
        const double q = std::pow(radicand, 1.0 / params.m);
        out.qtilde.push_back(q);
        out.rtilde.push_back(q * std::sqrt(y));
    }
    return out;
}

/// Physical-space recovery along a basis: qtilde(t) = q1 rtilde(Y) with
/// Y = q2 / (W q1). Grid points with Y <= 0 (in particular t0, where
/// q2 = 0) are skipped. Matches reid_superposition wherever defined.
inline SampledPath reid_recovery_physical(const ReidParams& params,
                                          const LinearBasis& basis) {
    params.validate();
    const double w = basis.wronskian();
    SampledPath out(1);
    for (std::size_t i = 0; i < basis.q1().size(); ++i) {
        const double q1 = basis.q1()(i, 0);
        const double q2 = basis.q2()(i, 0);
        if (q1 == 0.0) continue;
        const double y = q2 / (w * q1);
        if (!(y > 0.0)) continue;
        const RecoveredSolution point =
            reid_recovery(params, w, std::array<double, 1>{y});
        out.push_back(basis.q1().t(i), {q1 * point.rtilde[0]});
    }
    if (out.size() == 0)
        throw PathTooShort("reid_recovery_physical: no grid point has Y > 0");
    return out;
}

// ---------------------------------------------------------------------------
// Abel -> Bernoulli -> linear chain
// ---------------------------------------------------------------------------

/// Result of the reduction-of-order chain. The linearized equation
/// phi_z - phi/(mz) = -alpha W^{m-2}/m - 1/(4mz) has the solution
/// phi(z) = alpha W^{m-2} z/(1-m) + C z^{1/m} + 1/4; the integration
/// constant C equals twice the half-normalized invariant, so
/// fitted_invariant = C/2 matches el_invariant_ef (factor verified
/// numerically before freezing).
struct AbelChainResult {
    std::vector<AbelChainState> states;
    double linear_constant = 0.0;    // C, fitted by least squares
    double fitted_invariant = 0.0;   // C / 2, the half-normalized invariant
    double max_relation_residual = 0.0;
};

inline AbelChainResult abel_chain(std::span<const EFState> path,
                                  const ReidParams& params, double wronskian) {
    params.validate();
    if (path.size() < 2) throw PathTooShort("abel_chain: need >= 2 states");
    const int m = params.m;
    const double kappa = params.kappa(wronskian);

    AbelChainResult result;
    result.states.reserve(path.size());
    double sum_wr = 0.0, sum_ww = 0.0;
    std::size_t degenerate = 0;
    std::vector<double> basis_w(path.size()), target(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const EFState& st = path[i];
        st.validate();
        AbelChainState a;
        const double y_over_r2 = st.y / (st.rtilde * st.rtilde);
        a.z = numerics::ipow(y_over_r2, m);
        a.u = st.y * st.rtilde_y / st.rtilde;
        if (std::abs(a.u - 0.5) <= 1e-12) {
            ++degenerate;
            a.v = std::numeric_limits<double>::infinity();
        } else {
            a.v = 1.0 / (a.u - 0.5);
        }
        a.phi = (a.u - 0.5) * (a.u - 0.5);
        result.states.push_back(a);

        basis_w[i] = y_over_r2;  // z^{1/m}
        target[i] = a.phi + kappa * a.z - 0.25;
        sum_wr += basis_w[i] * target[i];
        sum_ww += basis_w[i] * basis_w[i];
    }
    if (degenerate == path.size()) {
        std::ostringstream msg;
        msg << "abel_chain: u = Y rtilde_Y / rtilde = 1/2 along the whole "
               "path (Polyanin ray; the chain is singular on it)";
        throw DegenerateU(msg.str(), path.front().y);
    }
    if (sum_ww == 0.0) throw ConfigError("abel_chain: degenerate fit basis");
    result.linear_constant = sum_wr / sum_ww;
    result.fitted_invariant = 0.5 * result.linear_constant;
    for (std::size_t i = 0; i < path.size(); ++i) {
        result.max_relation_residual =
            std::max(result.max_relation_residual,
                     std::abs(target[i] - result.linear_constant * basis_w[i]));
    }
    return result;
}

}  // namespace reidlab::emden_fowler
