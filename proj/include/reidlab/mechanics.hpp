#pragma once

// Lagrangian and Hamiltonian formulations of the Emden-Fowler dynamics,
// the invariant in canonical variables, the Hamiltonian of the nonlinear
// Reid oscillator with its Poisson-bracket conservation identity, and the
// hyperbolic radial oscillator where the invariant is the total energy per
// unit mass.
//
// Momentum conventions: in the tau chart p = tau^2 drtilde/dtau; in the
// Y chart the same canonical momentum appears as p = -rtilde_Y. The
// canonical-chart invariant display carries no 1/2 and equals exactly
// twice the half-normalized invariant of the invariant module (the factor
// was verified numerically before being frozen here).

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "reidlab/errors.hpp"
#include "reidlab/invariant.hpp"
#include "reidlab/linear.hpp"
#include "reidlab/numerics.hpp"
#include "reidlab/reid.hpp"

namespace reidlab::mechanics {

using linear::FrequencyModel;
using linear::LinearBasis;
using reid::ReidParams;
using reid::ReidTrajectory;

enum class Chart { tau, y, physical };

/// A point of phase space in one of the three charts.
struct CanonicalState {
    double coordinate = 1.0;      // rtilde or qtilde
    double momentum = 0.0;        // tau^2 drtilde/dtau, -rtilde_Y, or ptilde
    double independent_var = 1.0; // tau, Y, or t
    Chart chart = Chart::tau;
};

namespace detail {

inline void require_tau(double tau) {
    if (!(tau > 0.0)) throw NonpositiveTau("mechanics: tau must be positive", tau);
}

inline void require_rtilde(double rtilde) {
    if (!(rtilde > 0.0))
        throw SingularRtilde("mechanics: rtilde must be positive");
}

/// Central difference of a scalar callable, relative step.
template <typename F>
double partial(F&& f, double x, double step_rel) {
    const double h = step_rel * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// tau chart
// ---------------------------------------------------------------------------

/// L = (tau^{-2}/2)[tau^4 rdot^2 - kappa tau^{-(m-2)} rtilde^{2-2m}].
inline double lagrangian_tau(double tau, double rtilde, double rtilde_dot,
                             const ReidParams& params, double wronskian) {
    params.validate();
    detail::require_tau(tau);
    detail::require_rtilde(rtilde);
    const double kappa = params.kappa(wronskian);
    return 0.5 * (tau * tau * rtilde_dot * rtilde_dot -
                  kappa * std::pow(tau, -static_cast<double>(params.m)) *
                      numerics::ipow(rtilde, 2 - 2 * params.m));
}

/// H = (tau^{-2}/2)[p^2 + kappa tau^{-(m-2)} rtilde^{2-2m}], p = tau^2 rdot.
inline double hamiltonian_tau(double tau, double p, double rtilde,
                              const ReidParams& params, double wronskian) {
    params.validate();
    detail::require_tau(tau);
    detail::require_rtilde(rtilde);
    const double kappa = params.kappa(wronskian);
    return 0.5 / (tau * tau) *
           (p * p + kappa * std::pow(tau, -static_cast<double>(params.m - 2)) *
                        numerics::ipow(rtilde, 2 - 2 * params.m));
}

// ---------------------------------------------------------------------------
// Y chart (the more symmetric forms)
// ---------------------------------------------------------------------------

/// L = (Y^2/2)[rtilde_Y^2 - kappa Y^{m-2} rtilde^{2-2m}].
inline double lagrangian_y(double y, double rtilde, double rtilde_y,
                           const ReidParams& params, double wronskian) {
    params.validate();
    if (!(y > 0.0)) throw NonpositiveY("lagrangian_y: Y must be positive", y);
    detail::require_rtilde(rtilde);
    const double kappa = params.kappa(wronskian);
    return 0.5 * y * y *
           (rtilde_y * rtilde_y - kappa * numerics::ipow(y, params.m - 2) *
                                      numerics::ipow(rtilde, 2 - 2 * params.m));
}

/// H = (Y^2/2)[p^2 + kappa Y^{m-2} rtilde^{2-2m}], p = -rtilde_Y. Equals
/// hamiltonian_tau at tau = 1/Y with the same canonical momentum.
inline double hamiltonian_y(double y, double p, double rtilde,
                            const ReidParams& params, double wronskian) {
    params.validate();
    if (!(y > 0.0)) throw NonpositiveY("hamiltonian_y: Y must be positive", y);
    detail::require_rtilde(rtilde);
    const double kappa = params.kappa(wronskian);
    return 0.5 * y * y *
           (p * p + kappa * numerics::ipow(y, params.m - 2) *
                        numerics::ipow(rtilde, 2 - 2 * params.m));
}

/// Canonical-chart invariant (no 1/2 normalization):
/// I = tau^3 rdot^2 + tau^2 rdot rtilde + kappa tau^{1-m} rtilde^{2-2m};
/// equals 2 * el_invariant_ef under tau = 1/Y, rtilde_Y = -tau^2 rdot.
inline double invariant_canonical(double tau, double rtilde,
                                  double rtilde_dot, const ReidParams& params,
                                  double wronskian) {
    params.validate();
    detail::require_tau(tau);
    detail::require_rtilde(rtilde);
    const double kappa = params.kappa(wronskian);
    return tau * tau * tau * rtilde_dot * rtilde_dot +
           tau * tau * rtilde_dot * rtilde +
           kappa * std::pow(tau, 1.0 - static_cast<double>(params.m)) *
               numerics::ipow(rtilde, 2 - 2 * params.m);
}

// ---------------------------------------------------------------------------
// Reid oscillator Hamiltonian and Poisson conservation
// ---------------------------------------------------------------------------

/// H_R = (1/2)[p^2 + omega^2(t) q~^2 + alpha (q1^2 W Y)^{m-2} q~^{2(1-m)}/(m-1)].
/// The coefficient uses the basis seed q1; with Y = q2/(W q1) it equals the
/// (q1 q2)^{m-2} coefficient of the equation of motion.
inline double reid_hamiltonian(double t, double qtilde, double p,
                               const LinearBasis& basis, double y,
                               const ReidParams& params,
                               const FrequencyModel& freq) {
    params.validate();
    if (!(qtilde > 0.0))
        throw SingularQtilde("reid_hamiltonian: qtilde must be positive", t);
    const double q1 = basis.q1_at(t);
    const double coeff =
        params.alpha *
        numerics::ipow(q1 * q1 * basis.wronskian() * y, params.m - 2) /
        static_cast<double>(params.m - 1);
    return 0.5 * (p * p + freq(t) * qtilde * qtilde +
                  coeff * numerics::ipow(qtilde, 2 * (1 - params.m)));
}

/// Max over the trajectory grid of |dI/dt| = |dI/dt + {I, H_R}| for the
/// physical-chart higher-order invariant, all partial derivatives taken by
/// central finite differences (relative step `fd_step_rel`). The explicit
/// time dependence of I enters through q1(t), q1_t(t) and Y(t), whose time
/// derivatives (q1_t, -omega^2 q1, 1/q1^2) are known exactly, so dI/dt is
/// assembled by the chain rule from single-argument probes.
inline double poisson_conservation_check(const ReidTrajectory& traj,
                                         const FrequencyModel& freq,
                                         double fd_step_rel = 1e-6) {
    traj.params.validate();
    if (traj.size() < 1) throw PathTooShort("poisson_conservation_check: empty trajectory");
    if (!traj.has_phase())
        throw ConfigError(
            "poisson_conservation_check: trajectory lacks the phase channel "
            "(simulate with PhaseTracking::on)");
    const int m = traj.params.m;
    const double w = traj.wronskian;
    const double alpha = traj.params.alpha;
    const double kappa = traj.params.kappa(w);

    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.t(i);
        const double q1 = traj.basis(i, 0);
        const double q1t = traj.basis(i, 1);
        const double qt = traj.aux(i, 0);
        const double pt = traj.aux(i, 1);
        const double y = traj.phase(i, 0);
        const double w2 = freq(t);

        auto inv = [&](double q_, double qt_, double qtq_, double ptq_,
                       double y_) {
            return invariant::detail::higher_physical_formula(q_, qt_, qtq_,
                                                              ptq_, y_, m,
                                                              kappa);
        };
        const double hr_coeff =
            alpha * numerics::ipow(q1 * q1 * w * y, m - 2) /
            static_cast<double>(m - 1);
        auto ham = [&](double qtq_, double ptq_) {
            return 0.5 * (ptq_ * ptq_ + w2 * qtq_ * qtq_ +
                          hr_coeff * numerics::ipow(qtq_, 2 * (1 - m)));
        };

        const double di_dq = detail::partial(
            [&](double x) { return inv(x, q1t, qt, pt, y); }, q1, fd_step_rel);
        const double di_dqt = detail::partial(
            [&](double x) { return inv(q1, x, qt, pt, y); }, q1t, fd_step_rel);
        const double di_dy = detail::partial(
            [&](double x) { return inv(q1, q1t, qt, pt, x); }, y, fd_step_rel);
        const double di_dqtilde = detail::partial(
            [&](double x) { return inv(q1, q1t, x, pt, y); }, qt, fd_step_rel);
        const double di_dptilde = detail::partial(
            [&](double x) { return inv(q1, q1t, qt, x, y); }, pt, fd_step_rel);
        const double dh_dqtilde = detail::partial(
            [&](double x) { return ham(x, pt); }, qt, fd_step_rel);
        const double dh_dptilde = detail::partial(
            [&](double x) { return ham(qt, x); }, pt, fd_step_rel);

        const double di_dt_explicit =
            di_dq * q1t + di_dqt * (-w2 * q1) + di_dy / (q1 * q1);
        const double bracket =
            di_dqtilde * dh_dptilde - di_dptilde * dh_dqtilde;
        worst = std::max(worst, std::abs(di_dt_explicit + bracket));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Hyperbolic radial oscillator
// ---------------------------------------------------------------------------

/// Power-law radial problem with V(R) = K R^eps. Only the integrable case
/// eps = 2, K = -M/8 (hyperbolic oscillator) is supported.
struct KeplerParams {
    double mass = 1.0;     // M > 0
    double angular = 1.0;  // l
    int m = 2;
    double coupling = -0.125;  // K
    double epsilon = 2.0;

    static KeplerParams integrable(double mass, double angular, int m) {
        KeplerParams k;
        k.mass = mass;
        k.angular = angular;
        k.m = m;
        k.coupling = -mass / 8.0;
        k.epsilon = 2.0;
        k.validate();
        return k;
    }

    void validate() const {
        if (!(mass > 0.0)) throw ConfigError("KeplerParams: M must be positive");
        if (m < 2) throw ConfigError("KeplerParams: m must be >= 2");
        if (epsilon != 2.0)
            throw Unsupported("KeplerParams: only the integrable eps = 2 case is implemented");
        if (std::abs(coupling + mass / 8.0) > 1e-12 * std::max(1.0, mass))
            throw Unsupported("KeplerParams: integrability requires K = -M/8");
    }

    /// (-1)^{m-2} l^2 / (M^2 (m-1)), the coefficient of the nonlinear term.
    double nonlinear_coefficient() const {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return sign * angular * angular / (mass * mass * (m - 1));
    }
};

/// Particular solution (W = -1 convention)
/// R(t) = (e^{mt/2} + (-1)^{m-2} l^2/(M^2(m-1)) e^{-mt/2})^{1/m}.
inline double radial_solution(double t, const KeplerParams& kepler) {
    kepler.validate();
    const double c2 = kepler.nonlinear_coefficient();
    const double half = 0.5 * kepler.m * t;
    const double radicand = std::exp(half) + c2 * std::exp(-half);
    if (!(radicand > 0.0)) {
        std::ostringstream msg;
        msg << "radial_solution: radicand " << radicand << " at t=" << t
            << " (attractive odd-m domain boundary)";
        throw NegativeRadicand(msg.str(), t);
    }
    return std::pow(radicand, 1.0 / kepler.m);
}

/// (R, R_dot) of the particular solution.
inline std::pair<double, double> radial_solution_state(
    double t, const KeplerParams& kepler) {
    const double r = radial_solution(t, kepler);
    const double c2 = kepler.nonlinear_coefficient();
    const double half = 0.5 * kepler.m * t;
    const double s = std::exp(half);
    const double d = c2 * std::exp(-half);
    const double rdot =
        0.5 * (s - d) * std::pow(s + d, 1.0 / kepler.m - 1.0);
    return {r, rdot};
}

/// I = (1/2)[Rdot^2 + (-1)^{m-2} l^2/(M^2(m-1)) R^{2(1-m)} - R^2/4];
/// M * I is the conserved total energy of the radial problem.
inline double radial_invariant(double r, double r_dot,
                               const KeplerParams& kepler) {
    kepler.validate();
    if (!(r > 0.0)) throw SingularR("radial_invariant: R must be positive");
    const double c2 = kepler.nonlinear_coefficient();
    return 0.5 * (r_dot * r_dot + c2 * numerics::ipow(r, 2 * (1 - kepler.m)) -
                  0.25 * r * r);
}

/// Energy decomposition kinetic + nonlinear + potential = M * I. The
/// nonlinear term is repulsive for even m and attractive for odd m.
struct RadialEnergy {
    double kinetic = 0.0;
    double nonlinear = 0.0;
    double potential = 0.0;

    double total() const { return kinetic + nonlinear + potential; }
};

inline RadialEnergy radial_energy(double r, double r_dot,
                                  const KeplerParams& kepler) {
    kepler.validate();
    if (!(r > 0.0)) throw SingularR("radial_energy: R must be positive");
    RadialEnergy e;
    const double sign = (kepler.m % 2 == 0) ? 1.0 : -1.0;
    e.kinetic = 0.5 * kepler.mass * r_dot * r_dot;
    e.nonlinear = sign * kepler.angular * kepler.angular /
                  (2.0 * (kepler.m - 1) * kepler.mass) *
                  numerics::ipow(r, 2 * (1 - kepler.m));
    e.potential = kepler.coupling * r * r;
    return e;
}

}  // namespace reidlab::mechanics
