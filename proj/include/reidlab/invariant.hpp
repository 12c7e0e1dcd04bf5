#pragma once

// Every formulation of the Ermakov-Lewis invariant, plus conservation
// drift reporting along simulated trajectories.
//
// Normalization: all evaluators here return the half-normalized invariant
// I = (1/2)[...]. The classical unnormalized form (and the canonical-chart
// display in the mechanics module) equals exactly twice these values;
// scale_to_classic / scale_from_classic convert.
//
// The higher-order formulations (higher_*) are tied to the phase integral
// Y built from a particular solution q and its reduction-of-order
// companion. Pass the basis seed q1 in the q slot; for a general
// superposition q = a q1 + b q2 they are not conserved unless m = 2.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reidlab/errors.hpp"
#include "reidlab/numerics.hpp"
#include "reidlab/reid.hpp"

namespace reidlab::invariant {

using reid::ReidParams;
using reid::ReidTrajectory;
using reid::SuperpositionCoefficients;

inline constexpr double kClassicScale = 2.0;

/// Half-normalized -> classical unnormalized invariant.
inline double scale_to_classic(double value) { return kClassicScale * value; }
inline double scale_from_classic(double value) { return value / kClassicScale; }

enum class Formulation {
    m2_physical,
    m2_constant,
    higher_physical,
    higher_ef,
    higher_hyperbolic,
    polyanin_constant,
};

inline const char* to_string(Formulation f) {
    switch (f) {
        case Formulation::m2_physical: return "m2_physical";
        case Formulation::m2_constant: return "m2_constant";
        case Formulation::higher_physical: return "higher_physical";
        case Formulation::higher_ef: return "higher_ef";
        case Formulation::higher_hyperbolic: return "higher_hyperbolic";
        case Formulation::polyanin_constant: return "polyanin_constant";
    }
    return "?";
}

struct InvariantValue {
    double value = 0.0;
    Formulation formulation = Formulation::m2_physical;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

namespace detail {

// Unchecked formula cores. The public operations validate preconditions
// and delegate here; finite-difference probes (Poisson bracket, partials)
// call these directly so that probe excursions across Y = 0 stay legal.

inline double m2_physical_formula(double q, double q_t, double qtilde,
                                  double qtilde_t, double alpha) {
    const double wr = q * qtilde_t - qtilde * q_t;
    const double ratio = q / qtilde;
    return 0.5 * (wr * wr + alpha * ratio * ratio);
}

inline double hyperbolic_formula(double qt, double qt_eta, int m,
                                 double kappa) {
    return 0.5 * (qt_eta * qt_eta + kappa * numerics::ipow(qt, 2 - 2 * m) -
                  0.25 * qt * qt);
}

inline double ef_formula(double rt, double rt_y, double y, int m,
                         double kappa) {
    return 0.5 * (y * rt_y * rt_y - rt_y * rt +
                  kappa * numerics::ipow(y / (rt * rt), m - 1));
}

inline double higher_physical_formula(double q, double q_t, double qtilde,
                                      double qtilde_t, double y, int m,
                                      double kappa) {
    const double wr = q * qtilde_t - qtilde * q_t;
    const double ratio2 = (q * q) / (qtilde * qtilde);
    return 0.5 * (wr * wr * y - (qtilde / q) * wr +
                  kappa * numerics::ipow(ratio2 * y, m - 1));
}

}  // namespace detail

/// m = 2 invariant I = (1/2)[(q qtilde_t - qtilde q_t)^2 + alpha (q/qtilde)^2].
/// Well defined at q = 0; qtilde = 0 is singular.
inline double el_invariant_m2(double q, double q_t, double qtilde,
                              double qtilde_t, double alpha) {
    if (qtilde == 0.0)
        throw SingularQtilde("el_invariant_m2: qtilde = 0");
    return detail::m2_physical_formula(q, q_t, qtilde, qtilde_t, alpha);
}

/// Closed constant for m = 2 with q = a q1 + b q2 and the Pinney companion:
/// I = (1/2)(a^2 alpha + b^2 W^2).
inline double el_invariant_constant_m2(const SuperpositionCoefficients& coeffs,
                                       double alpha, double wronskian) {
    coeffs.validate();
    return 0.5 * (coeffs.a * coeffs.a * alpha +
                  coeffs.b * coeffs.b * wronskian * wronskian);
}

/// Positive-semidefiniteness condition alpha > -(b W / a)^2, equivalent to
/// el_invariant_constant_m2 > 0. Undefined as stated for a = 0.
inline bool positivity_condition(const SuperpositionCoefficients& coeffs,
                                 double alpha, double wronskian) {
    if (coeffs.a == 0.0)
        throw ZeroA("positivity_condition: a = 0 (condition undefined; positivity is then b^2 W^2 > 0)");
    const double bound = coeffs.b * wronskian / coeffs.a;
    return alpha > -bound * bound;
}

/// Hyperbolic-chart invariant
/// I = (1/2)[Qtilde_eta^2 + kappa Qtilde^{2-2m} - (1/4) Qtilde^2],
/// kappa = alpha W^{m-2} / (m-1).
inline double el_invariant_hyperbolic(double qtilde, double qtilde_eta,
                                      const ReidParams& params,
                                      double wronskian) {
    params.validate();
    if (!(qtilde > 0.0))
        throw SingularQtilde("el_invariant_hyperbolic: Qtilde must be positive");
    return detail::hyperbolic_formula(qtilde, qtilde_eta, params.m,
                                      params.kappa(wronskian));
}

/// Emden-Fowler-chart invariant
/// I = (1/2)[Y rtilde_Y^2 - rtilde_Y rtilde + kappa (Y/rtilde^2)^{m-1}].
inline double el_invariant_ef(double rtilde, double rtilde_y, double y,
                              const ReidParams& params, double wronskian) {
    params.validate();
    if (!(rtilde > 0.0))
        throw SingularRtilde("el_invariant_ef: rtilde must be positive");
    if (!(y > 0.0)) throw NonpositiveY("el_invariant_ef: Y must be positive", y);
    return detail::ef_formula(rtilde, rtilde_y, y, params.m,
                              params.kappa(wronskian));
}

/// Physical-chart higher-order invariant; q must be the solution whose
/// companion generates Y (canonically q1).
inline double el_invariant_higher_physical(double q, double q_t,
                                           double qtilde, double qtilde_t,
                                           double y, const ReidParams& params,
                                           double wronskian) {
    params.validate();
    if (q == 0.0) throw SingularQ("el_invariant_higher_physical: q = 0");
    if (!(qtilde > 0.0))
        throw SingularQtilde("el_invariant_higher_physical: qtilde must be positive");
    if (!(y > 0.0))
        throw NonpositiveY("el_invariant_higher_physical: Y must be positive", y);
    return detail::higher_physical_formula(q, q_t, qtilde, qtilde_t, y,
                                           params.m, params.kappa(wronskian));
}

/// Constant invariant of the Polyanin ray:
/// I = -((-4 alpha W^{m-2})^{1/m} / 8) * m / (m-1).
/// Uses the real odd root for odd m; errors for even m with a negative
/// radicand (no real branch exists).
inline double polyanin_invariant(const ReidParams& params, double wronskian) {
    params.validate();
    const double radicand =
        -4.0 * params.alpha * numerics::ipow(wronskian, params.m - 2);
    double root;
    try {
        root = numerics::real_root(radicand, params.m);
    } catch (const NoRealBranch&) {
        std::ostringstream msg;
        msg << "polyanin_invariant: (-4 alpha W^{m-2}) = " << radicand
            << " has no real " << params.m << "-th root (even m)";
        throw NoRealBranch(msg.str(), radicand);
    }
    return -(root / 8.0) * static_cast<double>(params.m) /
           static_cast<double>(params.m - 1);
}

// ---------------------------------------------------------------------------
// Conservation drift
// ---------------------------------------------------------------------------

struct InvariantReport {
    std::vector<std::pair<double, double>> samples;  // (t, I)
    double reference = 0.0;
    double max_abs_drift = 0.0;
    double rel_drift = 0.0;
    Formulation formulation = Formulation::m2_physical;
};

/// Sample the chosen formulation along a trajectory and report drift
/// against `reference` (defaults to the first sampled value). Higher-order
/// formulations start at the first grid point with Y > 0.
inline InvariantReport drift_report(const ReidTrajectory& traj,
                                    Formulation formulation,
                                    std::optional<double> reference = {}) {
    if (traj.size() == 0) throw PathTooShort("drift_report: empty trajectory");
    const ReidParams& params = traj.params;
    const double w = traj.wronskian;
    const bool m2_form = formulation == Formulation::m2_physical ||
                         formulation == Formulation::m2_constant;
    if (m2_form && params.m != 2)
        throw ConfigError("drift_report: m2 formulations require m = 2");

    const bool needs_phase = formulation == Formulation::higher_physical ||
                             formulation == Formulation::higher_ef ||
                             formulation == Formulation::higher_hyperbolic;
    if (needs_phase && !traj.has_phase())
        throw ConfigError(
            "drift_report: trajectory lacks the phase channel Y required by "
            "higher-order formulations (simulate with PhaseTracking::on)");

    InvariantReport report;
    report.formulation = formulation;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.t(i);
        const double q1 = traj.basis(i, 0), q1t = traj.basis(i, 1);
        const double qt = traj.aux(i, 0), qtt = traj.aux(i, 1);
        const double y = needs_phase ? traj.phase(i, 0) : 0.0;
        double value = 0.0;
        switch (formulation) {
            case Formulation::m2_physical:
                value = el_invariant_m2(traj.base(i, 0), traj.base(i, 1), qt,
                                        qtt, params.alpha);
                break;
            case Formulation::m2_constant:
                value = el_invariant_constant_m2(traj.coeffs, params.alpha, w);
                break;
            case Formulation::higher_physical:
                if (!(y > 0.0)) continue;
                value = el_invariant_higher_physical(q1, q1t, qt, qtt, y,
                                                     params, w);
                break;
            case Formulation::higher_ef: {
                if (!(y > 0.0)) continue;
                const double rt = qt / q1;
                const double rty = q1 * qtt - qt * q1t;
                value = el_invariant_ef(rt, rty, y, params, w);
                break;
            }
            case Formulation::higher_hyperbolic: {
                if (!(y > 0.0)) continue;
                const double rt = qt / q1;
                const double rty = q1 * qtt - qt * q1t;
                const double sqrt_y = std::sqrt(y);
                const double bigq = rt / sqrt_y;
                const double bigq_eta = 0.5 * rt / sqrt_y - rty * sqrt_y;
                value = el_invariant_hyperbolic(bigq, bigq_eta, params, w);
                break;
            }
            case Formulation::polyanin_constant:
                value = polyanin_invariant(params, w);
                break;
        }
        report.samples.emplace_back(t, value);
    }
    if (report.samples.empty())
        throw PathTooShort("drift_report: no sample admits the formulation");

    report.reference = reference.value_or(report.samples.front().second);
    for (const auto& [t, v] : report.samples)
        report.max_abs_drift =
            std::max(report.max_abs_drift, std::abs(v - report.reference));
    report.rel_drift =
        report.max_abs_drift / std::max(1.0, std::abs(report.reference));
    return report;
}

}  // namespace reidlab::invariant
