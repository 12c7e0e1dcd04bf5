#pragma once

// The Reid nonlinear oscillator
//
//     q_tt + omega^2(t) q = 0
//     qtilde_tt + omega^2(t) qtilde = alpha (q1 q2)^{m-2} qtilde^{1-2m}
//
// together with its closed-form nonlinear superposition solutions and the
// coupled numeric simulation. m = 2 is the classical Ermakov system with
// the inverse-cubic term.
//
// Real-root convention: x^{1/m} for x < 0 means -|x|^{1/m} when m is odd
// and is an error when m is even (see numerics::real_root).

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "reidlab/errors.hpp"
#include "reidlab/frequency.hpp"
#include "reidlab/linear.hpp"
#include "reidlab/numerics.hpp"

namespace reidlab::reid {

using linear::FrequencyModel;
using linear::LinearBasis;
using numerics::SampledPath;
using numerics::ToleranceConfig;

/// Nonlinearity order m >= 2 and coupling alpha != 0.
struct ReidParams {
    int m = 2;
    double alpha = 1.0;

    void validate() const {
        if (m < 2) throw ConfigError("ReidParams: m must be an integer >= 2");
        if (alpha == 0.0 || !numerics::is_finite(alpha))
            throw ConfigError("ReidParams: alpha must be nonzero");
    }

    /// alpha W^{m-2} / (m-1), the coefficient recurring in every
    /// transformed formula.
    double kappa(double wronskian) const {
        return alpha * numerics::ipow(wronskian, m - 2) /
               static_cast<double>(m - 1);
    }
};

/// Coefficients of the general linear solution q = a q1 + b q2.
struct SuperpositionCoefficients {
    double a = 1.0;
    double b = 0.0;

    void validate() const {
        if (a == 0.0 && b == 0.0)
            throw ConfigError("SuperpositionCoefficients: (a, b) must not both vanish");
        if (!numerics::is_finite(a) || !numerics::is_finite(b))
            throw ConfigError("SuperpositionCoefficients: non-finite coefficient");
    }
};

/// Whether simulate_reid integrates the phase channel Y' = 1/q1^2
/// alongside the oscillator. The higher-order invariant formulations need
/// Y, but Y diverges wherever q1 crosses zero, so tracking it restricts
/// the admissible time range. `automatic` tracks for m > 2 only.
enum class PhaseTracking { automatic, on, off };

/// Output of simulate_reid. All paths share one grid. `phase` carries
/// Y(t) = int dt / q1^2, the phase integral of the basis seed q1 (the
/// higher-order invariant formulations are tied to that choice of q);
/// it is empty when phase tracking is off.
struct ReidTrajectory {
    SampledPath base;    // (q, q_t), q = a q1 + b q2
    SampledPath aux;     // (qtilde, qtilde_t)
    SampledPath basis;   // (q1, q1_t, q2, q2_t)
    SampledPath phase;   // (Y), possibly empty
    ReidParams params;
    SuperpositionCoefficients coeffs;
    double wronskian = 1.0;
    double t0 = 0.0;

    std::size_t size() const noexcept { return aux.size(); }
    double t(std::size_t i) const { return aux.t(i); }
    bool has_phase() const noexcept { return phase.size() == aux.size(); }
};

// ---------------------------------------------------------------------------
// Right-hand side and simulation
// ---------------------------------------------------------------------------

/// Acceleration of the nonlinear companion:
/// alpha (q1(t) q2(t))^{m-2} qtilde^{1-2m} - omega^2(t) qtilde.
inline double reid_rhs(double t, double qtilde, const LinearBasis& basis,
                       const ReidParams& params, const FrequencyModel& freq) {
    params.validate();
    if (qtilde == 0.0) {
        std::ostringstream msg;
        msg << "reid_rhs: qtilde = 0 at t=" << t;
        throw SingularQtilde(msg.str(), t);
    }
    const double q1q2 = basis.q1_at(t) * basis.q2_at(t);
    return params.alpha * numerics::ipow(q1q2, params.m - 2) *
               numerics::ipow(qtilde, 1 - 2 * params.m) -
           freq(t) * qtilde;
}

/// Reid's nonlinear superposition
/// qtilde = (q1^m + alpha q2^m / ((m-1) W^2))^{1/m}, sampled with its time
/// derivative on the basis grid. Reduces to Pinney's formula at m = 2.
inline SampledPath reid_superposition(const LinearBasis& basis,
                                      const ReidParams& params) {
    params.validate();
    const int m = params.m;
    const double w = basis.wronskian();
    const double coeff = params.alpha / ((m - 1) * w * w);

    SampledPath out(2);
    for (std::size_t i = 0; i < basis.q1().size(); ++i) {
        const double q1 = basis.q1()(i, 0);
        const double q1t = basis.q1()(i, 1);
        const double q2 = basis.q2()(i, 0);
        const double q2t = basis.q2()(i, 1);
        const double radicand =
            numerics::ipow(q1, m) + coeff * numerics::ipow(q2, m);
        if (radicand == 0.0 || (radicand < 0.0 && m % 2 == 0)) {
            std::ostringstream msg;
            msg << "reid_superposition: radicand " << radicand
                << " at t=" << basis.q1().t(i);
            throw NegativeRadicand(msg.str(), basis.q1().t(i));
        }
        const double qt = numerics::real_root(radicand, m);
        // d/dt radicand^{1/m} = qtilde^{1-m} (q1^{m-1} q1_t + c q2^{m-1} q2_t)
        const double slope =
            numerics::ipow(qt, 1 - m) *
            (numerics::ipow(q1, m - 1) * q1t + coeff * numerics::ipow(q2, m - 1) * q2t);
        out.push_back(basis.q1().t(i), {qt, slope});
    }
    return out;
}

/// Integrate the coupled system on [t0, t1]. The basis channels, the
/// nonlinear companion and the phase integral Y' = 1/q1^2 run as one
/// first-order system so that all of them share the adaptive error control;
/// q = a q1 + b q2 is assembled from the basis channels afterwards.
inline ReidTrajectory simulate_reid(const FrequencyModel& freq,
                                    const ReidParams& params,
                                    const LinearBasis& basis,
                                    const SuperpositionCoefficients& q_ics,
                                    std::pair<double, double> qtilde_ics,
                                    double t0, double t1,
                                    const ToleranceConfig& tol,
                                    PhaseTracking phase_tracking =
                                        PhaseTracking::automatic) {
    params.validate();
    q_ics.validate();
    if (!(qtilde_ics.first > 0.0))
        throw ConfigError("simulate_reid: qtilde(t0) must be positive");
    if (std::abs(basis.t0() - t0) > 1e-12 * (1.0 + std::abs(t0)))
        throw DomainMismatch("simulate_reid: t0 must match the basis anchor");

    const int m = params.m;
    const double alpha = params.alpha;
    const double w = basis.wronskian();
    const bool track_phase = phase_tracking == PhaseTracking::on ||
                             (phase_tracking == PhaseTracking::automatic &&
                              m > 2);

    // Breakdown tracker: remembers what the right-hand side last saw, so
    // that an integrator stall (step collapse near a singularity) can be
    // attributed to the q1 zero crossing or to qtilde -> 0.
    struct Tracker {
        double last_t = 0.0;
        double last_q1 = 1.0;
        double last_qtilde = 1.0;
        double max_abs_q1 = 0.0;
        double max_qtilde = 0.0;
    } tracker;
    tracker.last_t = t0;
    tracker.last_qtilde = qtilde_ics.first;

    auto rhs = [&](double t, std::span<const double> y, std::span<double> dydt) {
        const double q1 = y[0], q1t = y[1], q2 = y[2], q2t = y[3];
        const double qt = y[4], qtt = y[5];
        if (qt <= 0.0) {
            std::ostringstream msg;
            msg << "simulate_reid: qtilde reached zero at t=" << t;
            throw SingularQtilde(msg.str(), t);
        }
        tracker.last_t = t;
        tracker.last_q1 = q1;
        tracker.last_qtilde = qt;
        tracker.max_abs_q1 = std::max(tracker.max_abs_q1, std::abs(q1));
        tracker.max_qtilde = std::max(tracker.max_qtilde, qt);

        const double w2 = freq(t);
        dydt[0] = q1t;
        dydt[1] = -w2 * q1;
        dydt[2] = q2t;
        dydt[3] = -w2 * q2;
        dydt[4] = qtt;
        dydt[5] = alpha * numerics::ipow(q1 * q2, m - 2) *
                      numerics::ipow(qt, 1 - 2 * m) -
                  w2 * qt;
        if (dydt.size() > 6) dydt[6] = 1.0 / (q1 * q1);
    };

    std::vector<double> y0 = {1.0,              0.0, 0.0, w,
                              qtilde_ics.first, qtilde_ics.second};
    if (track_phase) y0.push_back(0.0);
    SampledPath joint(y0.size());
    try {
        joint = numerics::integrate_ivp(rhs, y0, t0, t1, tol);
    } catch (const SingularQtilde&) {
        throw;
    } catch (const Error&) {
        // The adaptive controller stalls (or produces a non-finite state)
        // when it walks into a singularity; the last evaluation point
        // locates it.
        if (tracker.max_qtilde > 0.0 &&
            tracker.last_qtilde < 1e-3 * tracker.max_qtilde) {
            std::ostringstream msg;
            msg << "simulate_reid: qtilde collapses to zero near t="
                << tracker.last_t;
            throw SingularQtilde(msg.str(), tracker.last_t);
        }
        if (track_phase && tracker.max_abs_q1 > 0.0 &&
            std::abs(tracker.last_q1) < 1e-3 * tracker.max_abs_q1) {
            std::ostringstream msg;
            msg << "simulate_reid: q1 crosses zero near t=" << tracker.last_t
                << "; phase integral Y diverges";
            throw SingularQ(msg.str(), tracker.last_t);
        }
        throw;
    }

    ReidTrajectory traj;
    traj.base = SampledPath(2);
    traj.aux = SampledPath(2);
    traj.basis = SampledPath(4);
    traj.phase = SampledPath(1);
    traj.params = params;
    traj.coeffs = q_ics;
    traj.wronskian = w;
    traj.t0 = t0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        const double t = joint.t(i);
        const double q1 = joint(i, 0), q1t = joint(i, 1);
        const double q2 = joint(i, 2), q2t = joint(i, 3);
        traj.base.push_back(t, {q_ics.a * q1 + q_ics.b * q2,
                                q_ics.a * q1t + q_ics.b * q2t});
        traj.aux.push_back(t, {joint(i, 4), joint(i, 5)});
        traj.basis.push_back(t, {q1, q1t, q2, q2t});
        if (track_phase) traj.phase.push_back(t, {joint(i, 6)});
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Closed-form solutions of the m = 2 Emden-Fowler reduction
// ---------------------------------------------------------------------------

/// General Pinney solution rtilde(Y) = sqrt(a1 + a2 Y^2 + 2 a3 Y) of
/// rtilde_YY = alpha rtilde^{-3}, valid when a1 a2 - a3^2 = alpha / W^2.
class PinneySolution {
public:
    PinneySolution(double a1, double a2, double a3) : a1_(a1), a2_(a2), a3_(a3) {}

    double operator()(double y) const {
        const double radicand = a1_ + a2_ * y * y + 2.0 * a3_ * y;
        if (!(radicand > 0.0)) {
            std::ostringstream msg;
            msg << "PinneySolution: radicand " << radicand << " at Y=" << y;
            throw NegativeRadicand(msg.str(), y);
        }
        return std::sqrt(radicand);
    }

    double derivative(double y) const { return (a2_ * y + a3_) / (*this)(y); }

    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    double a3() const noexcept { return a3_; }

private:
    double a1_, a2_, a3_;
};

inline PinneySolution pinney_general(double a1, double a2, double a3,
                                     const ReidParams& params,
                                     double wronskian) {
    params.validate();
    if (params.m != 2)
        throw ConfigError("pinney_general: defined for m = 2 only");
    const double target = params.alpha / (wronskian * wronskian);
    if (std::abs(a1 * a2 - a3 * a3 - target) > 1e-12) {
        std::ostringstream msg;
        msg << "pinney_general: a1 a2 - a3^2 = " << a1 * a2 - a3 * a3
            << " but alpha/W^2 = " << target;
        throw ConstraintViolated(msg.str());
    }
    return PinneySolution(a1, a2, a3);
}

/// Polyanin particular ray rtilde(Y) = (-4 alpha W^{m-2})^{1/(2m)} sqrt(Y).
/// The prefactor k satisfies k^{2m} = -4 alpha W^{m-2}; since 2m is even,
/// a real ray exists only for a positive radicand, whatever the parity of m
/// (the odd-root convention applies to the invariant value, which carries
/// the exponent 1/m, not to this solution).
class PolyaninSolution {
public:
    explicit PolyaninSolution(double k) : k_(k) {}

    double operator()(double y) const {
        if (y < 0.0) throw NonpositiveY("PolyaninSolution: Y must be >= 0", y);
        return k_ * std::sqrt(y);
    }

    double derivative(double y) const {
        if (!(y > 0.0)) throw NonpositiveY("PolyaninSolution: derivative needs Y > 0", y);
        return 0.5 * k_ / std::sqrt(y);
    }

    double prefactor() const noexcept { return k_; }

private:
    double k_;
};

inline PolyaninSolution polyanin_particular(const ReidParams& params,
                                            double wronskian) {
    params.validate();
    const double radicand =
        -4.0 * params.alpha * numerics::ipow(wronskian, params.m - 2);
    if (!(radicand > 0.0)) {
        std::ostringstream msg;
        msg << "polyanin_particular: -4 alpha W^{m-2} = " << radicand
            << " admits no real 2m-th root";
        throw NoRealBranch(msg.str(), radicand);
    }
    return PolyaninSolution(std::pow(radicand, 1.0 / (2 * params.m)));
}

// ---------------------------------------------------------------------------
// Back to physical coordinates
// ---------------------------------------------------------------------------

/// qtilde(t) = q1(t) * rtilde(Y(t)). The q1 path (q1, q1_t) and the Y path
/// must share one grid.
inline SampledPath ef_to_physical(const std::function<double(double)>& rtilde,
                                  const SampledPath& q1_path,
                                  const SampledPath& y_path) {
    if (q1_path.dim() != 2 || y_path.dim() != 1)
        throw ConfigError("ef_to_physical: expected (q1, q1_t) and (Y) paths");
    if (q1_path.size() != y_path.size())
        throw DomainMismatch("ef_to_physical: paths must share one grid");
    SampledPath out(1);
    for (std::size_t i = 0; i < q1_path.size(); ++i) {
        if (std::abs(q1_path.t(i) - y_path.t(i)) > 1e-12 * (1.0 + std::abs(y_path.t(i))))
            throw DomainMismatch("ef_to_physical: paths must share one grid");
        const double value = q1_path(i, 0) * rtilde(y_path(i, 0));
        out.push_back(q1_path.t(i), {value});
    }
    return out;
}

/// Overload composing through a sampled rtilde(Y); interpolation on Y.
inline SampledPath ef_to_physical(const SampledPath& rtilde_over_y,
                                  const SampledPath& q1_path,
                                  const SampledPath& y_path) {
    if (rtilde_over_y.dim() < 1)
        throw ConfigError("ef_to_physical: empty rtilde path");
    std::vector<double> ys(rtilde_over_y.size()), rs(rtilde_over_y.size());
    for (std::size_t i = 0; i < rtilde_over_y.size(); ++i) {
        ys[i] = rtilde_over_y.t(i);
        rs[i] = rtilde_over_y(i, 0);
    }
    std::vector<double> slopes;
    if (rtilde_over_y.dim() >= 2) {
        slopes.resize(rtilde_over_y.size());
        for (std::size_t i = 0; i < rtilde_over_y.size(); ++i)
            slopes[i] = rtilde_over_y(i, 1);
    } else {
        slopes = numerics::pchip_slopes(ys, rs);
    }
    numerics::HermiteInterpolant interp(std::move(ys), std::move(rs),
                                        std::move(slopes));
    return ef_to_physical([&interp](double y) { return interp(y); }, q1_path,
                          y_path);
}

}  // namespace reidlab::reid
