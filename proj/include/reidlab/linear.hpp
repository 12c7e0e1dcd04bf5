#pragma once

// The time-dependent linear oscillator q_tt + omega^2(t) q = 0: canonical
// basis (q1, q2), Wronskian bookkeeping, reduction of order, and the phase
// integral Y(t) = int dt / q^2.
//
// Conventions: solve_basis uses identity initial conditions at t0, so
// W = q1 q2_t - q2 q1_t = 1 by default. W is nevertheless threaded as data
// everywhere downstream, because the closed-form solutions are stated for
// arbitrary W (and the hyperbolic exponential basis has W = -1). Changing
// the normalization rescales alpha-dependent terms through W^{m-2}.

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "reidlab/errors.hpp"
#include "reidlab/frequency.hpp"
#include "reidlab/numerics.hpp"

namespace reidlab::linear {

using numerics::SampledPath;
using numerics::ToleranceConfig;

namespace detail {

/// Interpolants for one oscillator solution: the value channel uses the
/// integrated derivative, the derivative channel uses q_tt = -omega^2 q.
struct SolutionInterpolant {
    numerics::HermiteInterpolant value;
    numerics::HermiteInterpolant slope;

    static SolutionInterpolant build(const SampledPath& path,
                                     const FrequencyModel& freq) {
        std::vector<double> t(path.size()), q(path.size()), qt(path.size()),
            qtt(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) {
            t[i] = path.t(i);
            q[i] = path(i, 0);
            qt[i] = path(i, 1);
            qtt[i] = -freq(t[i]) * q[i];
        }
        return {numerics::HermiteInterpolant(t, q, qt),
                numerics::HermiteInterpolant(std::move(t), std::move(qt),
                                             std::move(qtt))};
    }
};

/// First sign change of a sampled component, refined on the interpolant.
inline std::optional<double> first_zero_crossing(
    const SampledPath& path, std::size_t component,
    const numerics::HermiteInterpolant& interp) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double v = path(i, component);
        if (v == 0.0) return path.t(i);
        if (i > 0 && path(i - 1, component) * v < 0.0) {
            return numerics::refine_zero([&](double x) { return interp(x); },
                                         path.t(i - 1), path.t(i));
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Two independent solutions of the linear oscillator on a shared grid,
/// evaluable between nodes through cubic Hermite interpolation.
class LinearBasis {
public:
    LinearBasis(SampledPath q1, SampledPath q2, double wronskian, double t0,
                FrequencyModel freq)
        : q1_(std::move(q1)),
          q2_(std::move(q2)),
          wronskian_(wronskian),
          t0_(t0),
          freq_(std::move(freq)) {
        if (q1_.dim() != 2 || q2_.dim() != 2)
            throw ConfigError("LinearBasis: paths must carry (q, q_t)");
        if (q1_.size() != q2_.size() || q1_.size() < 2)
            throw ConfigError("LinearBasis: inconsistent basis paths");
        if (wronskian_ == 0.0 || !numerics::is_finite(wronskian_))
            throw ConfigError("LinearBasis: Wronskian must be nonzero");
        i1_ = detail::SolutionInterpolant::build(q1_, freq_);
        i2_ = detail::SolutionInterpolant::build(q2_, freq_);
    }

    const SampledPath& q1() const noexcept { return q1_; }
    const SampledPath& q2() const noexcept { return q2_; }
    double wronskian() const noexcept { return wronskian_; }
    double t0() const noexcept { return t0_; }
    const FrequencyModel& frequency() const noexcept { return freq_; }

    double q1_at(double t) const { return i1_.value(t); }
    double q1_t_at(double t) const { return i1_.slope(t); }
    double q2_at(double t) const { return i2_.value(t); }
    double q2_t_at(double t) const { return i2_.slope(t); }

    /// Sampled Wronskian q1 q2_t - q2 q1_t at grid point i.
    double wronskian_at(std::size_t i) const {
        return q1_(i, 0) * q2_(i, 1) - q2_(i, 0) * q1_(i, 1);
    }

private:
    SampledPath q1_;
    SampledPath q2_;
    double wronskian_;
    double t0_;
    FrequencyModel freq_;
    detail::SolutionInterpolant i1_, i2_;
};

/// Integrate the canonical basis on [t0, t1]: q1(t0) = 1, q1_t(t0) = 0,
/// q2(t0) = 0, q2_t(t0) = wronskian. The default wronskian = 1 gives the
/// identity normalization W = 1.
inline LinearBasis solve_basis(const FrequencyModel& freq, double t0,
                               double t1, const ToleranceConfig& tol,
                               double wronskian = 1.0) {
    if (wronskian == 0.0)
        throw ConfigError("solve_basis: wronskian must be nonzero");
    auto rhs = [&freq](double t, std::span<const double> y,
                       std::span<double> dydt) {
        const double w2 = freq(t);
        dydt[0] = y[1];
        dydt[1] = -w2 * y[0];
        dydt[2] = y[3];
        dydt[3] = -w2 * y[2];
    };
    const std::array<double, 4> y0 = {1.0, 0.0, 0.0, wronskian};
    const SampledPath joint = numerics::integrate_ivp(rhs, y0, t0, t1, tol);

    SampledPath q1(2), q2(2);
    for (std::size_t i = 0; i < joint.size(); ++i) {
        q1.push_back(joint.t(i), {joint(i, 0), joint(i, 1)});
        q2.push_back(joint.t(i), {joint(i, 2), joint(i, 3)});
    }
    return LinearBasis(std::move(q1), std::move(q2), wronskian, t0, freq);
}

/// max_t |W(t) - W(t0)| over the basis grid; a quality gauge for the
/// integration (the exact Wronskian is constant).
inline double wronskian_drift(const LinearBasis& basis) {
    const double w0 = basis.wronskian_at(0);
    double drift = 0.0;
    for (std::size_t i = 0; i < basis.q1().size(); ++i)
        drift = std::max(drift, std::abs(basis.wronskian_at(i) - w0));
    return drift;
}

namespace detail {

/// Shared core of reduction_of_order and phase_integral: cumulative
/// int dt / q^2 along the grid of a (q, q_t) path, guarded against zero
/// crossings of q.
inline std::vector<double> inverse_square_integral(
    const SampledPath& q, double t0, const ToleranceConfig& tol,
    const numerics::HermiteInterpolant& interp) {
    if (q.size() < 2) throw PathTooShort("phase integral: need >= 2 points");
    if (auto crossing = first_zero_crossing(q, 0, interp)) {
        std::ostringstream msg;
        msg << "q crosses zero at t=" << *crossing
            << "; 1/q^2 integrand diverges";
        throw SingularQ(msg.str(), *crossing);
    }
    std::size_t i0 = q.size();
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (std::abs(q.t(i) - t0) <= 1e-12 * (1.0 + std::abs(t0))) {
            i0 = i;
            break;
        }
    }
    if (i0 == q.size())
        throw DomainMismatch("phase integral: t0 must be a grid point of q");

    auto integrand = [&interp](double t) {
        const double v = interp(t);
        return 1.0 / (v * v);
    };
    std::vector<double> cumulative =
        numerics::cumulative_quadrature(integrand, q.grid(), tol);
    const double offset = cumulative[i0];
    for (double& v : cumulative) v -= offset;
    return cumulative;
}

}  // namespace detail

/// Reduction of order: q2(t) = W q1(t) int_{t0}^{t} dt'/q1^2(t'), the
/// companion solution with Wronskian W. Fails fast when q1 crosses zero.
inline SampledPath reduction_of_order(const SampledPath& q1, double wronskian,
                                      double t0,
                                      const ToleranceConfig& tol = {}) {
    if (q1.dim() != 2)
        throw ConfigError("reduction_of_order: path must carry (q1, q1_t)");
    std::vector<double> t(q1.size()), v(q1.size()), d(q1.size());
    for (std::size_t i = 0; i < q1.size(); ++i) {
        t[i] = q1.t(i);
        v[i] = q1(i, 0);
        d[i] = q1(i, 1);
    }
    const numerics::HermiteInterpolant interp(std::move(t), std::move(v),
                                              std::move(d));
    const std::vector<double> integral =
        detail::inverse_square_integral(q1, t0, tol, interp);

    SampledPath q2(2);
    for (std::size_t i = 0; i < q1.size(); ++i) {
        const double value = wronskian * q1(i, 0) * integral[i];
        const double slope =
            wronskian * (q1(i, 1) * integral[i] + 1.0 / q1(i, 0));
        q2.push_back(q1.t(i), {value, slope});
    }
    return q2;
}

/// Phase integral Y(t) = int_{t0}^{t} dt'/q^2(t'), strictly increasing,
/// Y(t0) = 0. The path must carry (q, q_t).
inline SampledPath phase_integral(const SampledPath& q, double t0,
                                  const ToleranceConfig& tol = {}) {
    if (q.dim() != 2)
        throw ConfigError("phase_integral: path must carry (q, q_t)");
    std::vector<double> t(q.size()), v(q.size()), d(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        t[i] = q.t(i);
        v[i] = q(i, 0);
        d[i] = q(i, 1);
    }
    const numerics::HermiteInterpolant interp(std::move(t), std::move(v),
                                              std::move(d));
    const std::vector<double> integral =
        detail::inverse_square_integral(q, t0, tol, interp);

    SampledPath y(1);
    for (std::size_t i = 0; i < q.size(); ++i)
        y.push_back(q.t(i), {integral[i]});
    return y;
}

}  // namespace reidlab::linear
