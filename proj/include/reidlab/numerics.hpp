#pragma once

// Integration, quadrature and finite-difference primitives shared by the
// whole library. Everything here is a pure function of its inputs and safe
// to call concurrently.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "reidlab/errors.hpp"

namespace reidlab::numerics {

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

inline bool is_finite(double x) noexcept { return std::isfinite(x); }

/// Integer power with exact handling of negative bases and exponents.
inline double ipow(double base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    double result = 1.0;
    double factor = base;
    for (unsigned n = static_cast<unsigned>(e); n != 0; n >>= 1) {
        if (n & 1u) result *= factor;
        factor *= factor;
    }
    return result;
}

/// Real n-th root. Negative arguments take the odd real branch
/// -|x|^{1/n} when n is odd and raise NoRealBranch when n is even.
inline double real_root(double x, int n) {
    if (n <= 0) throw ConfigError("real_root: order must be positive");
    if (x >= 0.0) return std::pow(x, 1.0 / n);
    if (n % 2 == 0) {
        std::ostringstream msg;
        msg << "real_root: even order " << n << " of negative value " << x;
        throw NoRealBranch(msg.str(), x);
    }
    return -std::pow(-x, 1.0 / n);
}

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Error-control settings for the adaptive integrator and the quadrature.
struct ToleranceConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 1000000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw ConfigError("ToleranceConfig: rel_tol must be in (0, 1)");
        if (!(abs_tol > 0.0 && abs_tol < 1.0))
            throw ConfigError("ToleranceConfig: abs_tol must be in (0, 1)");
        if (max_steps < 1)
            throw ConfigError("ToleranceConfig: max_steps must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// Sampled paths
// ---------------------------------------------------------------------------

/// A state trajectory sampled on a strictly increasing grid. Values are
/// stored flat, `dim` components per grid point. Non-finite entries are
/// rejected at insertion time; a NaN is never stored.
class SampledPath {
public:
    explicit SampledPath(std::size_t dim = 1) : dim_(dim) {
        if (dim_ == 0) throw ConfigError("SampledPath: dim must be positive");
    }

    std::size_t size() const noexcept { return grid_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return grid_.empty(); }

    double t(std::size_t i) const { return grid_[i]; }
    const std::vector<double>& grid() const noexcept { return grid_; }

    std::span<const double> value(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    double operator()(std::size_t i, std::size_t component) const {
        return values_[i * dim_ + component];
    }

    void push_back(double t, std::span<const double> y) {
        if (y.size() != dim_)
            throw ConfigError("SampledPath: value dimension mismatch");
        if (!is_finite(t)) throw NonFiniteState("SampledPath: non-finite grid point", t);
        if (!grid_.empty() && !(t > grid_.back())) {
            std::ostringstream msg;
            msg << "SampledPath: grid must be strictly increasing (t=" << t
                << " after " << grid_.back() << ")";
            throw ConfigError(msg.str());
        }
        for (double v : y) {
            if (!is_finite(v)) {
                std::ostringstream msg;
                msg << "SampledPath: non-finite state at t=" << t;
                throw NonFiniteState(msg.str(), t);
            }
        }
        grid_.push_back(t);
        values_.insert(values_.end(), y.begin(), y.end());
    }

    void push_back(double t, std::initializer_list<double> y) {
        push_back(t, std::span<const double>(y.begin(), y.size()));
    }

    /// Extract one component as a dim-1 path (same grid).
    SampledPath component(std::size_t c) const {
        SampledPath out(1);
        for (std::size_t i = 0; i < size(); ++i) {
            const double v = (*this)(i, c);
            out.push_back(grid_[i], {v});
        }
        return out;
    }

private:
    std::size_t dim_;
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Sample scalar functions on a uniform grid; `fns[c]` fills component c.
inline SampledPath sample_functions(
    const std::vector<std::function<double(double)>>& fns, double a, double b,
    std::size_t n) {
    if (n < 2) throw ConfigError("sample_functions: need at least 2 points");
    if (!(b > a)) throw ConfigError("sample_functions: empty interval");
    SampledPath path(fns.size());
    std::vector<double> row(fns.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        for (std::size_t c = 0; c < fns.size(); ++c) row[c] = fns[c](x);
        path.push_back(x, row);
    }
    return path;
}

inline SampledPath sample_function(const std::function<double(double)>& f,
                                   double a, double b, std::size_t n) {
    return sample_functions({f}, a, b, n);
}

// ---------------------------------------------------------------------------
// Cubic Hermite interpolation
// ---------------------------------------------------------------------------

/// Evaluate the cubic Hermite interpolant of (y0, d0) at x0 and (y1, d1)
/// at x1. `derivative` selects the interpolant's first derivative instead.
inline double hermite_eval(double x, double x0, double x1, double y0,
                           double d0, double y1, double d1,
                           bool derivative = false) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    if (!derivative) {
        const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        const double h10 = s * (1.0 - s) * (1.0 - s);
        const double h01 = s * s * (3.0 - 2.0 * s);
        const double h11 = s * s * (s - 1.0);
        return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    }
    const double g00 = 6.0 * s * (s - 1.0) / h;
    const double g10 = (3.0 * s - 1.0) * (s - 1.0);
    const double g01 = -g00;
    const double g11 = s * (3.0 * s - 2.0);
    return g00 * y0 + g10 * d0 + g01 * y1 + g11 * d1;
}

/// Monotone cubic (Fritsch-Carlson) slopes for tabulated data.
inline std::vector<double> pchip_slopes(std::span<const double> x,
                                        std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw ConfigError("pchip_slopes: bad input");
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return d;
    }
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided endpoint slopes, clipped to preserve monotonicity.
    auto endpoint = [](double h0, double h1, double del0, double del1) {
        double d0 = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d0 * del0 <= 0.0) d0 = 0.0;
        else if (del0 * del1 < 0.0 && std::abs(d0) > 3.0 * std::abs(del0)) d0 = 3.0 * del0;
        return d0;
    };
    d[0] = endpoint(x[1] - x[0], x[2] - x[1], delta[0], delta[1]);
    d[n - 1] = endpoint(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

/// Piecewise-cubic interpolant over a sampled component with known nodal
/// derivatives. Used to evaluate basis solutions between integration nodes.
class HermiteInterpolant {
public:
    HermiteInterpolant() = default;
    HermiteInterpolant(std::vector<double> x, std::vector<double> y,
                       std::vector<double> dydx)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
        if (x_.size() != y_.size() || x_.size() != d_.size() || x_.size() < 2)
            throw ConfigError("HermiteInterpolant: inconsistent node data");
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

    double operator()(double x) const { return eval(x, false); }
    double derivative(double x) const { return eval(x, true); }

private:
    double eval(double x, bool deriv) const {
        if (x < x_.front() - 1e-12 || x > x_.back() + 1e-12) {
            std::ostringstream msg;
            msg << "HermiteInterpolant: x=" << x << " outside [" << x_.front()
                << ", " << x_.back() << "]";
            throw DomainMismatch(msg.str());
        }
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        return hermite_eval(x, x_[i], x_[i + 1], y_[i], d_[i], y_[i + 1], d_[i + 1], deriv);
    }

    std::vector<double> x_, y_, d_;
};

/// Bisection refinement of a bracketed sign change.
inline double refine_zero(const std::function<double(double)>& f, double lo,
                          double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (flo * fmid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Initial value problems
// ---------------------------------------------------------------------------

/// Right-hand side f(t, y) -> dy/dt written into `dydt`.
using Rhs = std::function<void(double t, std::span<const double> y,
                               std::span<double> dydt)>;

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr std::array<double, 7> kDopriC = {
    0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
inline constexpr std::array<std::array<double, 6>, 7> kDopriA = {{
    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
}};
inline constexpr std::array<double, 7> kDopriB5 = {
    35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0};
inline constexpr std::array<double, 7> kDopriB4 = {
    5179.0 / 57600.0, 0.0,       7571.0 / 16695.0,    393.0 / 640.0,
    -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};

inline void check_finite_rhs(double t, std::span<const double> dydt) {
    for (double v : dydt) {
        if (!is_finite(v)) {
            std::ostringstream msg;
            msg << "integrate_ivp: non-finite right-hand side at t=" << t;
            throw NonFiniteState(msg.str(), t);
        }
    }
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) from t0 to t1.
/// Local error per step is kept below rel_tol*|y| + abs_tol componentwise.
/// Every accepted step is recorded; `checkpoints` (strictly increasing,
/// inside (t0, t1]) are hit exactly by clamping the step size.
inline SampledPath integrate_ivp(const Rhs& rhs, std::span<const double> y0,
                                 double t0, double t1,
                                 const ToleranceConfig& tol,
                                 std::span<const double> checkpoints = {},
                                 bool record_all = true) {
    tol.validate();
    if (!(t1 > t0)) throw ConfigError("integrate_ivp: t1 must exceed t0");
    const std::size_t n = y0.size();
    if (n == 0) throw ConfigError("integrate_ivp: empty state");

    SampledPath path(n);
    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> ynew(n), ytmp(n), err(n);
    std::array<std::vector<double>, 7> k;
    for (auto& ki : k) ki.resize(n);

    double t = t0;
    path.push_back(t, y);

    rhs(t, y, k[0]);
    detail::check_finite_rhs(t, k[0]);

    auto scaled_norm = [&](std::span<const double> e, std::span<const double> ya,
                           std::span<const double> yb) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = tol.abs_tol +
                              tol.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            const double q = e[i] / sc;
            sum += q * q;
        }
        return std::sqrt(sum / static_cast<double>(n));
    };

    // Initial step heuristic from the magnitude of y and f.
    double h;
    {
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = tol.abs_tol + tol.rel_tol * std::abs(y[i]);
            dy += (y[i] / sc) * (y[i] / sc);
            df += (k[0][i] / sc) * (k[0][i] / sc);
        }
        dy = std::sqrt(dy);
        df = std::sqrt(df);
        h = (df > 1e-10) ? 0.01 * dy / df : 1e-6;
        h = std::clamp(h, 1e-10, (t1 - t0) / 10.0);
        if (h <= 0.0) h = 1e-10;
    }

    std::size_t next_checkpoint = 0;
    std::size_t steps = 0;

    while (t < t1 - 1e-14 * (1.0 + std::abs(t1))) {
        if (++steps > tol.max_steps) {
            std::ostringstream msg;
            msg << "integrate_ivp: step limit " << tol.max_steps
                << " exceeded at t=" << t;
            throw StepLimitExceeded(msg.str());
        }

        double target = t1;
        bool at_checkpoint = false;
        if (next_checkpoint < checkpoints.size()) {
            target = std::min(target, checkpoints[next_checkpoint]);
        }
        const double h_nominal = h;
        if (t + h >= target - 1e-14 * (1.0 + std::abs(target))) {
            h = target - t;
            at_checkpoint = true;
        }

        for (std::size_t stage = 1; stage < 7; ++stage) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < stage; ++j)
                    acc += detail::kDopriA[stage][j] * k[j][i];
                ytmp[i] = y[i] + h * acc;
            }
            rhs(t + detail::kDopriC[stage] * h, ytmp, k[stage]);
            detail::check_finite_rhs(t + detail::kDopriC[stage] * h, k[stage]);
        }

        for (std::size_t i = 0; i < n; ++i) {
            double acc5 = 0.0, acc_err = 0.0;
            for (std::size_t s = 0; s < 7; ++s) {
                acc5 += detail::kDopriB5[s] * k[s][i];
                acc_err += (detail::kDopriB5[s] - detail::kDopriB4[s]) * k[s][i];
            }
            ynew[i] = y[i] + h * acc5;
            err[i] = h * acc_err;
            if (!is_finite(ynew[i])) {
                std::ostringstream msg;
                msg << "integrate_ivp: non-finite state at t=" << t + h;
                throw NonFiniteState(msg.str(), t + h);
            }
        }

        const double enorm = scaled_norm(err, y, ynew);
        if (enorm <= 1.0) {
            t += h;
            y = ynew;
            k[0] = k[6];  // FSAL: stage 7 was evaluated at (t+h, ynew)
            if (record_all || (at_checkpoint && next_checkpoint < checkpoints.size()) ||
                t >= t1 - 1e-14 * (1.0 + std::abs(t1))) {
                path.push_back(t, y);
            }
            if (next_checkpoint < checkpoints.size() &&
                t >= checkpoints[next_checkpoint] - 1e-12 * (1.0 + std::abs(t))) {
                ++next_checkpoint;
            }
        }
        // On rejection k[0] still matches (t, y); FSAL remains valid.

        const double factor =
            std::clamp(0.9 * std::pow(std::max(enorm, 1e-30), -0.2), 0.2, 5.0);
        if (at_checkpoint && enorm <= 1.0) {
            // The step was shortened only to land on an output point; resume
            // with the planned step instead of rebuilding from the stub.
            h = h_nominal;
        } else {
            h = std::max(h * factor, 1e-14 * (1.0 + std::abs(t)));
        }
    }

    return path;
}

/// Fixed-step classical 4th-order Runge-Kutta on a uniform n-interval grid.
/// Reproducible grids for regression files; no error control.
inline SampledPath rk4_path(const Rhs& rhs, std::span<const double> y0,
                            double t0, double t1, std::size_t intervals) {
    if (!(t1 > t0)) throw ConfigError("rk4_path: t1 must exceed t0");
    if (intervals < 1) throw ConfigError("rk4_path: need at least one interval");
    const std::size_t n = y0.size();
    const double h = (t1 - t0) / static_cast<double>(intervals);

    SampledPath path(n);
    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), ytmp(n);
    path.push_back(t0, y);

    for (std::size_t s = 0; s < intervals; ++s) {
        const double t = t0 + h * static_cast<double>(s);
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * k3[i];
        rhs(t + h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double tnext = (s + 1 == intervals) ? t1 : t + h;
        for (double v : y) {
            if (!is_finite(v)) throw NonFiniteState("rk4_path: non-finite state", tnext);
        }
        path.push_back(tnext, y);
    }
    return path;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double kronrod;
    double error;
};

inline PanelResult gk15_panel(const std::function<double(double)>& f, double a,
                              double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0;
    double gauss = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(mid);
        } else {
            fsum = f(mid - dx) + f(mid + dx);
        }
        if (!is_finite(fsum)) {
            std::ostringstream msg;
            msg << "quadrature: non-finite integrand near x=" << mid + dx;
            throw NonFiniteIntegrand(msg.str(), mid + dx);
        }
        kron += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
        else if (i == 7) gauss += kGaussWeights[3] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

inline double adaptive_gk15(const std::function<double(double)>& f, double a,
                            double b, double tol_abs, std::size_t& budget,
                            int depth) {
    if (budget == 0)
        throw StepLimitExceeded("quadrature: panel limit exceeded");
    --budget;
    const PanelResult whole = gk15_panel(f, a, b);
    if (whole.error <= tol_abs || depth >= 60 ||
        b - a < 1e-15 * (1.0 + std::abs(a)))
        return whole.kronrod;
    const double mid = 0.5 * (a + b);
    return adaptive_gk15(f, a, mid, 0.5 * tol_abs, budget, depth + 1) +
           adaptive_gk15(f, mid, b, 0.5 * tol_abs, budget, depth + 1);
}

}  // namespace detail

/// Adaptive quadrature of f over [a, b]: Gauss-Kronrod 7-15 per panel with
/// interval bisection until the panel error estimate meets the tolerance.
inline double quadrature(const std::function<double(double)>& f, double a,
                         double b, const ToleranceConfig& tol) {
    tol.validate();
    if (a == b) return 0.0;
    const double sign = (b >= a) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const detail::PanelResult first = detail::gk15_panel(f, lo, hi);
    const double tol_abs =
        std::max(tol.abs_tol, tol.rel_tol * std::abs(first.kronrod));
    std::size_t budget = std::max<std::size_t>(tol.max_steps, 1);
    return sign * detail::adaptive_gk15(f, lo, hi, tol_abs, budget, 0);
}

/// Cumulative integral of f along a strictly increasing grid:
/// out[i] = integral from grid[0] to grid[i], out[0] = 0. Each subinterval
/// is integrated adaptively.
inline std::vector<double> cumulative_quadrature(
    const std::function<double(double)>& f, std::span<const double> grid,
    const ToleranceConfig& tol) {
    if (grid.size() < 2) throw PathTooShort("cumulative_quadrature: need >= 2 grid points");
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("cumulative_quadrature: grid must increase");
        out[i] = out[i - 1] + quadrature(f, grid[i - 1], grid[i], tol);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference residuals
// ---------------------------------------------------------------------------

/// Residual functional r(x, y, y', y'') -> real, applied componentwise
/// spans of the path state.
using ResidualFunctional = std::function<double(
    double x, std::span<const double> y, std::span<const double> dy,
    std::span<const double> d2y)>;

/// Central finite-difference estimates of y' and y'' substituted into the
/// residual functional at every interior grid point. Supports nonuniform
/// grids; second-order accurate on (near-)uniform ones.
inline std::vector<double> fd_residual(const SampledPath& path,
                                       const ResidualFunctional& residual) {
    const std::size_t n = path.size();
    if (n < 5) throw PathTooShort("fd_residual: need at least 5 grid points");
    const std::size_t dim = path.dim();

    std::vector<double> out;
    out.reserve(n - 2);
    std::vector<double> dy(dim), d2y(dim);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = path.t(i) - path.t(i - 1);
        const double hp = path.t(i + 1) - path.t(i);
        const double denom = hm * hp * (hm + hp);
        for (std::size_t c = 0; c < dim; ++c) {
            const double ym = path(i - 1, c);
            const double yc = path(i, c);
            const double yp = path(i + 1, c);
            dy[c] = (hm * hm * yp - hp * hp * ym + (hp * hp - hm * hm) * yc) / denom;
            d2y[c] = 2.0 * (hm * yp + hp * ym - (hm + hp) * yc) / denom;
        }
        out.push_back(std::abs(residual(path.t(i), path.value(i), dy, d2y)));
    }
    return out;
}

inline double max_residual(const std::vector<double>& residuals) {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

}  // namespace reidlab::numerics
