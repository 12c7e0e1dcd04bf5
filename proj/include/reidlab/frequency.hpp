#pragma once

// Time-dependent frequency specification omega^2(t) for the linear
// oscillator q_tt + omega^2(t) q = 0.

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "reidlab/errors.hpp"
#include "reidlab/numerics.hpp"

namespace reidlab::linear {

class FrequencyModel {
public:
    enum class Kind { Constant, Zero, Polynomial, Tabulated };

    static FrequencyModel constant(double omega2) {
        FrequencyModel m;
        m.kind_ = Kind::Constant;
        m.coeffs_ = {omega2};
        return m;
    }

    /// Exactly omega^2 == 0; the basis q1 = 1, q2 = t - t0.
    static FrequencyModel zero() {
        FrequencyModel m;
        m.kind_ = Kind::Zero;
        return m;
    }

    /// omega^2(t) = sum_i coeffs[i] * t^i.
    static FrequencyModel polynomial(std::vector<double> coeffs) {
        if (coeffs.empty())
            throw ConfigError("FrequencyModel::polynomial: no coefficients");
        for (double c : coeffs) {
            if (!numerics::is_finite(c))
                throw ConfigError("FrequencyModel::polynomial: non-finite coefficient");
        }
        FrequencyModel m;
        m.kind_ = Kind::Polynomial;
        m.coeffs_ = std::move(coeffs);
        return m;
    }

    /// Monotone cubic interpolation of tabulated omega^2 samples.
    static FrequencyModel tabulated(std::vector<double> t,
                                    std::vector<double> omega2) {
        if (t.size() != omega2.size() || t.size() < 2)
            throw ConfigError("FrequencyModel::tabulated: need matching samples");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!numerics::is_finite(t[i]) || !numerics::is_finite(omega2[i]))
                throw ConfigError("FrequencyModel::tabulated: non-finite sample");
            if (i > 0 && !(t[i] > t[i - 1]))
                throw ConfigError("FrequencyModel::tabulated: grid must increase");
        }
        FrequencyModel m;
        m.kind_ = Kind::Tabulated;
        auto slopes = numerics::pchip_slopes(t, omega2);
        m.table_ = numerics::HermiteInterpolant(std::move(t), std::move(omega2),
                                                std::move(slopes));
        return m;
    }

    Kind kind() const noexcept { return kind_; }

    double operator()(double t) const {
        double w2 = 0.0;
        switch (kind_) {
            case Kind::Zero:
                return 0.0;
            case Kind::Constant:
                return coeffs_[0];
            case Kind::Polynomial:
                for (std::size_t i = coeffs_.size(); i-- > 0;)
                    w2 = w2 * t + coeffs_[i];
                break;
            case Kind::Tabulated:
                w2 = table_(t);
                break;
        }
        if (!numerics::is_finite(w2)) {
            std::ostringstream msg;
            msg << "FrequencyModel: non-finite omega^2 at t=" << t;
            throw NonFiniteState(msg.str(), t);
        }
        return w2;
    }

private:
    FrequencyModel() = default;

    Kind kind_ = Kind::Zero;
    std::vector<double> coeffs_;
    numerics::HermiteInterpolant table_;
};

}  // namespace reidlab::linear
