#ifndef QINEQ_LOG_SPACE_HPP
#define QINEQ_LOG_SPACE_HPP

// A complex number stored as mantissa * exp(log_scale). Series whose terms
// climb past the double range before the Gaussian factor pulls them back
// down are summed in this form.

#include <cmath>
#include <complex>
#include <limits>

namespace qineq {

class scaled_complex {
public:
    scaled_complex() = default;

    explicit scaled_complex(std::complex<double> mantissa, double log_scale = 0.0)
        : mant_(mantissa), scale_(log_scale)
    {
        normalize();
    }

    // exp(log_abs) * e^{i phase}
    static scaled_complex polar(double log_abs, double phase)
    {
        scaled_complex out;
        if (log_abs == -std::numeric_limits<double>::infinity()) {
            return out;
        }
        out.mant_ = std::polar(1.0, phase);
        out.scale_ = log_abs;
        return out;
    }

    std::complex<double> mantissa() const noexcept { return mant_; }
    double log_scale() const noexcept { return scale_; }
    bool is_zero() const noexcept { return mant_ == std::complex<double>{}; }

    // Natural log of the modulus; -inf for zero.
    double log_abs() const
    {
        if (is_zero()) {
            return -std::numeric_limits<double>::infinity();
        }
        return std::log(std::abs(mant_)) + scale_;
    }

    // Plain value; components overflow to +-inf when the modulus is out of range.
    std::complex<double> value() const
    {
        if (is_zero()) {
            return {};
        }
        if (std::abs(scale_) < 600.0) {
            return mant_ * std::exp(scale_);
        }
        return std::polar(std::exp(log_abs()), std::arg(mant_));
    }

    scaled_complex& operator*=(std::complex<double> factor)
    {
        mant_ *= factor;
        normalize();
        return *this;
    }

    // Multiplies by exp(log_factor) without forming the factor.
    scaled_complex& mul_exp(double log_factor) noexcept
    {
        if (log_factor == -std::numeric_limits<double>::infinity()) {
            mant_ = {};
            scale_ = 0.0;
        } else {
            scale_ += log_factor;
        }
        return *this;
    }

    scaled_complex& operator+=(const scaled_complex& rhs)
    {
        if (rhs.is_zero()) {
            return *this;
        }
        if (is_zero()) {
            *this = rhs;
            return *this;
        }
        const double shift = rhs.scale_ - scale_;
        if (shift > 0.0) {
            mant_ = mant_ * std::exp(-shift) + rhs.mant_;
            scale_ = rhs.scale_;
        } else {
            mant_ += rhs.mant_ * std::exp(shift);
        }
        normalize();
        return *this;
    }

private:
    void normalize()
    {
        constexpr double hi = 0x1p+300;
        constexpr double lo = 0x1p-300;
        const double m = std::abs(mant_);
        if (m == 0.0 || !std::isfinite(m)) {
            return;
        }
        if (m > hi || m < lo) {
            scale_ += std::log(m);
            mant_ /= m;
        }
    }

    std::complex<double> mant_{};
    double scale_ = 0.0;
};

} // namespace qineq

#endif // QINEQ_LOG_SPACE_HPP
