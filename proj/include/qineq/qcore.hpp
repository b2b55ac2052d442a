#ifndef QINEQ_QCORE_HPP
#define QINEQ_QCORE_HPP

// q-shifted factorials (a;q)_n, their infinite limits, multishifted products
// (a_1,...,a_k;q)_n and the Gaussian binomial coefficient.
//
// Convention: (a;q)_0 = 1 and (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), i.e. n
// factors. Infinite products are formed factor by factor (no exp/log of the
// factors, so complex a never meets a branch cut); only the certified tail
// bound is carried in log form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace qineq {

using complex = std::complex<double>;

// Validated base 0 < q < 1. The upper guard keeps infinite products and series
// tails from needing millions of factors.
class QBase {
public:
    static constexpr double default_max = 0.999999;

    explicit QBase(double q, double max_q = default_max)
        : q_(q), log_q_(std::log(q))
    {
        if (!(q > 0.0 && q < 1.0)) {
            std::ostringstream msg;
            msg << "q must lie in (0,1), got " << q;
            throw invalid_argument(msg.str());
        }
        if (q > max_q) {
            std::ostringstream msg;
            msg << "q = " << q << " exceeds the convergence guard " << max_q;
            throw invalid_argument(msg.str());
        }
    }

    double value() const noexcept { return q_; }
    // log q, strictly negative.
    double log() const noexcept { return log_q_; }
    // q^x for real x.
    double pow(double x) const noexcept { return std::exp(x * log_q_); }

    friend bool operator==(const QBase&, const QBase&) = default;

private:
    double q_;
    double log_q_;
};

struct PochhammerValue {
    complex value{1.0, 0.0};
    std::size_t factors = 0;  // factors actually multiplied
    bool infinite = false;    // true when value approximates the n = inf product
    // Bound on |log(true / value)|; zero for finite products.
    double tail_log_bound = 0.0;
};

// Hard cap on the number of factors in an infinite product.
inline constexpr std::size_t max_product_factors = 1'000'000;

inline PochhammerValue pochhammer_finite(complex a, QBase q, std::size_t n)
{
    PochhammerValue out;
    out.factors = n;
    for (std::size_t k = 0; k < n; ++k) {
        out.value *= 1.0 - a * std::pow(q.value(), static_cast<double>(k));
    }
    return out;
}

// Truncates at the smallest N with |a| q^N / (1-q) <= tol. The omitted factors
// satisfy |log prod_{k>=N}(1 - a q^k)| <= x / ((1-q)(1-x)), x = |a| q^N.
inline PochhammerValue pochhammer_infinite(complex a, QBase q, double tol)
{
    if (!(tol > 0.0)) {
        throw invalid_argument("pochhammer_infinite: tol must be positive");
    }
    const double abs_a = std::abs(a);
    if (!std::isfinite(abs_a)) {
        throw non_convergent("pochhammer_infinite: parameter is not finite");
    }
    const double one_minus_q = 1.0 - q.value();

    PochhammerValue out;
    out.infinite = true;
    std::size_t n = 0;
    for (;;) {
        const double qn = std::pow(q.value(), static_cast<double>(n));
        const double x = abs_a * qn;
        if (x / one_minus_q <= tol) {
            out.factors = n;
            out.tail_log_bound = x < 1.0 ? x / (one_minus_q * (1.0 - x))
                                         : std::numeric_limits<double>::infinity();
            return out;
        }
        if (n == max_product_factors) {
            throw non_convergent("pochhammer_infinite: factor cap reached");
        }
        out.value *= 1.0 - a * qn;
        ++n;
    }
}

inline PochhammerValue multishifted(std::span<const complex> a, QBase q, std::size_t n)
{
    PochhammerValue out;
    out.factors = n;
    for (const auto& ai : a) {
        out.value *= pochhammer_finite(ai, q, n).value;
    }
    return out;
}

// Product of infinite q-shifted factorials; the tail bounds add.
inline PochhammerValue multishifted_infinite(std::span<const complex> a, QBase q, double tol)
{
    PochhammerValue out;
    out.infinite = true;
    for (const auto& ai : a) {
        const PochhammerValue p = pochhammer_infinite(ai, q, tol);
        out.value *= p.value;
        out.factors = std::max(out.factors, p.factors);
        out.tail_log_bound += p.tail_log_bound;
    }
    return out;
}

// [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}), evaluated as the shorter of the
// two equivalent products so that [n k] and [n n-k] are computed identically.
inline double q_binomial(std::size_t n, std::size_t k, QBase q)
{
    if (k > n) {
        std::ostringstream msg;
        msg << "q_binomial: k = " << k << " exceeds n = " << n;
        throw invalid_argument(msg.str());
    }
    const std::size_t m = std::min(k, n - k);
    double out = 1.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double num = -std::expm1(static_cast<double>(n - m + i) * q.log());
        const double den = -std::expm1(static_cast<double>(i) * q.log());
        out *= num / den;
    }
    return out;
}

} // namespace qineq

#endif // QINEQ_QCORE_HPP
