#ifndef QINEQ_SERIES_HPP
#define QINEQ_SERIES_HPP

// Evaluators for the q-series in this library:
//
//   f(z)      = sum_k (a_1..a_r;q)_k q^{l k^2} / (b_1..b_s, q;q)_k z^k
//   r phi s   = sum_k (a;q)_k / (b, q;q)_k z^k ((-1)^k q^{k(k-1)/2})^{s+1-r}
//   A_q(z)    = sum_k q^{k^2} (-z)^k / (q;q)_k
//   Theta(z)  = sum_{k in Z} q^{k^2} z^k
//   Laurent   = sum_{k in Z} a_k (z - a)^k with |a_k| <= c q^{|k|^{alpha+1}}
//
// Every evaluator stops only on a certified tail bound, and sums in scaled
// (mantissa, log) form so that terms past the double range are handled.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "log_space.hpp"
#include "qcore.hpp"

namespace qineq {

struct EvalResult {
    complex value;
    double log_abs = 0.0;          // log |value|, finite even when value overflows
    std::size_t terms_used = 0;
    double tail_bound = 0.0;       // bound on |omitted tail|
    bool converged = false;
};

inline constexpr double default_tol = 1e-14;
// Terms summed before any stopping decision is taken.
inline constexpr std::size_t min_series_index = 8;
inline constexpr std::size_t max_series_terms = 10'000'000;

namespace detail {

inline void check_tol(double tol, const char* who)
{
    if (!(tol > 0.0)) {
        throw invalid_argument(std::string(who) + ": tol must be positive");
    }
}

inline void check_finite(complex z, const char* who)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw invalid_argument(std::string(who) + ": argument is not finite");
    }
}

inline void check_b_list(const std::vector<double>& b)
{
    for (double bj : b) {
        if (!(bj >= 0.0 && bj < 1.0)) {
            std::ostringstream msg;
            msg << "denominator parameter " << bj << " outside [0,1)";
            throw invalid_argument(msg.str());
        }
    }
}

inline void check_a_list(const std::vector<complex>& a)
{
    for (const auto& ai : a) {
        check_finite(ai, "numerator parameter");
    }
}

// Sums t_0 = 1,
//   t_{k+1} / t_k = z q^{e(k)} prod_i (1 - a_i q^k) / (prod_j (1 - b_j q^k) (1 - q^{k+1})),
// where e(k) = gauss_exponent(k) is non-decreasing. The ratio modulus is then
// bounded for every j >= k by
//   rho_k = q^{e(k)} |z| prod_i (1 + |a_i| q^k) / (prod_j (1 - b_j q^k) (1 - q^{k+1})),
// and rho_k is non-increasing, so once rho_K < 1 the omitted tail is at most
// |t_{K+1}| / (1 - rho_K).
template <class GaussExponent>
EvalResult sum_confluent(const std::vector<complex>& a, const std::vector<double>& b,
                         QBase q, complex z, GaussExponent gauss_exponent, double tol)
{
    EvalResult out;
    if (z == complex{}) {
        out.value = 1.0;
        out.terms_used = 1;
        out.converged = true;
        return out;
    }

    const double log_q = q.log();
    const double log_abs_z = std::log(std::abs(z));
    const double log_tol = std::log(tol);

    scaled_complex term(1.0);
    scaled_complex sum;
    for (std::size_t k = 0;; ++k) {
        sum += term;

        const double qk = std::pow(q.value(), static_cast<double>(k));
        complex num = 1.0;
        double num_bound = 1.0;
        for (const auto& ai : a) {
            num *= 1.0 - ai * qk;
            num_bound *= 1.0 + std::abs(ai) * qk;
        }
        double den = -std::expm1(static_cast<double>(k + 1) * log_q);
        for (double bj : b) {
            den *= 1.0 - bj * qk;
        }
        const double log_gauss = gauss_exponent(k) * log_q;

        scaled_complex next = term;
        next *= z;
        next *= num / den;
        next.mul_exp(log_gauss);

        if (k >= min_series_index) {
            const double log_next = next.log_abs();
            if (log_next == -std::numeric_limits<double>::infinity()) {
                out.tail_bound = 0.0;
                out.terms_used = k + 1;
                out.converged = true;
                break;
            }
            const double log_rho = log_gauss + log_abs_z + std::log(num_bound) - std::log(den);
            if (log_rho < 0.0) {
                const double log_tail = log_next - std::log1p(-std::exp(log_rho));
                if (log_tail <= log_tol + std::max(0.0, sum.log_abs())) {
                    out.tail_bound = std::exp(log_tail);
                    out.terms_used = k + 1;
                    out.converged = true;
                    break;
                }
            }
        }
        if (k + 1 >= max_series_terms) {
            out.tail_bound = std::numeric_limits<double>::infinity();
            out.terms_used = k + 1;
            out.converged = false;
            break;
        }
        term = next;
    }
    out.value = sum.value();
    out.log_abs = sum.log_abs();
    return out;
}

} // namespace detail

// Parameters of f: numerator a_1..a_r (complex), denominator 0 <= b_j < 1,
// Gaussian weight l > 0.
class ConfluentParams {
public:
    ConfluentParams(std::vector<complex> a, std::vector<double> b, double l, QBase q)
        : a_(std::move(a)), b_(std::move(b)), l_(l), q_(q)
    {
        detail::check_a_list(a_);
        detail::check_b_list(b_);
        if (!(l_ > 0.0) || !std::isfinite(l_)) {
            std::ostringstream msg;
            msg << "weight l must be positive, got " << l_;
            throw invalid_argument(msg.str());
        }
    }

    const std::vector<complex>& a() const noexcept { return a_; }
    const std::vector<double>& b() const noexcept { return b_; }
    double l() const noexcept { return l_; }
    QBase q() const noexcept { return q_; }
    std::size_t r() const noexcept { return a_.size(); }
    std::size_t s() const noexcept { return b_.size(); }

private:
    std::vector<complex> a_;
    std::vector<double> b_;
    double l_;
    QBase q_;
};

// Parameters of the confluent r phi s; requires s + 1 - r > 0.
class PhiParams {
public:
    PhiParams(std::vector<complex> a, std::vector<double> b, QBase q)
        : a_(std::move(a)), b_(std::move(b)), q_(q)
    {
        detail::check_a_list(a_);
        detail::check_b_list(b_);
        if (excess() <= 0) {
            std::ostringstream msg;
            msg << "confluent series needs s + 1 - r > 0, got r = " << r() << ", s = " << s();
            throw invalid_argument(msg.str());
        }
    }

    const std::vector<complex>& a() const noexcept { return a_; }
    const std::vector<double>& b() const noexcept { return b_; }
    QBase q() const noexcept { return q_; }
    std::size_t r() const noexcept { return a_.size(); }
    std::size_t s() const noexcept { return b_.size(); }
    // s + 1 - r
    long excess() const noexcept
    {
        return static_cast<long>(b_.size()) + 1 - static_cast<long>(a_.size());
    }
    // Gaussian weight of the equivalent f: (s + 1 - r) / 2.
    double l() const noexcept { return 0.5 * static_cast<double>(excess()); }

private:
    std::vector<complex> a_;
    std::vector<double> b_;
    QBase q_;
};

inline EvalResult eval_confluent_f(const ConfluentParams& p, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "eval_confluent_f");
    detail::check_finite(z, "eval_confluent_f");
    const double l = p.l();
    return detail::sum_confluent(
        p.a(), p.b(), p.q(), z,
        [l](std::size_t k) { return l * static_cast<double>(2 * k + 1); }, tol);
}

inline EvalResult eval_phi(const PhiParams& p, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "eval_phi");
    detail::check_finite(z, "eval_phi");
    const long m = p.excess();
    const complex signed_z = (m % 2 == 0) ? z : -z;
    return detail::sum_confluent(
        p.a(), p.b(), p.q(), signed_z,
        [m](std::size_t k) { return static_cast<double>(m) * static_cast<double>(k); }, tol);
}

// phi(z) = f(map(z)) with l = (s+1-r)/2 and map(w) = (-1)^{s+1-r} q^{-l} w.
struct PhiReduction {
    ConfluentParams params;
    complex scale;

    complex operator()(complex z) const { return scale * z; }
};

inline PhiReduction phi_to_f(const PhiParams& p)
{
    const double l = p.l();
    const double sign = (p.excess() % 2 == 0) ? 1.0 : -1.0;
    return PhiReduction{ConfluentParams(p.a(), p.b(), l, p.q()), complex(sign * p.q().pow(-l), 0.0)};
}

inline EvalResult eval_ramanujan_aq(QBase q, complex z, double tol = default_tol)
{
    return eval_confluent_f(ConfluentParams({}, {}, 1.0, q), -z, tol);
}

// Symmetric truncation sum_{|k| <= K}. With M = max(|z|, 1/|z|) each omitted
// wing is dominated by sum_{k > K} q^{k^2} M^k, whose consecutive ratios are
// at most q^{2K+3} M.
inline EvalResult eval_theta(QBase q, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "eval_theta");
    detail::check_finite(z, "eval_theta");
    if (z == complex{}) {
        throw invalid_argument("eval_theta: z must be nonzero");
    }
    const double log_q = q.log();
    const double log_abs_z = std::log(std::abs(z));
    const double log_m = std::abs(log_abs_z);
    const double phase = std::arg(z);
    const double log_tol = std::log(tol);

    EvalResult out;
    scaled_complex sum(1.0);
    for (std::size_t n = 1;; ++n) {
        const double k = static_cast<double>(n);
        sum += scaled_complex::polar(k * k * log_q + k * log_abs_z, k * phase);
        sum += scaled_complex::polar(k * k * log_q - k * log_abs_z, -k * phase);

        if (n >= min_series_index) {
            const double log_rho = (2.0 * k + 3.0) * log_q + log_m;
            if (log_rho < 0.0) {
                const double log_tail = std::log(2.0) + (k + 1.0) * (k + 1.0) * log_q
                                        + (k + 1.0) * log_m - std::log1p(-std::exp(log_rho));
                if (log_tail <= log_tol + std::max(0.0, sum.log_abs())) {
                    out.tail_bound = std::exp(log_tail);
                    out.terms_used = 2 * n + 1;
                    out.converged = true;
                    break;
                }
            }
        }
        if (2 * n + 1 >= max_series_terms) {
            out.tail_bound = std::numeric_limits<double>::infinity();
            out.terms_used = 2 * n + 1;
            break;
        }
    }
    out.value = sum.value();
    out.log_abs = sum.log_abs();
    return out;
}

// A Laurent expansion sum_k coeff(k) (z - center)^k whose coefficients obey
// |coeff(k)| <= c_weighted q^{|k|^{alpha+1}}. coeff may be invoked from several
// threads at once and must tolerate that.
struct LaurentSpec {
    complex center{};
    std::function<complex(long long)> coeff;
    double alpha = 1.0;
    QBase q;
    double c_weighted = 0.0;
    long long k_cap = 100'000;
};

namespace detail {

inline void check_laurent(const LaurentSpec& spec)
{
    if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
        throw invalid_argument("Laurent spec: alpha must be positive");
    }
    if (!(spec.c_weighted >= 0.0) || !std::isfinite(spec.c_weighted)) {
        throw invalid_argument("Laurent spec: c_weighted must be finite and non-negative");
    }
    if (!spec.coeff) {
        throw invalid_argument("Laurent spec: missing coefficient function");
    }
    if (spec.k_cap < 1) {
        throw invalid_argument("Laurent spec: k_cap must be positive");
    }
}

} // namespace detail

// Symmetric truncation over |k| <= K. The omitted indices contribute at most
// 2 c sum_{m > K} exp(e(m)), e(m) = m log M - lambda m^{alpha+1}, lambda = -log q,
// M = max(d, 1/d); e is concave, so past its peak the terms fall at least
// geometrically with ratio exp(e(K+2) - e(K+1)).
inline EvalResult eval_laurent(const LaurentSpec& spec, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "eval_laurent");
    detail::check_finite(z, "eval_laurent");
    detail::check_laurent(spec);
    const complex w = z - spec.center;
    if (w == complex{}) {
        throw center_pole("eval_laurent: z coincides with the expansion center");
    }
    const double log_d = std::log(std::abs(w));
    const double log_m = std::abs(log_d);
    const double phase = std::arg(w);
    const double lambda = -spec.q.log();
    const double log_tol = std::log(tol);
    const double log_c = std::log(spec.c_weighted);
    auto envelope_exponent = [&](double m) {
        return m * log_m - lambda * std::pow(m, spec.alpha + 1.0);
    };

    EvalResult out;
    scaled_complex sum{spec.coeff(0)};
    for (long long n = 1;; ++n) {
        const double k = static_cast<double>(n);
        scaled_complex up = scaled_complex::polar(k * log_d, k * phase);
        up *= spec.coeff(n);
        scaled_complex down = scaled_complex::polar(-k * log_d, -k * phase);
        down *= spec.coeff(-n);
        sum += up;
        sum += down;

        if (n >= static_cast<long long>(min_series_index)) {
            const double e1 = envelope_exponent(k + 1.0);
            const double log_rho = envelope_exponent(k + 2.0) - e1;
            if (log_rho < 0.0) {
                const double log_tail = std::log(2.0) + log_c + e1 - std::log1p(-std::exp(log_rho));
                if (log_tail <= log_tol + std::max(0.0, sum.log_abs())) {
                    out.tail_bound = std::exp(log_tail);
                    out.terms_used = static_cast<std::size_t>(2 * n + 1);
                    out.converged = true;
                    break;
                }
            }
        }
        if (n >= spec.k_cap) {
            std::ostringstream msg;
            msg << "eval_laurent: tail bound above tolerance at k_cap = " << spec.k_cap;
            throw non_convergent(msg.str());
        }
    }
    out.value = sum.value();
    out.log_abs = sum.log_abs();
    return out;
}

// sum_k |coeff(k)| q^{-|k|^{alpha+1}} for a coefficient stream. No proof of
// convergence is possible for a black box: summation stops once both wings
// stay below tol relative to the running sum for min_series_index consecutive
// indices, and throws non_convergent when `cap` is reached first.
inline double laurent_weighted_constant(const std::function<complex(long long)>& coeff,
                                        double alpha, QBase q, double tol = default_tol,
                                        long long cap = 100'000)
{
    detail::check_tol(tol, "laurent_weighted_constant");
    if (!(alpha > 0.0)) {
        throw invalid_argument("laurent_weighted_constant: alpha must be positive");
    }
    const double lambda = -q.log();
    auto weighted_log = [&](long long k) {
        const double mag = std::abs(coeff(k));
        if (mag == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        return std::log(mag) + lambda * std::pow(std::abs(static_cast<double>(k)), alpha + 1.0);
    };

    scaled_complex sum;
    sum += scaled_complex::polar(weighted_log(0), 0.0);
    std::size_t quiet = 0;
    for (long long n = 1; n <= cap; ++n) {
        const double up = weighted_log(n);
        const double down = weighted_log(-n);
        sum += scaled_complex::polar(up, 0.0);
        sum += scaled_complex::polar(down, 0.0);
        const double threshold = std::log(tol) + sum.log_abs();
        quiet = (up <= threshold && down <= threshold) ? quiet + 1 : 0;
        if (quiet >= min_series_index) {
            const double out = sum.value().real();
            if (!std::isfinite(out)) {
                throw non_convergent("laurent_weighted_constant: weighted sum overflows");
            }
            return out;
        }
    }
    throw non_convergent("laurent_weighted_constant: coefficient stream did not settle before cap");
}

} // namespace qineq

#endif // QINEQ_SERIES_HPP
