#ifndef QINEQ_BOUNDS_HPP
#define QINEQ_BOUNDS_HPP

// Closed-form envelopes |f(z)| <= E(|z|), all carried in natural-log form.
//
// Entire class f (weight l, constant c = (-|a_1|..-|a_r|;q)_inf / (b_1..b_s;q)_inf):
//   log E = log c - log (q^l;q)_inf + 1/2 log|z| - l/4 log q - log^2|z| / (4 l log q)
// The last three terms are the maximum over real k of k log|z| + l k(k-1) log q.
//
// Laurent class with weighted constant c and exponent alpha:
//   log E = log c + beta |log |z - a||^gamma,
//   beta = alpha / ((alpha+1)^{1+1/alpha} log^{1/alpha}(1/q)), gamma = (alpha+1)/alpha.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "log_space.hpp"
#include "qcore.hpp"
#include "series.hpp"

namespace qineq {

// Accuracy target for the infinite products inside the envelope constants.
inline constexpr double product_tol = 1e-17;

struct EnvelopeResult {
    double log_bound = 0.0;
    std::optional<double> bound;   // empty when exp(log_bound) overflows
    double constant_c = 1.0;
    double prefactor_log = 0.0;
    double exponent_term = 0.0;
};

struct MeromorphicBoundParams {
    double alpha;
    QBase q;
    double beta;
    double log_beta;
    double gamma;
    std::optional<double> c_weighted;
};

namespace detail {

inline EnvelopeResult make_envelope(double c, double prefactor_log, double exponent_term)
{
    EnvelopeResult out;
    out.constant_c = c;
    out.prefactor_log = prefactor_log;
    out.exponent_term = exponent_term;
    out.log_bound = std::log(c) + prefactor_log + exponent_term;
    const double linear = std::exp(out.log_bound);
    if (std::isfinite(linear)) {
        out.bound = linear;
    }
    return out;
}

inline void check_abs_z(double abs_z, const char* who)
{
    if (!(abs_z > 0.0) || !std::isfinite(abs_z)) {
        std::ostringstream msg;
        msg << who << ": |z| must be positive and finite, got " << abs_z;
        throw invalid_argument(msg.str());
    }
}

inline double log_poch_inf_real(double a, QBase q)
{
    return std::log(pochhammer_infinite(complex(a, 0.0), q, product_tol).value.real());
}

} // namespace detail

// c = (-|a_1|, ..., -|a_r|; q)_inf / (b_1, ..., b_s; q)_inf
inline double constant_c(const ConfluentParams& p)
{
    std::vector<complex> num;
    num.reserve(p.r());
    for (const auto& ai : p.a()) {
        num.emplace_back(-std::abs(ai), 0.0);
    }
    std::vector<complex> den(p.b().begin(), p.b().end());
    const double top = multishifted_infinite(num, p.q(), product_tol).value.real();
    const double bottom = multishifted_infinite(den, p.q(), product_tol).value.real();
    return top / bottom;
}

// Log of the largest value of (q^{l(k-1)} |z|)^k over real k, attained at
// k* = 1/2 - log|z| / (2 l log q).
inline double term_peak(double abs_z, double l, QBase q)
{
    detail::check_abs_z(abs_z, "term_peak");
    const double lz = std::log(abs_z);
    const double lq = q.log();
    return 0.5 * lz - 0.25 * l * lq - lz * lz / (4.0 * l * lq);
}

inline EnvelopeResult envelope_entire(const ConfluentParams& p, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_entire");
    const double l = p.l();
    const double lz = std::log(abs_z);
    const double lq = p.q().log();
    const double log_ql_poch = detail::log_poch_inf_real(p.q().pow(l), p.q());
    return detail::make_envelope(constant_c(p),
                                 -log_ql_poch + 0.5 * lz - 0.25 * l * lq,
                                 -lz * lz / (4.0 * l * lq));
}

// Bound for r phi s through its reduction to f at |w| = q^{-l} |z|.
inline EnvelopeResult envelope_phi(const PhiParams& p, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_phi");
    const PhiReduction red = phi_to_f(p);
    return envelope_entire(red.params, abs_z * p.q().pow(-p.l()));
}

// The same bound written directly in terms of r and s:
//   c / (b, q^{(s+1-r)/2}; q)_inf * (|z|^2 q^{3(r-s-1)/2})^{1/4}
//     * exp(log^2(|z| q^{(r-s-1)/2}) / (2 (r-s-1) log q))
inline EnvelopeResult envelope_phi_closed_form(const PhiParams& p, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_phi_closed_form");
    const double d = -static_cast<double>(p.excess());  // r - s - 1
    const double lz = std::log(abs_z);
    const double lq = p.q().log();
    const double log_shifted = lz + 0.5 * d * lq;
    const ConfluentParams f_params(p.a(), p.b(), p.l(), p.q());
    const double log_ql_poch = detail::log_poch_inf_real(p.q().pow(p.l()), p.q());
    return detail::make_envelope(constant_c(f_params),
                                 -log_ql_poch + 0.25 * (2.0 * lz + 1.5 * d * lq),
                                 log_shifted * log_shifted / (2.0 * d * lq));
}

// |A_q(z)| <= (|z| / sqrt q)^{1/2} exp(-log^2|z| / (4 log q)) / (q;q)_inf
inline EnvelopeResult envelope_aq_gaussian(QBase q, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_aq_gaussian");
    const double lz = std::log(abs_z);
    const double lq = q.log();
    return detail::make_envelope(1.0,
                                 0.5 * (lz - 0.5 * lq) - detail::log_poch_inf_real(q.value(), q),
                                 -lz * lz / (4.0 * lq));
}

// |A_q(z)| <= exp(q |z| / (1 - q)), valid at z = 0 as well.
inline EnvelopeResult envelope_aq_exponential(QBase q, double abs_z)
{
    if (!(abs_z >= 0.0) || !std::isfinite(abs_z)) {
        throw invalid_argument("envelope_aq_exponential: |z| must be finite and non-negative");
    }
    return detail::make_envelope(1.0, 0.0, q.value() * abs_z / (1.0 - q.value()));
}

inline MeromorphicBoundParams meromorphic_bound_params(double alpha, QBase q)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw invalid_argument("meromorphic_bound_params: alpha must be positive");
    }
    const double lambda = -q.log();
    const double log_beta = std::log(alpha) - (1.0 + 1.0 / alpha) * std::log1p(alpha)
                            - std::log(lambda) / alpha;
    return MeromorphicBoundParams{alpha, q, std::exp(log_beta), log_beta, (alpha + 1.0) / alpha,
                                  std::nullopt};
}

// c exp(beta |log dist|^gamma), dist = |z - a| > 0.
inline EnvelopeResult envelope_meromorphic(const MeromorphicBoundParams& params, double c_weighted,
                                           double dist)
{
    detail::check_abs_z(dist, "envelope_meromorphic");
    if (!(c_weighted >= 0.0) || !std::isfinite(c_weighted)) {
        throw invalid_argument("envelope_meromorphic: weighted constant must be finite and non-negative");
    }
    const double big_l = std::abs(std::log(dist));
    const double exponent =
        big_l == 0.0 ? 0.0 : std::exp(params.log_beta + params.gamma * std::log(big_l));
    return detail::make_envelope(c_weighted, 0.0, exponent);
}

// c(alpha) = sum_k q^{k^2 - |k|^{1+alpha}} for 0 < alpha < 1, returned as an
// upper bound: the exponent h(k) = k^2 - k^{1+alpha} is increasing with
// increasing steps for k >= 1, so the omitted tail is bounded geometrically and
// added in.
inline double theta_weighted_constant(double alpha, QBase q, double tol = 1e-16)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "theta_weighted_constant: alpha must lie in (0,1), got " << alpha;
        throw invalid_argument(msg.str());
    }
    detail::check_tol(tol, "theta_weighted_constant");
    const double lq = q.log();
    auto h = [alpha](double k) { return k * k - std::pow(k, 1.0 + alpha); };

    constexpr long long cap = 100'000;
    double sum = 1.0;
    for (long long n = 1; n <= cap; ++n) {
        const double k = static_cast<double>(n);
        const double term = std::exp(h(k) * lq);
        sum += 2.0 * term;
        const double next = std::exp(h(k + 1.0) * lq);
        if (next <= tol * sum) {
            const double ratio = std::exp((h(k + 2.0) - h(k + 1.0)) * lq);
            return sum + 2.0 * next / (1.0 - ratio);
        }
    }
    throw non_convergent("theta_weighted_constant: index cap reached");
}

// Theta envelope from the Laurent-class bound with a_k = q^{k^2}:
//   |Theta(z|q)| <= c(alpha) exp(beta |log|z||^gamma).
inline EnvelopeResult envelope_theta(double alpha, QBase q, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_theta");
    MeromorphicBoundParams params = meromorphic_bound_params(alpha, q);
    params.c_weighted = theta_weighted_constant(alpha, q);
    return envelope_meromorphic(params, *params.c_weighted, abs_z);
}

// c(alpha) exp(|log|z||^2 / log(1/q))^{1/alpha}, the displayed theta bound
// read literally. Kept for comparison only; envelope_theta is the bound that
// follows from the term-domination argument.
inline EnvelopeResult envelope_theta_as_printed(double alpha, QBase q, double abs_z)
{
    detail::check_abs_z(abs_z, "envelope_theta_as_printed");
    const double c = theta_weighted_constant(alpha, q);
    const double big_l = std::log(abs_z);
    return detail::make_envelope(c, 0.0, big_l * big_l / (-q.log() * alpha));
}

} // namespace qineq

#endif // QINEQ_BOUNDS_HPP
