#ifndef QINEQ_VERIFY_HPP
#define QINEQ_VERIFY_HPP

// Certification harness: sweeps |z| and arg z, compares each evaluated |f(z)|
// with its envelope in log space, and records the outcome. Also hosts the
// classical identities used as independent oracles for the evaluators.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "qcore.hpp"
#include "series.hpp"

namespace qineq {

enum class FunctionTag { confluent_f, phi, aq, theta, laurent };

inline std::string_view to_string(FunctionTag tag)
{
    switch (tag) {
    case FunctionTag::confluent_f: return "f";
    case FunctionTag::phi: return "phi";
    case FunctionTag::aq: return "aq";
    case FunctionTag::theta: return "theta";
    case FunctionTag::laurent: return "laurent";
    }
    return "?";
}

inline std::optional<FunctionTag> parse_function_tag(std::string_view text)
{
    for (auto tag : {FunctionTag::confluent_f, FunctionTag::phi, FunctionTag::aq,
                     FunctionTag::theta, FunctionTag::laurent}) {
        if (text == to_string(tag)) {
            return tag;
        }
    }
    return std::nullopt;
}

struct AqTarget {
    QBase q;
};

struct ThetaTarget {
    QBase q;
    double alpha;
};

struct LaurentTarget {
    LaurentSpec spec;
    // Names the coefficient stream in param digests, e.g. "theta".
    std::string stream = "custom";
};

using AuditTarget = std::variant<ConfluentParams, PhiParams, AqTarget, ThetaTarget, LaurentTarget>;

inline FunctionTag tag_of(const AuditTarget& target)
{
    constexpr FunctionTag tags[] = {FunctionTag::confluent_f, FunctionTag::phi, FunctionTag::aq,
                                    FunctionTag::theta, FunctionTag::laurent};
    return tags[target.index()];
}

inline double q_of(const AuditTarget& target)
{
    return std::visit(
        [](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, LaurentTarget>) {
                return t.spec.q.value();
            } else if constexpr (std::is_same_v<T, ConfluentParams> || std::is_same_v<T, PhiParams>) {
                return t.q().value();
            } else {
                return t.q.value();
            }
        },
        target);
}

// Gaussian weight l for the entire-function targets; none for the Laurent ones.
inline std::optional<double> weight_of(const AuditTarget& target)
{
    switch (tag_of(target)) {
    case FunctionTag::confluent_f: return std::get<ConfluentParams>(target).l();
    case FunctionTag::phi: return std::get<PhiParams>(target).l();
    case FunctionTag::aq: return 1.0;
    default: return std::nullopt;
    }
}

namespace detail {

inline std::string join_complex(const std::vector<complex>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += '|';
        }
        out += format_complex(values[i]);
    }
    return out;
}

inline std::string join_real(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += '|';
        }
        out += format_real(values[i]);
    }
    return out;
}

} // namespace detail

// Parameters beyond q, in a comma-free form that parse_param_digest reads back.
inline std::string param_digest(const AuditTarget& target)
{
    switch (tag_of(target)) {
    case FunctionTag::confluent_f: {
        const auto& p = std::get<ConfluentParams>(target);
        return "a=" + detail::join_complex(p.a()) + ";b=" + detail::join_real(p.b()) +
               ";l=" + format_real(p.l());
    }
    case FunctionTag::phi: {
        const auto& p = std::get<PhiParams>(target);
        return "a=" + detail::join_complex(p.a()) + ";b=" + detail::join_real(p.b());
    }
    case FunctionTag::aq:
        return "";
    case FunctionTag::theta:
        return "alpha=" + format_real(std::get<ThetaTarget>(target).alpha);
    case FunctionTag::laurent: {
        const auto& t = std::get<LaurentTarget>(target);
        return "stream=" + t.stream + ";alpha=" + format_real(t.spec.alpha) +
               ";c=" + format_real(t.spec.c_weighted) + ";center=" + format_complex(t.spec.center);
    }
    }
    return "";
}

struct AuditRecord {
    FunctionTag function_tag = FunctionTag::aq;
    double q = 0.0;
    std::optional<double> l;
    std::string param_digest;
    complex z;
    double abs_value = 0.0;
    double log_abs = 0.0;
    double envelope_log = 0.0;
    double ratio = 0.0;            // |value| / envelope, formed in log space
    bool pass = false;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
    std::string error;             // non-empty when the point could not be evaluated

    bool evaluated() const noexcept { return error.empty(); }
};

struct SweepPlan {
    std::vector<double> abs_z_grid;
    std::size_t angle_count = 8;
    std::size_t parameter_draws = 0;
    std::uint64_t seed = 0;
    double slack = 1e-12;
    double tol = default_tol;
    unsigned threads = 0;          // 0: hardware concurrency
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t count)
{
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
        throw invalid_argument("log_grid: need 0 < lo <= hi and count >= 1");
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

namespace detail {

// Runs fn(i) for i in [0, n); each index writes only its own output slot, so
// results are independent of scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                fn(i);
            }
        });
    }
}

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on [0,1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1p-53;
}

} // namespace detail

// A target with its z-independent envelope pieces precomputed.
class PreparedTarget {
public:
    explicit PreparedTarget(AuditTarget target)
        : target_(std::move(target)),
          tag_(tag_of(target_)),
          q_(q_of(target_)),
          l_(weight_of(target_)),
          digest_(param_digest(target_))
    {
        if (const auto* t = std::get_if<ThetaTarget>(&target_)) {
            merom_ = meromorphic_bound_params(t->alpha, t->q);
            merom_->c_weighted = theta_weighted_constant(t->alpha, t->q);
        } else if (const auto* t = std::get_if<LaurentTarget>(&target_)) {
            detail::check_laurent(t->spec);
            merom_ = meromorphic_bound_params(t->spec.alpha, t->spec.q);
            merom_->c_weighted = t->spec.c_weighted;
        }
    }

    const AuditTarget& target() const noexcept { return target_; }
    FunctionTag tag() const noexcept { return tag_; }

    EvalResult evaluate(complex z, double tol) const
    {
        switch (tag_) {
        case FunctionTag::confluent_f: return eval_confluent_f(std::get<ConfluentParams>(target_), z, tol);
        case FunctionTag::phi: return eval_phi(std::get<PhiParams>(target_), z, tol);
        case FunctionTag::aq: return eval_ramanujan_aq(std::get<AqTarget>(target_).q, z, tol);
        case FunctionTag::theta: return eval_theta(std::get<ThetaTarget>(target_).q, z, tol);
        case FunctionTag::laurent: return eval_laurent(std::get<LaurentTarget>(target_).spec, z, tol);
        }
        throw invalid_argument("unknown function tag");
    }

    EnvelopeResult envelope(complex z) const
    {
        switch (tag_) {
        case FunctionTag::confluent_f: return envelope_entire(std::get<ConfluentParams>(target_), std::abs(z));
        case FunctionTag::phi: return envelope_phi(std::get<PhiParams>(target_), std::abs(z));
        case FunctionTag::aq: return envelope_aq_gaussian(std::get<AqTarget>(target_).q, std::abs(z));
        case FunctionTag::theta: return envelope_meromorphic(*merom_, *merom_->c_weighted, std::abs(z));
        case FunctionTag::laurent:
            return envelope_meromorphic(*merom_, *merom_->c_weighted,
                                        std::abs(z - std::get<LaurentTarget>(target_).spec.center));
        }
        throw invalid_argument("unknown function tag");
    }

    AuditRecord audit(complex z, double tol, double slack) const
    {
        AuditRecord rec;
        rec.function_tag = tag_;
        rec.q = q_;
        rec.l = l_;
        rec.param_digest = digest_;
        rec.z = z;
        try {
            const EvalResult value = evaluate(z, tol);
            const EnvelopeResult env = envelope(z);
            rec.abs_value = std::abs(value.value);
            rec.log_abs = value.log_abs;
            rec.envelope_log = env.log_bound;
            rec.ratio = std::exp(value.log_abs - env.log_bound);
            rec.terms_used = value.terms_used;
            rec.tail_bound = value.tail_bound;
            if (!value.converged) {
                rec.error = "series did not converge";
                return rec;
            }
            rec.pass = value.log_abs <= env.log_bound + std::log1p(slack);
        } catch (const std::exception& e) {
            rec.error = e.what();
            rec.pass = false;
        }
        return rec;
    }

private:
    AuditTarget target_;
    FunctionTag tag_;
    double q_;
    std::optional<double> l_;
    std::string digest_;
    std::optional<MeromorphicBoundParams> merom_;
};

// One record per (|z|, angle) pair, angles 2 pi j / angle_count, in grid-major
// order.
inline std::vector<AuditRecord> audit_envelope(const SweepPlan& plan, const AuditTarget& target)
{
    if (plan.angle_count == 0) {
        throw invalid_argument("audit_envelope: angle_count must be positive");
    }
    const PreparedTarget prepared(target);
    const std::size_t n = plan.abs_z_grid.size() * plan.angle_count;
    std::vector<AuditRecord> out(n);
    detail::parallel_for(n, plan.threads, [&](std::size_t idx) {
        const double r = plan.abs_z_grid[idx / plan.angle_count];
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(idx % plan.angle_count) /
                             static_cast<double>(plan.angle_count);
        out[idx] = prepared.audit(std::polar(r, theta), plan.tol, plan.slack);
    });
    return out;
}

// Draws a valid parameter set for the entire class: q ~ U[0.05, 0.95],
// r in {0,1,2}, s in {0,..,3}, a_i uniform on the disk |a| <= 2,
// b_j ~ U[0, 0.95], l in {0.5, 1, 1.5, 2.5}.
inline ConfluentParams random_confluent_params(std::mt19937_64& gen)
{
    constexpr double weights[] = {0.5, 1.0, 1.5, 2.5};
    const double q = 0.05 + 0.9 * detail::uniform01(gen);
    const std::size_t r = gen() % 3;
    const std::size_t s = gen() % 4;
    std::vector<complex> a(r);
    for (auto& ai : a) {
        const double radius = 2.0 * std::sqrt(detail::uniform01(gen));
        ai = std::polar(radius, 2.0 * std::numbers::pi * detail::uniform01(gen));
    }
    std::vector<double> b(s);
    for (auto& bj : b) {
        bj = 0.95 * detail::uniform01(gen);
    }
    const double l = weights[gen() % 4];
    return ConfluentParams(std::move(a), std::move(b), l, QBase(q));
}

// Random audit of the entire class: parameter_draws parameter sets, each
// checked at angle_count points with |z| log-uniform between the first and
// last grid values and arg z uniform on [0, 2 pi). Each draw has its own
// generator seeded from (seed, draw index).
inline std::vector<AuditRecord> random_confluent_audit(const SweepPlan& plan)
{
    if (plan.abs_z_grid.empty()) {
        throw invalid_argument("random_confluent_audit: empty |z| range");
    }
    const double log_lo = std::log(plan.abs_z_grid.front());
    const double log_hi = std::log(plan.abs_z_grid.back());
    const std::size_t per = plan.angle_count;
    std::vector<AuditRecord> out(plan.parameter_draws * per);
    detail::parallel_for(plan.parameter_draws, plan.threads, [&](std::size_t draw) {
        std::mt19937_64 gen(detail::splitmix64(plan.seed ^ detail::splitmix64(draw)));
        const PreparedTarget prepared(random_confluent_params(gen));
        for (std::size_t j = 0; j < per; ++j) {
            const double r = std::exp(log_lo + (log_hi - log_lo) * detail::uniform01(gen));
            const double theta = 2.0 * std::numbers::pi * detail::uniform01(gen);
            out[draw * per + j] = prepared.audit(std::polar(r, theta), plan.tol, plan.slack);
        }
    });
    return out;
}

struct AuditSummary {
    std::size_t records = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;
    double max_ratio = 0.0;
};

inline AuditSummary summarize(const std::vector<AuditRecord>& records)
{
    AuditSummary s;
    s.records = records.size();
    for (const auto& rec : records) {
        if (!rec.evaluated()) {
            ++s.errors;
            continue;
        }
        rec.pass ? ++s.passed : ++s.failed;
        s.max_ratio = std::max(s.max_ratio, rec.ratio);
    }
    return s;
}

struct TightnessResult {
    double abs_z = 0.0;
    double angle = 0.0;
    double ratio = 0.0;
    std::size_t evaluations = 0;
};

// Coarse scan of a log grid in |z| times 8 angles (about 3/4 of the budget),
// then golden-section refinement in log|z| and in angle around the best cell.
// The incumbent only ever improves, so the result is at least the coarse
// maximum.
inline TightnessResult tightness_search(const AuditTarget& target, double abs_z_lo, double abs_z_hi,
                                        std::size_t budget, double tol = default_tol)
{
    if (budget < 32) {
        throw invalid_argument("tightness_search: budget must be at least 32");
    }
    if (!(abs_z_lo > 0.0) || !(abs_z_hi > abs_z_lo)) {
        throw invalid_argument("tightness_search: need 0 < lo < hi");
    }
    const PreparedTarget prepared(target);
    constexpr std::size_t n_angle = 8;
    const std::size_t n_radius = std::max<std::size_t>(2, (budget * 3 / 4) / n_angle);
    const double two_pi = 2.0 * std::numbers::pi;

    TightnessResult best;
    double best_log = -std::numeric_limits<double>::infinity();
    auto probe = [&](double log_r, double angle) {
        ++best.evaluations;
        const AuditRecord rec = prepared.audit(std::polar(std::exp(log_r), angle), tol, 0.0);
        const double lr = rec.evaluated() ? rec.log_abs - rec.envelope_log
                                          : -std::numeric_limits<double>::infinity();
        if (lr > best_log) {
            best_log = lr;
            best.abs_z = std::exp(log_r);
            best.angle = angle;
            best.ratio = rec.ratio;
        }
        return lr;
    };

    const double a = std::log(abs_z_lo);
    const double b = std::log(abs_z_hi);
    const double step = (b - a) / static_cast<double>(n_radius - 1);
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    for (std::size_t i = 0; i < n_radius; ++i) {
        for (std::size_t j = 0; j < n_angle; ++j) {
            const double before = best_log;
            probe(a + step * static_cast<double>(i), two_pi * static_cast<double>(j) / n_angle);
            if (best_log > before) {
                best_i = i;
                best_j = j;
            }
        }
    }

    auto golden = [&](double lo, double hi, std::size_t evals, auto&& g) {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        double fc = g(c);
        double fd = g(d);
        for (std::size_t e = 2; e < evals; ++e) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = g(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = g(d);
            }
        }
    };

    const std::size_t used = n_radius * n_angle;
    const std::size_t remaining = budget > used ? budget - used : 0;
    if (remaining >= 4) {
        const double angle0 = two_pi * static_cast<double>(best_j) / n_angle;
        const double r_lo = a + step * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
        const double r_hi = a + step * static_cast<double>(std::min(best_i + 1, n_radius - 1));
        golden(r_lo, r_hi, remaining / 2, [&](double lr) { return probe(lr, angle0); });
        const double log_r = std::log(best.abs_z);
        const double half_cell = two_pi / n_angle;
        golden(best.angle - half_cell, best.angle + half_cell, remaining - remaining / 2,
               [&](double th) { return probe(log_r, th); });
    }
    return best;
}

// ---------------------------------------------------------------------------
// Identity oracles. Series sides are accumulated in long double so that the
// residual reflects the evaluators rather than cancellation in the check.

namespace detail {

using lcomplex = std::complex<long double>;

inline void check_unit_disk(complex z, const char* who)
{
    if (!(std::abs(z) < 1.0)) {
        throw invalid_argument(std::string(who) + ": requires |z| < 1");
    }
}

// sum_k (a;q)_k z^k / (q;q)_k. For k >= K the term ratio is bounded by
// rho_K = (1 + |a| q^K) |z| / (1 - q^{K+1}), which is non-increasing.
inline lcomplex q_binomial_series(complex a, QBase q, complex z, double tol)
{
    const lcomplex la(a.real(), a.imag());
    const lcomplex lz(z.real(), z.imag());
    const long double lq = q.value();
    lcomplex term = 1.0L;
    lcomplex sum = 0.0L;
    long double qk = 1.0L;
    for (std::size_t k = 0; k < max_series_terms; ++k) {
        sum += term;
        const long double den = 1.0L - qk * lq;
        const lcomplex next = term * (1.0L - la * qk) * lz / den;
        const long double rho = (1.0L + std::abs(la) * qk) * std::abs(lz) / den;
        if (k >= min_series_index && rho < 1.0L) {
            const long double tail = std::abs(next) / (1.0L - rho);
            if (tail <= tol * std::max(1.0L, std::abs(sum))) {
                return sum;
            }
        }
        term = next;
        qk *= lq;
    }
    throw non_convergent("q-binomial series did not converge");
}

} // namespace detail

// |(z;q)_inf * sum_k z^k / (q;q)_k - 1|
inline double identity_euler(QBase q, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "identity_euler");
    detail::check_unit_disk(z, "identity_euler");
    const complex prod = pochhammer_infinite(z, q, product_tol).value;
    const auto sum = detail::q_binomial_series(0.0, q, z, tol);
    const detail::lcomplex lprod(prod.real(), prod.imag());
    return static_cast<double>(std::abs(lprod * sum - 1.0L));
}

// |(az;q)_inf / (z;q)_inf - sum_k (a;q)_k z^k / (q;q)_k|, relative to
// max(1, |left side|).
inline double identity_qbinomial_theorem(complex a, QBase q, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "identity_qbinomial_theorem");
    detail::check_unit_disk(z, "identity_qbinomial_theorem");
    detail::check_finite(a, "identity_qbinomial_theorem");
    const complex lhs = pochhammer_infinite(a * z, q, product_tol).value /
                        pochhammer_infinite(z, q, product_tol).value;
    const auto rhs = detail::q_binomial_series(a, q, z, tol);
    const detail::lcomplex llhs(lhs.real(), lhs.imag());
    return static_cast<double>(std::abs(llhs - rhs) / std::max(1.0L, std::abs(llhs)));
}

// |(q^l;q)_inf * sum_k q^{kl} / (q;q)_k - 1|
inline double identity_ql_sum(double l, QBase q, double tol = default_tol)
{
    detail::check_tol(tol, "identity_ql_sum");
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw invalid_argument("identity_ql_sum: l must be positive");
    }
    const double ql = q.pow(l);
    const double prod = pochhammer_infinite(ql, q, product_tol).value.real();
    const auto sum = detail::q_binomial_series(0.0, q, ql, tol);
    return static_cast<double>(std::abs(static_cast<long double>(prod) * sum - 1.0L));
}

// |Theta(z|q) - (q^2;q^2)_inf (-zq;q^2)_inf (-q/z;q^2)_inf| / (1 + |Theta|)
inline double identity_theta_triple_product(QBase q, complex z, double tol = default_tol)
{
    detail::check_tol(tol, "identity_theta_triple_product");
    if (z == complex{}) {
        throw invalid_argument("identity_theta_triple_product: z must be nonzero");
    }
    const QBase q2(q.value() * q.value());
    const complex prod = pochhammer_infinite(q2.value(), q2, product_tol).value *
                         pochhammer_infinite(-z * q.value(), q2, product_tol).value *
                         pochhammer_infinite(-q.value() / z, q2, product_tol).value;
    const complex theta = eval_theta(q, z, tol).value;
    return std::abs(theta - prod) / (1.0 + std::abs(theta));
}

} // namespace qineq

#endif // QINEQ_VERIFY_HPP
