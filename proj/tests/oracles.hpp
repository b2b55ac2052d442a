#ifndef QINEQ_TESTS_ORACLES_HPP
#define QINEQ_TESTS_ORACLES_HPP

// Naive reference computations for the tests. Every term is built from
// scratch in long double with no recurrences, no early stopping and no
// scaling, so they share no code path with the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using lreal = long double;
using lcomplex = std::complex<long double>;

inline lcomplex to_l(std::complex<double> z) { return {z.real(), z.imag()}; }

inline lcomplex poch(lcomplex a, lreal q, std::size_t n)
{
    lcomplex p = 1.0L;
    for (std::size_t k = 0; k < n; ++k) {
        p *= 1.0L - a * std::pow(q, static_cast<lreal>(k));
    }
    return p;
}

struct SeriesSum {
    lcomplex value;
    lreal abs_sum;   // sum of |term_k|, the natural scale of rounding error
};

// sum_{k<n} (a;q)_k q^{l k^2} z^k / ((b;q)_k (q;q)_k)
inline SeriesSum confluent_f(const std::vector<std::complex<double>>& a,
                             const std::vector<double>& b, double l, double q,
                             std::complex<double> z, std::size_t n)
{
    SeriesSum out{0.0L, 0.0L};
    for (std::size_t k = 0; k < n; ++k) {
        lcomplex t = std::pow(static_cast<lreal>(q), static_cast<lreal>(l) * k * k) *
                     std::pow(to_l(z), static_cast<int>(k));
        for (const auto& ai : a) t *= poch(to_l(ai), q, k);
        for (double bj : b) t /= poch(bj, q, k);
        t /= poch(static_cast<lreal>(q), q, k);
        out.value += t;
        out.abs_sum += std::abs(t);
    }
    return out;
}

// sum_{k<n} (a;q)_k / ((b;q)_k (q;q)_k) z^k ((-1)^k q^{k(k-1)/2})^{s+1-r}
inline SeriesSum phi(const std::vector<std::complex<double>>& a, const std::vector<double>& b,
                     double q, std::complex<double> z, std::size_t n)
{
    const int m = static_cast<int>(b.size()) + 1 - static_cast<int>(a.size());
    SeriesSum out{0.0L, 0.0L};
    for (std::size_t k = 0; k < n; ++k) {
        const lreal kk = static_cast<lreal>(k);
        lcomplex t = std::pow(to_l(z), static_cast<int>(k)) *
                     std::pow(std::pow(-1.0L, kk) * std::pow(static_cast<lreal>(q), kk * (kk - 1) / 2), m);
        for (const auto& ai : a) t *= poch(to_l(ai), q, k);
        for (double bj : b) t /= poch(bj, q, k);
        t /= poch(static_cast<lreal>(q), q, k);
        out.value += t;
        out.abs_sum += std::abs(t);
    }
    return out;
}

// sum_{|k| <= kmax} q^{k^2} z^k
inline SeriesSum theta(double q, std::complex<double> z, int kmax)
{
    SeriesSum out{0.0L, 0.0L};
    for (int k = -kmax; k <= kmax; ++k) {
        const lcomplex t = std::pow(static_cast<lreal>(q), static_cast<lreal>(k) * k) *
                           std::pow(to_l(z), k);
        out.value += t;
        out.abs_sum += std::abs(t);
    }
    return out;
}

// sum_{|k| <= kmax} q^{k^2 - |k|^{1+alpha}}
inline lreal theta_weighted(double alpha, double q, int kmax)
{
    lreal s = 0.0L;
    for (int k = -kmax; k <= kmax; ++k) {
        const lreal ak = std::abs(static_cast<lreal>(k));
        s += std::pow(static_cast<lreal>(q), ak * ak - std::pow(ak, 1.0L + alpha));
    }
    return s;
}

} // namespace oracle

#endif // QINEQ_TESTS_ORACLES_HPP
