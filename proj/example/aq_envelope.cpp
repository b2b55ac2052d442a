// Tabulates max |A_q(z)| on circles |z| = r against the Gaussian and
// exponential envelopes.

#include <algorithm>
#include <cstdio>
#include <numbers>

#include <qineq/qineq.hpp>

int main()
{
    const qineq::QBase q(0.5);
    std::printf("%10s %14s %14s %14s %8s\n", "|z|", "log max|A_q|", "log gaussian", "log exp", "ratio");
    for (double r : qineq::log_grid(1e-2, 1e4, 13)) {
        double log_max = -1e300;
        for (int j = 0; j < 64; ++j) {
            const auto v = qineq::eval_ramanujan_aq(q, std::polar(r, 2.0 * std::numbers::pi * j / 64.0));
            log_max = std::max(log_max, v.log_abs);
        }
        const auto gauss = qineq::envelope_aq_gaussian(q, r);
        const auto expo = qineq::envelope_aq_exponential(q, r);
        std::printf("%10.4g %14.6f %14.6f %14.6f %8.5f\n", r, log_max, gauss.log_bound, expo.log_bound,
                    std::exp(log_max - gauss.log_bound));
    }
}
