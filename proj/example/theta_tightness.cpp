// Searches for the sharpest point of the theta envelope for a few alpha.

#include <cstdio>

#include <qineq/qineq.hpp>

int main()
{
    for (double qv : {0.1, 0.5, 0.9}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            const qineq::ThetaTarget target{qineq::QBase(qv), alpha};
            const auto best = qineq::tightness_search(target, 1e-4, 1e4, 512);
            std::printf("q=%.2f alpha=%.2f  c=%-10.6g  worst ratio %.6f at |z|=%.4g, arg=%.4f (%zu evaluations)\n",
                        qv, alpha, qineq::theta_weighted_constant(alpha, target.q), best.ratio, best.abs_z,
                        best.angle, best.evaluations);
        }
    }
}
