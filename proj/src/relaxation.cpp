#include "ribbonlim/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace ribbonlim {

double relaxed_integrand(const RelaxationProblem& p, const Voigt3& m) {
    const double d = det_form(m) - p.z;
    return quad(p.C, m) + p.alphas.plus * std::max(d, 0.0) + p.alphas.minus * std::max(-d, 0.0);
}

Decomposition two_point_decomposition(const RelaxationProblem& p, const Voigt3& m) {
    const double excess = det_form(m) - p.z;
    const double scale = std::max(1.0, m.squaredNorm());
    if (std::abs(excess) <= 1e-12 * scale) return Decomposition{m, m, 0.0, quad(p.C, m)};

    const KernelSign sign = excess > 0.0 ? KernelSign::Plus : KernelSign::Minus;
    Voigt3 k = kernel_direction(p.C, sign, p.alphas);
    double dk = det_form(k);
    if (std::abs(dk) < 1e-10) {
        // Nearly parabolic kernel direction; widen the eigenvalue threshold once.
        k = kernel_direction(p.C, sign, p.alphas, 100.0);
        dk = det_form(k);
        if (std::abs(dk) < 1e-10)
            throw NumericalError("relaxation.two_point_decomposition: kernel direction nearly "
                                 "parabolic (|det_form| < 1e-10)");
    }

    // det(m + l*k) - z = dk*l^2 + b*l + excess with dk*excess < 0: real roots
    // straddling zero. Sign-aware quadratic solve avoids cancellation.
    const double b = 2.0 * det_bilinear(m, k);
    const double disc = b * b - 4.0 * dk * excess;
    if (!(disc > 0.0))
        throw NumericalError("relaxation.two_point_decomposition: non-positive discriminant; "
                             "kernel det sign inconsistent with constraint side");
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double lam1 = std::min(q / dk, excess / q);
    const double lam2 = std::max(q / dk, excess / q);
    if (!(lam1 < 0.0 && 0.0 < lam2))
        throw NumericalError("relaxation.two_point_decomposition: roots do not straddle zero");

    const double theta = -lam1 / (lam2 - lam1);
    const Voigt3 a = m + lam1 * k;
    const Voigt3 bb = m + lam2 * k;
    return Decomposition{a, bb, theta, (1.0 - theta) * quad(p.C, a) + theta * quad(p.C, bb)};
}

// ---------------------------------------------------------------------------
// Discrete biconjugate oracle
// ---------------------------------------------------------------------------

namespace {

struct ConstraintSamples {
    std::vector<Vec3> x;
    std::vector<double> q; // quad(C, x)
};

// Both determinant lifts x3 = +-2*sqrt(x1*x2 - z) of every admissible pair on
// the axis grid {-radius + 2*radius*i/n, 0 <= i <= n}. Solving x3 exactly
// keeps every sample on the graph of the constrained integrand, which makes
// the discrete envelope a certified upper bound of the formula. The level-n
// axis grid is a subset of the level-2n grid, so doubling n only enlarges the
// sample set and the envelope value decreases monotonically toward the limit.
ConstraintSamples collect_samples(const RelaxationProblem& p, double radius, int n) {
    ConstraintSamples s;
    for (int i = 0; i <= n; ++i) {
        const double x1 = -radius + 2.0 * radius * i / n;
        for (int j = 0; j <= n; ++j) {
            const double x2 = -radius + 2.0 * radius * j / n;
            const double w = x1 * x2 - p.z;
            if (w < 0.0) continue;
            const double x3 = 2.0 * std::sqrt(w);
            if (x3 > 2.0 * radius) continue; // n-independent cap keeps levels nested
            const Voigt3 up(x1, x2, x3);
            s.x.push_back(up);
            s.q.push_back(quad(p.C, up));
            if (x3 > 0.0) {
                const Voigt3 down(x1, x2, -x3);
                s.x.push_back(down);
                s.q.push_back(quad(p.C, down));
            }
        }
    }
    if (s.x.empty()) {
        std::ostringstream os;
        os << "relaxation.brute_force_biconjugate: no admissible constraint samples for radius="
           << radius << ", n=" << n << ", z=" << p.z;
        throw InputError(os.str());
    }
    return s;
}

// m.xi - f*(xi) with the discrete conjugate f* evaluated exactly over samples.
double minorant_value(const ConstraintSamples& s, const Vec3& xi, const Vec3& m) {
    double conj = -std::numeric_limits<double>::infinity();
    const std::size_t count = s.x.size();
    for (std::size_t i = 0; i < count; ++i) conj = std::max(conj, xi.dot(s.x[i]) - s.q[i]);
    return xi.dot(m) - conj;
}

} // namespace

double brute_force_biconjugate(const RelaxationProblem& p, const Voigt3& m, double radius, int n) {
    if (n < 16) throw InputError("relaxation.brute_force_biconjugate: n must be >= 16");
    if (!(radius > 0.0)) throw InputError("relaxation.brute_force_biconjugate: radius must be > 0");
    if (!(m.norm() < 0.5 * radius))
        throw InputError("relaxation.brute_force_biconjugate: |m| must be < radius/2");

    const ConstraintSamples samples = collect_samples(p, radius, n);

    // The outer transform is a concave piecewise-linear maximization in the
    // slope variable: coarse cube scan, grown if the maximizer hits the
    // boundary, then deterministic shrinking refinement around the best slope.
    const double amax = std::max(p.alphas.plus, p.alphas.minus);
    double span = (2.0 * p.C.matrix().norm() + amax) * radius;

    Vec3 best_xi = Vec3::Zero();
    double best = -std::numeric_limits<double>::infinity();

    constexpr int Kc = 13;
    for (int grow = 0; grow < 9; ++grow) {
        best = -std::numeric_limits<double>::infinity();
        bool on_boundary = false;
        for (int a = 0; a < Kc; ++a)
            for (int b = 0; b < Kc; ++b)
                for (int c = 0; c < Kc; ++c) {
                    const Vec3 xi(-span + 2.0 * span * a / (Kc - 1),
                                  -span + 2.0 * span * b / (Kc - 1),
                                  -span + 2.0 * span * c / (Kc - 1));
                    const double g = minorant_value(samples, xi, m);
                    if (g > best) {
                        best = g;
                        best_xi = xi;
                        on_boundary = (a == 0 || a == Kc - 1 || b == 0 || b == Kc - 1 || c == 0 ||
                                       c == Kc - 1);
                    }
                }
        if (!on_boundary) break;
        span *= 2.0;
    }

    constexpr int Kr = 7;
    double half = 2.0 * span / (Kc - 1);
    while (half > 1e-12 * std::max(1.0, span)) {
        const Vec3 center = best_xi;
        for (int a = 0; a < Kr; ++a)
            for (int b = 0; b < Kr; ++b)
                for (int c = 0; c < Kr; ++c) {
                    const Vec3 xi(center[0] - half + 2.0 * half * a / (Kr - 1),
                                  center[1] - half + 2.0 * half * b / (Kr - 1),
                                  center[2] - half + 2.0 * half * c / (Kr - 1));
                    const double g = minorant_value(samples, xi, m);
                    if (g > best) {
                        best = g;
                        best_xi = xi;
                    }
                }
        half *= 0.5;
    }
    return best;
}

} // namespace ribbonlim
