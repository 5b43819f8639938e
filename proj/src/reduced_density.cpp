#include "ribbonlim/reduced_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ribbonlim/errors.hpp"

namespace ribbonlim {

namespace {

SymMat2 sym_of(const Mat2& m) { return SymMat2{m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)}; }

}  // namespace

ReducedDensity::ReducedDensity(Rigidity c) : c_(std::move(c)), alphas_(alpha_constants(c_)) {}

DensityPoint ReducedDensity::at(const ChartNode& node, double mu, double tau) const {
    const Mat2 dual = contravariant(node.D);
    const double det_d = node.D.determinant();

    // The curvature in sheet coordinates is affine in gamma:
    //   M(gamma) = dual * (A(gamma) - A0) * dual^T = M0 + gamma * G
    // where G = d2 d2^T comes from the free profile entry and d2 is the
    // second dual column.
    Mat2 a0;
    a0 << mu - node.natural.m11, tau - node.natural.m12, tau - node.natural.m12,
        -node.natural.m22;
    const Voigt3 m0 = voigt(sym_of(dual * a0 * dual.transpose()));
    const Vec2 d2 = dual.col(1);
    const Voigt3 g = voigt(SymMat2{d2[0] * d2[0], d2[0] * d2[1], d2[1] * d2[1]});

    // Elastic part as a quadratic in gamma, already weighted by det D.
    const Vec3 cg = c_.matrix() * g;
    const double q2 = g.dot(cg) * det_d;
    const double q1 = 2.0 * m0.dot(cg) * det_d;
    const double q0 = quad(c_, m0) * det_d;

    const auto cost = [&](double gamma) {
        const double det_a = mu * gamma - tau * tau;
        const double penalty =
            (alphas_.plus * std::max(det_a, 0.0) + alphas_.minus * std::max(-det_a, 0.0)) / det_d;
        return (q2 * gamma + q1) * gamma + q0 + penalty;
    };

    double candidates[3];
    int n_candidates = 0;
    if (mu == 0.0) {
        // det A = -tau^2 regardless of gamma, so the penalty is constant and
        // the quadratic vertex is the exact minimizer.
        candidates[n_candidates++] = -q1 / (2.0 * q2);
    } else {
        const double kink = tau * tau / mu;
        // Vertex of the branch where det A >= 0, projected onto it.
        const double v_plus = -(q1 + alphas_.plus * mu / det_d) / (2.0 * q2);
        candidates[n_candidates++] = mu > 0.0 ? std::max(v_plus, kink) : std::min(v_plus, kink);
        // Same for the det A <= 0 branch.
        const double v_minus = -(q1 - alphas_.minus * mu / det_d) / (2.0 * q2);
        candidates[n_candidates++] = mu > 0.0 ? std::min(v_minus, kink) : std::max(v_minus, kink);
        candidates[n_candidates++] = kink;
    }

    double best_gamma = candidates[0];
    double best = cost(best_gamma);
    for (int i = 1; i < n_candidates; ++i) {
        const double f = cost(candidates[i]);
        const double tie = 1e-12 * std::max(1.0, std::abs(best));
        if (f < best - tie ||
            (std::abs(f - best) <= tie && std::abs(candidates[i]) < std::abs(best_gamma))) {
            best = f;
            best_gamma = candidates[i];
        }
    }

    Mat2 a;
    a << mu, tau, tau, best_gamma;
    DensityPoint out;
    out.value = best;
    out.gamma = best_gamma;
    out.curvature = voigt(sym_of(dual * a * dual.transpose()));
    out.det_curvature = det_form(out.curvature);
    return out;
}

DensityPoint ReducedDensity::plain(double mu, double tau) const {
    return at(ChartNode{}, mu, tau);
}

double ReducedDensity::total_energy(const ReferenceChart& chart, const std::vector<double>& mu,
                                    const std::vector<double>& tau) const {
    const std::size_t n = static_cast<std::size_t>(chart.node_count());
    if (mu.size() != n || tau.size() != n) {
        std::ostringstream msg;
        msg << "total_energy: profile length " << mu.size() << "/" << tau.size()
            << " does not match chart with " << n << " nodes";
        throw InputError(msg.str());
    }
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i)
        q[i] = at(chart.node(static_cast<int>(i)), mu[i], tau[i]).value;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = chart.node(static_cast<int>(i + 1)).t - chart.node(static_cast<int>(i)).t;
        total += 0.5 * h * (q[i] + q[i + 1]);
    }
    return total;
}

double integrand_from_duals(const Rigidity& c, const AlphaPair& alphas, const ChartNode& node,
                            double mu, double tau, double gamma) {
    const Mat2 dual = contravariant(node.D);
    const double det_d = node.D.determinant();

    Mat2 a;
    a << mu, tau, tau, gamma;
    const Mat2 strain = dual * (a - node.natural.matrix()) * dual.transpose();
    const Mat2 curvature = dual * a * dual.transpose();

    const double elastic = quad(c, voigt(sym_of(strain)));
    const double det_m = curvature.determinant();
    const double penalty = alphas.plus * std::max(det_m, 0.0) + alphas.minus * std::max(-det_m, 0.0);
    return (elastic + penalty) * det_d;
}

double orthotropic_reduced_density(const OrthotropicConstants& k, double mu, double tau) {
    const double root11 = std::sqrt(k.k11);
    const double root22 = std::sqrt(k.k22);
    // The closed form assumes the shear mode does not set the positive
    // penalty constant; outside that regime a third minimizer appears and
    // no closed form is available.
    if (4.0 * k.k33 < 2.0 * (root11 * root22 - k.k12)) {
        std::ostringstream msg;
        msg << "orthotropic_reduced_density: requires 4*K33 >= 2*(sqrt(K11*K22) - K12), got "
            << 4.0 * k.k33 << " < " << 2.0 * (root11 * root22 - k.k12);
        throw InputError(msg.str());
    }
    if (root11 * mu * mu > root22 * tau * tau) {
        const double mu2 = mu * mu;
        const double tau2 = tau * tau;
        return (k.k11 * mu2 * mu2 + (2.0 * k.k12 + 4.0 * k.k33) * mu2 * tau2 +
                k.k22 * tau2 * tau2) /
               mu2;
    }
    return (4.0 * k.k33 + 2.0 * root11 * root22 + 2.0 * k.k12) * tau * tau;
}

}  // namespace ribbonlim
