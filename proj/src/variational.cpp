#include "ribbonlim/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "ribbonlim/errors.hpp"
#include "ribbonlim/parallel.hpp"

namespace ribbonlim {

namespace {

// Golden-section minimization of a unimodal callable on [a, b].
template <class Fn>
double golden_min(Fn&& f, double a, double b, double tol) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

SpontaneousPoint minimize_density_at(const ReducedDensity& density, const ChartNode& node) {
    const auto value = [&](double mu, double tau) { return density.at(node, mu, tau).value; };

    // Coarse scan with an adaptive range; the minimizer scale is set by the
    // spontaneous tensor and the chart distortion. Regrow when the argmin
    // lands on the boundary.
    const double natural_norm = node.natural.matrix().norm();
    double range = 2.0 * (1.0 + natural_norm) * std::max(1.0, node.D.squaredNorm());
    constexpr int K = 61;
    double best_mu = 0.0;
    double best_tau = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int grow = 0; grow < 7; ++grow) {
        best = std::numeric_limits<double>::infinity();
        bool on_boundary = false;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) {
                const double mu = -range + 2.0 * range * i / (K - 1);
                const double tau = -range + 2.0 * range * j / (K - 1);
                const double f = value(mu, tau);
                if (f < best) {
                    best = f;
                    best_mu = mu;
                    best_tau = tau;
                    on_boundary = (i == 0 || i == K - 1 || j == 0 || j == K - 1);
                }
            }
        if (!on_boundary) break;
        range *= 2.0;
    }

    // Coordinate-wise golden sections; convexity of the density makes each
    // line search unimodal. The bracket shrinks with the iterate.
    double bracket = 2.0 * (2.0 * range / (K - 1));
    for (int sweep = 0; sweep < 60; ++sweep) {
        const double prev_mu = best_mu;
        const double prev_tau = best_tau;
        best_mu = golden_min([&](double m) { return value(m, best_tau); }, best_mu - bracket,
                             best_mu + bracket, 1e-9);
        best_tau = golden_min([&](double t) { return value(best_mu, t); }, best_tau - bracket,
                              best_tau + bracket, 1e-9);
        const double moved = std::max(std::abs(best_mu - prev_mu), std::abs(best_tau - prev_tau));
        bracket = std::max(4.0 * moved, 1e-7);
        if (moved < 1e-8 && sweep >= 3) break;
    }
    best = value(best_mu, best_tau);

    // Exact candidates: the flat state and the profile matching the
    // spontaneous tensor head-on. Ties go to the smaller profile.
    const double cand_mu[] = {0.0, node.natural.m11};
    const double cand_tau[] = {0.0, node.natural.m12};
    for (int k = 0; k < 2; ++k) {
        const double f = value(cand_mu[k], cand_tau[k]);
        const double tie = 1e-12 * std::max(1.0, std::abs(best));
        const bool better = f < best - tie;
        const bool tied = std::abs(f - best) <= tie &&
                          std::hypot(cand_mu[k], cand_tau[k]) < std::hypot(best_mu, best_tau);
        if (better || tied) {
            best = f;
            best_mu = cand_mu[k];
            best_tau = cand_tau[k];
        }
    }

    const DensityPoint point = density.at(node, best_mu, best_tau);
    return SpontaneousPoint{best_mu, best_tau, point.gamma, point.value};
}

std::vector<SpontaneousPoint> spontaneous_profile(const ReducedDensity& density,
                                                  const ReferenceChart& chart) {
    std::vector<SpontaneousPoint> profile(static_cast<std::size_t>(chart.node_count()));
    parallel_for(chart.node_count(),
                 [&](int i) { profile[static_cast<std::size_t>(i)] =
                                  minimize_density_at(density, chart.node(i)); });
    return profile;
}

namespace {

struct ClampedObjective {
    const ReducedDensity& density;
    const ReferenceChart& chart;
    const ClampedTargets& targets;
    std::vector<double> grid;

    explicit ClampedObjective(const ReducedDensity& d, const ReferenceChart& c,
                              const ClampedTargets& tg)
        : density(d), chart(c), targets(tg) {
        grid.resize(static_cast<std::size_t>(chart.node_count()));
        for (int i = 0; i < chart.node_count(); ++i)
            grid[static_cast<std::size_t>(i)] = chart.node(i).t;
    }

    double end_gap_squared(const std::vector<double>& x) const {
        const std::size_t n = grid.size();
        std::vector<FrameCoefficients> coeffs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const ChartNode& node = chart.node(static_cast<int>(i));
            coeffs[i] = frame_coefficients(node.D, node.kappa, x[i], x[n + i]);
        }
        const FramePath path = integrate_frames(grid, coeffs, targets.r_start, targets.y_start);
        const double dy = (path.y.back() - targets.y_end).squaredNorm();
        const double dr = (path.r.back() - targets.r_end).squaredNorm();
        return dy + dr;
    }

    double energy(const std::vector<double>& x) const {
        const std::size_t n = grid.size();
        const std::vector<double> mu(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        const std::vector<double> tau(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
        return density.total_energy(chart, mu, tau);
    }

    double operator()(const std::vector<double>& x, double weight) const {
        return energy(x) + weight * end_gap_squared(x);
    }
};

// Standard Nelder-Mead with fixed coefficients. Returns the best vertex;
// hit_tol reports whether the stop was the spread tolerance rather than the
// evaluation budget. trace, when given, records each accepted improvement.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, double tol, int budget,
                                bool* hit_tol, std::vector<double>* trace) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (std::size_t k = 0; k < d; ++k) xs[k + 1][k] += step * std::max(1.0, std::abs(x0[k]));
    int evals = 0;
    for (std::size_t k = 0; k <= d; ++k) {
        fs[k] = f(xs[k]);
        ++evals;
    }
    std::vector<std::size_t> order(d + 1);
    double best_seen = std::numeric_limits<double>::infinity();
    if (hit_tol) *hit_tol = false;

    while (evals < budget) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t lo = order[0];
        const std::size_t hi = order[d];
        const std::size_t second_hi = order[d - 1];
        if (trace && fs[lo] < best_seen) {
            best_seen = fs[lo];
            trace->push_back(best_seen);
        }
        if (fs[hi] - fs[lo] <= tol * (std::abs(fs[lo]) + tol)) {
            if (hit_tol) *hit_tol = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k <= d; ++k) {
            if (k == hi) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += xs[k][j];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        const auto blend = [&](double coeff) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j)
                x[j] = centroid[j] + coeff * (xs[hi][j] - centroid[j]);
            return x;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        ++evals;
        if (fr < fs[lo]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                xs[hi] = std::move(expanded);
                fs[hi] = fe;
            } else {
                xs[hi] = std::move(reflected);
                fs[hi] = fr;
            }
            continue;
        }
        if (fr < fs[second_hi]) {
            xs[hi] = std::move(reflected);
            fs[hi] = fr;
            continue;
        }
        std::vector<double> contracted = blend(fr < fs[hi] ? -0.5 : 0.5);
        const double fc = f(contracted);
        ++evals;
        if (fc < std::min(fr, fs[hi])) {
            xs[hi] = std::move(contracted);
            fs[hi] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t k = 0; k <= d; ++k) {
            if (k == lo) continue;
            for (std::size_t j = 0; j < d; ++j) xs[k][j] = 0.5 * (xs[k][j] + xs[lo][j]);
            fs[k] = f(xs[k]);
            ++evals;
        }
    }

    std::size_t lo = 0;
    for (std::size_t k = 1; k <= d; ++k)
        if (fs[k] < fs[lo]) lo = k;
    if (trace && fs[lo] < best_seen) trace->push_back(fs[lo]);
    return xs[lo];
}

}  // namespace

ClampedResult clamped_minimize(const ReducedDensity& density, const ReferenceChart& chart,
                               const ClampedTargets& targets, const ClampedOptions& options) {
    if (!(options.penalty_weight > 0.0))
        throw InputError("clamped_minimize: penalty_weight must be positive");
    const std::size_t n = static_cast<std::size_t>(chart.node_count());
    const std::size_t dim = 2 * n;
    const ClampedObjective objective(density, chart, targets);

    // Starting profiles: the free minimizer, the flat state, and seeded
    // jitters of the flat state.
    std::vector<std::vector<double>> starts;
    {
        const std::vector<SpontaneousPoint> sp = spontaneous_profile(density, chart);
        std::vector<double> x(dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = sp[i].mu;
            x[n + i] = sp[i].tau;
        }
        starts.push_back(std::move(x));
        starts.emplace_back(dim, 0.0);
    }
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> jitter(0.0, 0.5);
    for (int k = 0; k < options.jitter_restarts; ++k) {
        std::vector<double> x(dim);
        for (double& v : x) v = jitter(rng);
        starts.push_back(std::move(x));
    }

    // Graduated penalty: loose stages steer the geometry, the final stage
    // enforces the boundary data.
    const double weights[] = {options.penalty_weight * 1e-2, options.penalty_weight * 1e-1,
                              options.penalty_weight};

    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    bool best_hit_tol = false;
    std::vector<double> best_trace;

    for (const std::vector<double>& start : starts) {
        std::vector<double> x = start;
        bool hit_tol = false;
        std::vector<double> trace;
        for (const double w : weights) {
            const bool final_stage = (w == options.penalty_weight);
            const auto f = [&](const std::vector<double>& v) { return objective(v, w); };
            trace.clear();
            x = nelder_mead(f, x, 0.5, options.simplex_tolerance, options.max_iterations,
                            final_stage ? &hit_tol : nullptr, final_stage ? &trace : nullptr);
        }
        const double fx = objective(x, options.penalty_weight);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
            best_hit_tol = hit_tol;
            best_trace = std::move(trace);
        }
    }

    // Coordinate polish at the final weight: golden sections on shrinking
    // brackets, accepted only on improvement.
    const auto f_final = [&](const std::vector<double>& v) {
        return objective(v, options.penalty_weight);
    };
    double bracket = 0.2;
    for (int sweep = 0; sweep < options.polish_sweeps; ++sweep) {
        const double before = best_f;
        for (std::size_t k = 0; k < dim; ++k) {
            std::vector<double> probe = best_x;
            const double xk = golden_min(
                [&](double v) {
                    probe[k] = v;
                    return f_final(probe);
                },
                best_x[k] - bracket, best_x[k] + bracket, 1e-12);
            probe[k] = xk;
            const double fp = f_final(probe);
            if (fp < best_f) {
                best_f = fp;
                best_x = std::move(probe);
                best_trace.push_back(best_f);
            }
        }
        if (before - best_f < 1e-14 * std::max(1.0, std::abs(best_f))) bracket *= 0.25;
        if (bracket < 1e-10) break;
    }

    ClampedResult result;
    result.mu.assign(best_x.begin(), best_x.begin() + static_cast<std::ptrdiff_t>(n));
    result.tau.assign(best_x.begin() + static_cast<std::ptrdiff_t>(n), best_x.end());
    result.energy = objective.energy(best_x);
    result.residual = std::sqrt(objective.end_gap_squared(best_x));
    result.objective = best_f;
    result.converged = best_hit_tol;
    result.trace = std::move(best_trace);
    return result;
}

}  // namespace ribbonlim
