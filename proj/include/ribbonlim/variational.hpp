#pragma once

#include <vector>

#include "ribbonlim/frames.hpp"
#include "ribbonlim/geometry.hpp"
#include "ribbonlim/reduced_density.hpp"

namespace ribbonlim {

struct SpontaneousPoint {
    double mu = 0.0;
    double tau = 0.0;
    double gamma = 0.0;
    double value = 0.0;
};

// argmin over (mu, tau) of the pointwise density at one node. The density
// is convex, so a coarse scan with an adaptive range followed by
// coordinate-wise golden-section refinement converges; the exact
// candidates (0, 0) and (A0_11, A0_12) are always compared too, and flat
// ties resolve toward the smaller profile norm.
[[nodiscard]] SpontaneousPoint minimize_density_at(const ReducedDensity& density,
                                                   const ChartNode& node);

// Free-ribbon minimizer. The functional carries no derivative coupling in
// (mu, tau), so minimizing pointwise at every node is exact, not an
// approximation.
[[nodiscard]] std::vector<SpontaneousPoint> spontaneous_profile(const ReducedDensity& density,
                                                                const ReferenceChart& chart);

// Boundary data for the clamped problem: the path starts exactly at
// (r_start, y_start); the end node is pulled toward (r_end, y_end) by a
// quadratic penalty.
struct ClampedTargets {
    Mat3 r_start = Mat3::Identity();
    Vec3 y_start = Vec3::Zero();
    Mat3 r_end = Mat3::Identity();
    Vec3 y_end = Vec3::Zero();
};

struct ClampedOptions {
    double penalty_weight = 1e6;  // final weight on the squared end mismatch
    int max_iterations = 20000;   // objective evaluations per simplex stage
    double simplex_tolerance = 1e-10;
    int polish_sweeps = 60;       // coordinate-descent sweeps after the simplex
    int jitter_restarts = 2;      // extra randomized starts
    unsigned long long seed = 0;
};

struct ClampedResult {
    std::vector<double> mu, tau;
    double energy = 0.0;     // density integral of the returned profile
    double residual = 0.0;   // sqrt(|y gap|^2 + |r gap|_F^2) at the end node
    double objective = 0.0;  // energy + penalty_weight * residual^2
    bool converged = false;  // final simplex stage stopped on tolerance
    std::vector<double> trace;  // best objective after each accepted improvement
};

// Best-effort minimization of energy plus end-state penalty over the nodal
// profile, by penalty-graduated simplex descent restarted from the
// spontaneous profile, from zero, and from seeded jitters, followed by a
// coordinate polish. Nonlinear through the frame system, so no global
// optimality is claimed; converged=false flags a budget-limited run.
[[nodiscard]] ClampedResult clamped_minimize(const ReducedDensity& density,
                                             const ReferenceChart& chart,
                                             const ClampedTargets& targets,
                                             const ClampedOptions& options = {});

}  // namespace ribbonlim
