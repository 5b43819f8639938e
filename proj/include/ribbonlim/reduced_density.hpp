#pragma once

#include <vector>

#include "ribbonlim/geometry.hpp"
#include "ribbonlim/quadratic_forms.hpp"

namespace ribbonlim {

// Result of the pointwise transverse minimization. gamma is the minimizing
// free entry of the profile matrix [[mu, tau], [tau, gamma]]; curvature is
// the full second fundamental form this induces in sheet coordinates,
// returned in Voigt form together with its determinant.
struct DensityPoint {
    double value = 0.0;
    double gamma = 0.0;
    Voigt3 curvature = Voigt3::Zero();
    double det_curvature = 0.0;
};

// Energy density of the one-dimensional ribbon model. For a chart node with
// matrix D and spontaneous tensor A0, and profile values (mu, tau),
//
//   q(mu, tau) = min over gamma of
//       quad(C, D^{-T} (A - A0) D^{-1}) * det D
//       + (alpha_plus * (det A)^+ + alpha_minus * (det A)^-) / det D
//
// with A = [[mu, tau], [tau, gamma]]. The minimization is exact: the cost is
// a convex quadratic in gamma plus a piecewise linear term with a single
// kink, so the minimizer is one of at most three closed-form candidates.
class ReducedDensity {
  public:
    explicit ReducedDensity(Rigidity c);

    [[nodiscard]] const Rigidity& rigidity() const { return c_; }
    [[nodiscard]] const AlphaPair& alphas() const { return alphas_; }

    [[nodiscard]] DensityPoint at(const ChartNode& node, double mu, double tau) const;

    // Identity chart, no spontaneous curvature. Matches the closed forms
    // below on orthotropic rigidities.
    [[nodiscard]] DensityPoint plain(double mu, double tau) const;

    // Trapezoid quadrature of the density along the chart for nodal profile
    // values; mu and tau must have one entry per chart node.
    [[nodiscard]] double total_energy(const ReferenceChart& chart, const std::vector<double>& mu,
                                      const std::vector<double>& tau) const;

  private:
    Rigidity c_;
    AlphaPair alphas_;
};

// Same integrand evaluated along an independent route: the strain and
// curvature tensors are assembled entry by entry from the dual chart basis,
// and the penalty acts on the determinant of the assembled curvature matrix
// rather than on the profile-level determinant. Used to cross-check the
// optimized path in tests.
[[nodiscard]] double integrand_from_duals(const Rigidity& c, const AlphaPair& alphas,
                                          const ChartNode& node, double mu, double tau,
                                          double gamma);

// Closed form of the identity-chart density for orthotropic rigidities.
[[nodiscard]] double orthotropic_reduced_density(const OrthotropicConstants& k, double mu,
                                                 double tau);

}  // namespace ribbonlim
