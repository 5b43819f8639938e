#pragma once

#include <optional>
#include <vector>

#include "ribbonlim/quadratic_forms.hpp"

namespace ribbonlim {

// Spontaneous curvature tensor along the strip, expressed in the fixed
// in-plane basis of the reference sheet (same basis the rigidity uses).
class NaturalCurvature {
  public:
    static NaturalCurvature zero();
    static NaturalCurvature constant(const SymMat2& value);

    // Piecewise-linear in t; outside the table range the end values extend
    // as constants. Breakpoints must be strictly increasing.
    static NaturalCurvature table(std::vector<double> t, std::vector<SymMat2> values);

    SymMat2 at(double t) const;

  private:
    NaturalCurvature() = default;
    std::vector<double> t_;
    std::vector<SymMat2> values_;
};

enum class ChartKind { Rectangle, Arc, Sheared, Sampled };

// One sample of the reference geometry. b is the centerline point in the
// flat sheet; D's first column is its unit tangent, the second column the
// transverse director along which the width coordinate runs. kappa is the
// planar (geodesic) curvature of the centerline.
struct ChartNode {
    double t = 0.0;
    Vec2 b = Vec2::Zero();
    Mat2 D = Mat2::Identity();
    double kappa = 0.0;
    SymMat2 natural{0.0, 0.0, 0.0};
};

// Geometry of the flat strip the ribbon is cut from, sampled at increasing
// parameter values. Built-in shapes produce uniform nodes; sampled charts
// accept arbitrary spacing.
class ReferenceChart {
  public:
    // Straight strip of the given length: D = I, kappa = 0.
    static ReferenceChart rectangle(double length, int node_count,
                                    const NaturalCurvature& natural = NaturalCurvature::zero());

    // Annular strip whose centerline is a circular arc of curvature kappa0.
    // The tangent rotates with t while the material axes stay fixed, so D is
    // the rotation by kappa0*t. Requires |kappa0|*length < 2*pi so the arc
    // stays short of a full turn.
    static ReferenceChart arc(double length, double kappa0, int node_count,
                              const NaturalCurvature& natural = NaturalCurvature::zero());

    // Straight centerline with an oblique width direction:
    // D = [[1, d12], [0, d22]], constant in t. Requires d22 > 0.
    static ReferenceChart sheared(double length, double d12, double d22, int node_count,
                                  const NaturalCurvature& natural = NaturalCurvature::zero());

    // Arbitrary per-node data, e.g. read from a file. Validates that t is
    // strictly increasing, |D column 1| = 1 and det D > 0 at every node.
    // When kappa is not supplied it is recovered from the tangent column by
    // second-order finite differences.
    static ReferenceChart sampled(std::vector<double> t, std::vector<Mat2> D,
                                  std::vector<SymMat2> natural,
                                  std::optional<std::vector<double>> kappa = std::nullopt);

    ChartKind kind() const { return kind_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    double length() const { return nodes_.back().t - nodes_.front().t; }
    const ChartNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<ChartNode>& nodes() const { return nodes_; }

  private:
    ReferenceChart(ChartKind kind, std::vector<ChartNode> nodes);
    ChartKind kind_;
    std::vector<ChartNode> nodes_;
};

// Columns of D^{-T}, i.e. the dual basis of D's columns, from the 2x2
// adjugate. Throws if D is singular to working precision.
Mat2 contravariant(const Mat2& D);

// Rotation rates of the orthonormal surface frame transported along the
// reconstructed centerline: kappa turns the tangent inside the surface,
// mu bends it out of the surface, tau twists the surface about it.
struct FrameCoefficients {
    double kappa = 0.0;
    double mu = 0.0;
    double tau = 0.0;
};

// Converts the profile variables (mu = curvature form on the tangent pair,
// tau = its mixed value against the width director) into frame rotation
// rates. The width director is generally not orthonormal to the tangent,
// which is where the det D and D1.D2 factors come from.
FrameCoefficients frame_coefficients(const Mat2& D, double kappa, double mu, double tau);

}  // namespace ribbonlim
