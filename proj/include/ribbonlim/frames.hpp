#pragma once

#include <vector>

#include "ribbonlim/geometry.hpp"
#include "ribbonlim/quadratic_forms.hpp"

namespace ribbonlim {

// Orthonormal moving frame along the reconstructed centerline, one sample
// per node. Row 0 of r[k] is the unit tangent, row 1 the in-surface width
// direction, row 2 the surface normal, all in lab coordinates. y is the
// centerline position.
struct FramePath {
    std::vector<double> t;
    std::vector<Mat3> r;
    std::vector<Vec3> y;
};

// Rotation about the axis-angle vector omega. Rodrigues formula with a
// series fallback near zero angle.
[[nodiscard]] Mat3 rotation_exp(const Vec3& omega);

// Integrates the frame system r' = W(t) r, y' = tangent row of r, where
// W has rows [0 kappa mu; -kappa 0 tau; -mu -tau 0] built from the nodal
// coefficients. Coefficients are frozen at their endpoint averages on each
// interval, so every step is an exact rotation; the translation uses the
// mid-step tangent. A polar correction after each step stops orthonormality
// drift from accumulating over long paths.
[[nodiscard]] FramePath integrate_frames(const std::vector<double>& t,
                                         const std::vector<FrameCoefficients>& coeffs,
                                         const Mat3& r0, const Vec3& y0);

// Anchors at the identity frame through the origin.
[[nodiscard]] FramePath integrate_frames(const std::vector<double>& t,
                                         const std::vector<FrameCoefficients>& coeffs);

// Material directors along the path. d1 is the tangent and d3 the surface
// normal, straight from the frame rows; d2 is the image of the width
// director, generally oblique:
//   d2 = (D1.D2) d1 + det D (d3 x d1),
// which reproduces the flat metric, d_a . d_b = D_a . D_b, at every node.
struct Directors {
    std::vector<Vec3> d1, d2, d3;
};

[[nodiscard]] Directors material_directors(const FramePath& path, const ReferenceChart& chart);

}  // namespace ribbonlim
