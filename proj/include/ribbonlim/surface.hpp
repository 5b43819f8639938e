#pragma once

#include <vector>

#include "ribbonlim/frames.hpp"
#include "ribbonlim/geometry.hpp"
#include "ribbonlim/quadratic_forms.hpp"
#include "ribbonlim/reduced_density.hpp"

namespace ribbonlim {

// Rank-one form of a developable curvature field: at every node
// M = lambda p(x)p with |p| = 1 and p oriented along the centerline
// tangent where possible. ruling is the perpendicular flat direction the
// strip extends along.
struct RankOneField {
    std::vector<double> lambda;
    std::vector<Vec2> p;
    std::vector<Vec2> ruling;
    double min_tangent_overlap = 0.0;  // smallest p . tangent over nodes
    bool transversal = false;          // overlap stays strictly positive
};

// Factors a nodewise curvature field (Voigt, sheet coordinates) into the
// rank-one data above. Every node must satisfy det M = 0 within a scaled
// 1e-9; p follows M applied to the tangent, falling back to the sheet
// normal when that image vanishes. The factorization is verified by
// reassembling lambda p(x)p at each node.
[[nodiscard]] RankOneField rank_one_field(const ReferenceChart& chart,
                                          const std::vector<Voigt3>& m);

struct WidthBound {
    double half_width = 0.0;   // usable ruling half-width
    double min_overlap = 0.0;  // min p . tangent over nodes
    double max_turn = 0.0;     // max |ruling . p'| over nodes
};

// Largest half width, up to the cap, for which the flattening map
// (t, s) -> b(t) + s * ruling(t) keeps its Jacobian at least
// (1 - margin) * min_overlap in magnitude. Requires a transversal field.
[[nodiscard]] WidthBound width_bound(const ReferenceChart& chart, const RankOneField& field,
                                     double margin, double max_half_width);

// Frame rotation rates adapted to a rank-one field: kappa is the chart's,
// bending and twist come from the field, mu = lambda (p.B')^2 and
// tau = lambda (p.B')(p.N).
[[nodiscard]] std::vector<FrameCoefficients> adapted_coefficients(const ReferenceChart& chart,
                                                                  const RankOneField& field);

// Ruled strip on the (t, s) grid: vertex (it, is) sits at
// y(t_it) + s_is * L(t_it) with L the ruling pushed to lab coordinates.
// flat holds the matching sheet coordinates b(t) + s * ruling(t), so mesh
// and flat grids sample the same map on both sides of the isometry.
struct RibbonMesh {
    int nt = 0;
    int ns = 0;
    double half_width = 0.0;
    std::vector<Vec3> vertices;  // row-major, t outer, s inner
    std::vector<Vec2> flat;

    [[nodiscard]] const Vec3& vertex(int it, int is) const {
        return vertices[static_cast<std::size_t>(it) * static_cast<std::size_t>(ns) +
                        static_cast<std::size_t>(is)];
    }
    [[nodiscard]] const Vec2& flat_at(int it, int is) const {
        return flat[static_cast<std::size_t>(it) * static_cast<std::size_t>(ns) +
                    static_cast<std::size_t>(is)];
    }
};

// half_width must not exceed width_bound at the same margin; width_samples
// is the s resolution (>= 2).
[[nodiscard]] RibbonMesh ruled_surface(const FramePath& path, const RankOneField& field,
                                       const ReferenceChart& chart, double half_width,
                                       int width_samples, double margin = 0.5);

// Piecewise-constant developable field oscillating between the two-point
// decomposition endpoints of the relaxed target. The chart is split into
// `cells` equal cells; in each cell the relaxed minimizer at the node
// nearest the cell midpoint is decomposed, and the first (1-theta) of the
// cell carries endpoint a, the rest endpoint b. Cell averages approach the
// relaxed target, and every node is exactly developable.
[[nodiscard]] std::vector<Voigt3> corrugate(const ReducedDensity& density,
                                            const ReferenceChart& chart,
                                            const std::vector<double>& mu,
                                            const std::vector<double>& tau, int cells);

}  // namespace ribbonlim
