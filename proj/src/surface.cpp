#include "ribbonlim/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ribbonlim/errors.hpp"
#include "ribbonlim/parallel.hpp"
#include "ribbonlim/relaxation.hpp"

namespace ribbonlim {

namespace {

Vec2 perp(const Vec2& a) { return Vec2(-a[1], a[0]); }

double lagrange_derivative(double x, double a, double fa, double b, double fb, double c,
                           double fc) {
    return fa * (2.0 * x - b - c) / ((a - b) * (a - c)) +
           fb * (2.0 * x - a - c) / ((b - a) * (b - c)) +
           fc * (2.0 * x - a - b) / ((c - a) * (c - b));
}

}  // namespace

RankOneField rank_one_field(const ReferenceChart& chart, const std::vector<Voigt3>& m) {
    const std::size_t n = static_cast<std::size_t>(chart.node_count());
    if (m.size() != n) {
        std::ostringstream msg;
        msg << "rank_one_field: " << m.size() << " field samples for " << n << " chart nodes";
        throw InputError(msg.str());
    }

    double scale = 0.0;
    for (const Voigt3& v : m) scale = std::max(scale, unvoigt(v).matrix().norm());
    const double det_tol = 1e-9 * std::max(1.0, scale * scale);
    const double reassembly_tol = 1e-7 * std::max(1.0, scale);

    RankOneField field;
    field.lambda.resize(n);
    field.p.resize(n);
    field.ruling.resize(n);
    field.min_tangent_overlap = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
        const Mat2 mat = unvoigt(m[i]).matrix();
        const double det = det_form(m[i]);
        if (std::abs(det) > det_tol) {
            std::ostringstream msg;
            msg << "rank_one_field: node " << i << " has det " << det
                << ", not developable (tolerance " << det_tol << ")";
            throw NumericalError(msg.str());
        }
        const Vec2 tangent = chart.node(static_cast<int>(i)).D.col(0);
        const Vec2 image = mat * tangent;
        Vec2 p;
        if (image.norm() <= 1e-12 * std::max(1.0, mat.norm())) {
            // M annihilates the tangent: either M = 0 or the curved
            // direction is the sheet normal. Both cases take p = N.
            p = perp(tangent);
        } else {
            p = image.normalized();
        }
        if (p.dot(tangent) < 0.0) p = -p;

        const double lambda = mat.trace();
        const Mat2 residual = lambda * p * p.transpose() - mat;
        if (residual.norm() > reassembly_tol) {
            std::ostringstream msg;
            msg << "rank_one_field: node " << i << " is not rank-one, |lambda p p^T - M| = "
                << residual.norm();
            throw NumericalError(msg.str());
        }

        field.lambda[i] = lambda;
        field.p[i] = p;
        field.ruling[i] = perp(p);
        field.min_tangent_overlap = std::min(field.min_tangent_overlap, p.dot(tangent));
    }
    field.transversal = field.min_tangent_overlap > 1e-9;
    return field;
}

WidthBound width_bound(const ReferenceChart& chart, const RankOneField& field, double margin,
                       double max_half_width) {
    const std::size_t n = field.p.size();
    if (static_cast<std::size_t>(chart.node_count()) != n)
        throw InputError("width_bound: field and chart sizes differ");
    if (!(margin > 0.0 && margin < 1.0)) {
        std::ostringstream msg;
        msg << "width_bound: margin must lie in (0,1), got " << margin;
        throw InputError(msg.str());
    }
    if (!(max_half_width > 0.0))
        throw InputError("width_bound: max_half_width must be positive");
    if (!field.transversal) {
        std::ostringstream msg;
        msg << "width_bound: ruling field is not transversal to the centerline "
               "(min p . tangent = "
            << field.min_tangent_overlap << ")";
        throw NumericalError(msg.str());
    }

    // The Jacobian of (t,s) -> b + s*ruling degrades linearly in s at the
    // rate the ruling turns; bound that rate over the whole strip.
    double max_turn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 dp;
        if (n == 2) {
            dp = (field.p[1] - field.p[0]) / (chart.node(1).t - chart.node(0).t);
        } else {
            const std::size_t j = std::min(std::max<std::size_t>(i, 1), n - 2);
            for (int c = 0; c < 2; ++c)
                dp[c] = lagrange_derivative(chart.node(static_cast<int>(i)).t,
                                            chart.node(static_cast<int>(j - 1)).t,
                                            field.p[j - 1][c], chart.node(static_cast<int>(j)).t,
                                            field.p[j][c], chart.node(static_cast<int>(j + 1)).t,
                                            field.p[j + 1][c]);
        }
        max_turn = std::max(max_turn, std::abs(field.ruling[i].dot(dp)));
    }

    WidthBound bound;
    bound.min_overlap = field.min_tangent_overlap;
    bound.max_turn = max_turn;
    bound.half_width = std::min(margin * bound.min_overlap / (max_turn + 1e-12), max_half_width);
    return bound;
}

std::vector<FrameCoefficients> adapted_coefficients(const ReferenceChart& chart,
                                                    const RankOneField& field) {
    const std::size_t n = field.p.size();
    if (static_cast<std::size_t>(chart.node_count()) != n)
        throw InputError("adapted_coefficients: field and chart sizes differ");
    std::vector<FrameCoefficients> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ChartNode& node = chart.node(static_cast<int>(i));
        const Vec2 tangent = node.D.col(0);
        const double along = field.p[i].dot(tangent);
        const double across = field.p[i].dot(perp(tangent));
        coeffs[i] = FrameCoefficients{node.kappa, field.lambda[i] * along * along,
                                      field.lambda[i] * along * across};
    }
    return coeffs;
}

RibbonMesh ruled_surface(const FramePath& path, const RankOneField& field,
                         const ReferenceChart& chart, double half_width, int width_samples,
                         double margin) {
    const std::size_t n = field.p.size();
    if (path.t.size() != n || static_cast<std::size_t>(chart.node_count()) != n)
        throw InputError("ruled_surface: path, field and chart sizes differ");
    if (width_samples < 2) throw InputError("ruled_surface: need at least 2 width samples");
    if (!(half_width > 0.0)) throw InputError("ruled_surface: half_width must be positive");

    const WidthBound bound =
        width_bound(chart, field, margin, std::numeric_limits<double>::infinity());
    if (half_width > bound.half_width * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "ruled_surface: half_width " << half_width << " exceeds the width bound "
            << bound.half_width;
        throw InputError(msg.str());
    }

    RibbonMesh mesh;
    mesh.nt = static_cast<int>(n);
    mesh.ns = width_samples;
    mesh.half_width = half_width;
    mesh.vertices.resize(n * static_cast<std::size_t>(width_samples));
    mesh.flat.resize(n * static_cast<std::size_t>(width_samples));

    parallel_for(mesh.nt * mesh.ns, [&](int flat_index) {
        const int it = flat_index / mesh.ns;
        const int is = flat_index % mesh.ns;
        const double s = -half_width + 2.0 * half_width * is / (width_samples - 1);
        const ChartNode& node = chart.node(it);
        const Vec2 tangent = node.D.col(0);
        const Vec2 normal = perp(tangent);
        const Vec2& ruling = field.ruling[static_cast<std::size_t>(it)];
        const Mat3& r = path.r[static_cast<std::size_t>(it)];
        const Vec3 lab_ruling = ruling.dot(tangent) * r.row(0).transpose() +
                                ruling.dot(normal) * r.row(1).transpose();
        mesh.vertices[static_cast<std::size_t>(flat_index)] =
            path.y[static_cast<std::size_t>(it)] + s * lab_ruling;
        mesh.flat[static_cast<std::size_t>(flat_index)] = node.b + s * ruling;
    });
    return mesh;
}

std::vector<Voigt3> corrugate(const ReducedDensity& density, const ReferenceChart& chart,
                              const std::vector<double>& mu, const std::vector<double>& tau,
                              int cells) {
    const std::size_t n = static_cast<std::size_t>(chart.node_count());
    if (mu.size() != n || tau.size() != n)
        throw InputError("corrugate: profile length does not match the chart");
    if (cells < 2 || cells % 2 != 0) {
        std::ostringstream msg;
        msg << "corrugate: cell count must be even and at least 2, got " << cells;
        throw InputError(msg.str());
    }

    const double t0 = chart.node(0).t;
    const double cell_width = chart.length() / cells;
    const RelaxationProblem problem(density.rigidity(), 0.0);

    // Decompose the scaled relaxed minimizer once per cell.
    std::vector<Decomposition> parts(static_cast<std::size_t>(cells));
    std::vector<double> cell_start(static_cast<std::size_t>(cells));
    for (int c = 0; c < cells; ++c) {
        const double mid = t0 + (c + 0.5) * cell_width;
        cell_start[static_cast<std::size_t>(c)] = t0 + c * cell_width;
        int nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < chart.node_count(); ++i) {
            const double d = std::abs(chart.node(i).t - mid);
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
        const ChartNode& node = chart.node(nearest);
        const DensityPoint target =
            density.at(node, mu[static_cast<std::size_t>(nearest)],
                       tau[static_cast<std::size_t>(nearest)]);
        const Voigt3 scaled = target.curvature * std::sqrt(node.D.determinant());
        parts[static_cast<std::size_t>(c)] = two_point_decomposition(problem, scaled);
    }

    std::vector<Voigt3> field(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = chart.node(static_cast<int>(i)).t;
        int c = static_cast<int>((t - t0) / cell_width);
        c = std::clamp(c, 0, cells - 1);
        const Decomposition& dec = parts[static_cast<std::size_t>(c)];
        const double rho = (t - cell_start[static_cast<std::size_t>(c)]) / cell_width;
        const Voigt3& chosen = rho < 1.0 - dec.theta ? dec.a : dec.b;
        field[i] = chosen / std::sqrt(chart.node(static_cast<int>(i)).D.determinant());
    }
    return field;
}

}  // namespace ribbonlim
