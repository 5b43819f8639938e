#include "ribbonlim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ribbonlim/errors.hpp"

namespace ribbonlim {

namespace {

Vec2 perp(const Vec2& a) { return Vec2(-a[1], a[0]); }

// Derivative at x of the quadratic through (a,fa), (b,fb), (c,fc).
double lagrange_derivative(double x, double a, double fa, double b, double fb, double c,
                           double fc) {
    return fa * (2.0 * x - b - c) / ((a - b) * (a - c)) +
           fb * (2.0 * x - a - c) / ((b - a) * (b - c)) +
           fc * (2.0 * x - a - b) / ((c - a) * (c - b));
}

}  // namespace

NaturalCurvature NaturalCurvature::zero() { return NaturalCurvature(); }

NaturalCurvature NaturalCurvature::constant(const SymMat2& value) {
    NaturalCurvature n;
    n.t_ = {0.0};
    n.values_ = {value};
    return n;
}

NaturalCurvature NaturalCurvature::table(std::vector<double> t, std::vector<SymMat2> values) {
    if (t.empty() || t.size() != values.size())
        throw InputError("NaturalCurvature::table: need matching, non-empty t and value lists");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw InputError("NaturalCurvature::table: breakpoints must be strictly increasing");
    NaturalCurvature n;
    n.t_ = std::move(t);
    n.values_ = std::move(values);
    return n;
}

SymMat2 NaturalCurvature::at(double t) const {
    if (values_.empty()) return SymMat2{0.0, 0.0, 0.0};
    if (values_.size() == 1 || t <= t_.front()) return values_.front();
    if (t >= t_.back()) return values_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - t_.begin());
    const double w = (t - t_[j - 1]) / (t_[j] - t_[j - 1]);
    const SymMat2& a = values_[j - 1];
    const SymMat2& b = values_[j];
    return SymMat2{(1.0 - w) * a.m11 + w * b.m11, (1.0 - w) * a.m12 + w * b.m12,
                   (1.0 - w) * a.m22 + w * b.m22};
}

ReferenceChart::ReferenceChart(ChartKind kind, std::vector<ChartNode> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {}

namespace {

void check_grid(double length, int node_count, const char* where) {
    if (!(length > 0.0)) {
        std::ostringstream msg;
        msg << where << ": length must be positive, got " << length;
        throw InputError(msg.str());
    }
    if (node_count < 2) {
        std::ostringstream msg;
        msg << where << ": need at least 2 nodes, got " << node_count;
        throw InputError(msg.str());
    }
}

}  // namespace

ReferenceChart ReferenceChart::rectangle(double length, int node_count,
                                         const NaturalCurvature& natural) {
    check_grid(length, node_count, "ReferenceChart::rectangle");
    std::vector<ChartNode> nodes(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
        ChartNode& n = nodes[static_cast<std::size_t>(i)];
        n.t = -0.5 * length + length * i / (node_count - 1);
        n.b = Vec2(n.t, 0.0);
        n.D = Mat2::Identity();
        n.kappa = 0.0;
        n.natural = natural.at(n.t);
    }
    return ReferenceChart(ChartKind::Rectangle, std::move(nodes));
}

ReferenceChart ReferenceChart::arc(double length, double kappa0, int node_count,
                                   const NaturalCurvature& natural) {
    check_grid(length, node_count, "ReferenceChart::arc");
    if (!(std::abs(kappa0) * length < 2.0 * M_PI)) {
        std::ostringstream msg;
        msg << "ReferenceChart::arc: |kappa0|*length = " << std::abs(kappa0) * length
            << " must stay below 2*pi; the arc would close on itself";
        throw InputError(msg.str());
    }
    std::vector<ChartNode> nodes(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
        ChartNode& n = nodes[static_cast<std::size_t>(i)];
        n.t = -0.5 * length + length * i / (node_count - 1);
        const double th = kappa0 * n.t;
        if (kappa0 == 0.0) {
            n.b = Vec2(n.t, 0.0);
        } else {
            const double half = std::sin(0.5 * th);
            n.b = Vec2(std::sin(th) / kappa0, 2.0 * half * half / kappa0);
        }
        n.D << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        n.kappa = kappa0;
        n.natural = natural.at(n.t);
    }
    return ReferenceChart(ChartKind::Arc, std::move(nodes));
}

ReferenceChart ReferenceChart::sheared(double length, double d12, double d22, int node_count,
                                       const NaturalCurvature& natural) {
    check_grid(length, node_count, "ReferenceChart::sheared");
    if (!(d22 > 0.0)) {
        std::ostringstream msg;
        msg << "ReferenceChart::sheared: d22 must be positive, got " << d22;
        throw InputError(msg.str());
    }
    Mat2 D;
    D << 1.0, d12, 0.0, d22;
    std::vector<ChartNode> nodes(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
        ChartNode& n = nodes[static_cast<std::size_t>(i)];
        n.t = -0.5 * length + length * i / (node_count - 1);
        n.b = Vec2(n.t, 0.0);
        n.D = D;
        n.kappa = 0.0;
        n.natural = natural.at(n.t);
    }
    return ReferenceChart(ChartKind::Sheared, std::move(nodes));
}

ReferenceChart ReferenceChart::sampled(std::vector<double> t, std::vector<Mat2> D,
                                       std::vector<SymMat2> natural,
                                       std::optional<std::vector<double>> kappa) {
    const std::size_t n = t.size();
    if (n < 2) throw InputError("ReferenceChart::sampled: need at least 2 nodes");
    if (D.size() != n || natural.size() != n || (kappa && kappa->size() != n))
        throw InputError("ReferenceChart::sampled: per-node arrays have mismatched lengths");
    for (std::size_t i = 1; i < n; ++i)
        if (!(t[i] > t[i - 1])) {
            std::ostringstream msg;
            msg << "ReferenceChart::sampled: t must be strictly increasing (violated at node "
                << i << ")";
            throw InputError(msg.str());
        }
    for (std::size_t i = 0; i < n; ++i) {
        const double tangent_norm = D[i].col(0).norm();
        if (std::abs(tangent_norm - 1.0) > 1e-6) {
            std::ostringstream msg;
            msg << "ReferenceChart::sampled: tangent column of D must be unit length, node " << i
                << " has |D1| = " << tangent_norm;
            throw InputError(msg.str());
        }
        if (!(D[i].determinant() > 0.0)) {
            std::ostringstream msg;
            msg << "ReferenceChart::sampled: det D must be positive, node " << i << " has det "
                << D[i].determinant();
            throw InputError(msg.str());
        }
    }

    std::vector<double> kap;
    if (kappa) {
        kap = std::move(*kappa);
    } else {
        // Planar curvature of the centerline recovered from the rotation of
        // the tangent column: kappa = D1' . perp(D1).
        kap.resize(n);
        if (n == 2) {
            const Vec2 d = (D[1].col(0) - D[0].col(0)) / (t[1] - t[0]);
            kap[0] = d.dot(perp(D[0].col(0)));
            kap[1] = d.dot(perp(D[1].col(0)));
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = std::min(std::max<std::size_t>(i, 1), n - 2);
                Vec2 d;
                for (int c = 0; c < 2; ++c)
                    d[c] = lagrange_derivative(t[i], t[j - 1], D[j - 1](c, 0), t[j], D[j](c, 0),
                                               t[j + 1], D[j + 1](c, 0));
                kap[i] = d.dot(perp(D[i].col(0)));
            }
        }
    }

    // Centerline recovered from the tangent column by cumulative trapezoid
    // quadrature, anchored at the origin.
    std::vector<Vec2> b(n, Vec2::Zero());
    for (std::size_t i = 0; i + 1 < n; ++i)
        b[i + 1] = b[i] + 0.5 * (t[i + 1] - t[i]) * (D[i].col(0) + D[i + 1].col(0));

    std::vector<ChartNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes[i] = ChartNode{t[i], b[i], D[i], kap[i], natural[i]};
    return ReferenceChart(ChartKind::Sampled, std::move(nodes));
}

Mat2 contravariant(const Mat2& D) {
    const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
    if (std::abs(det) <= 1e-14 * std::max(1.0, D.squaredNorm()))
        throw InputError("contravariant: chart matrix is singular");
    Mat2 dual;
    dual.col(0) = Vec2(D(1, 1), -D(0, 1)) / det;
    dual.col(1) = Vec2(-D(1, 0), D(0, 0)) / det;
    return dual;
}

FrameCoefficients frame_coefficients(const Mat2& D, double kappa, double mu, double tau) {
    const double det = D.determinant();
    if (!(det > 0.0)) throw InputError("frame_coefficients: det D must be positive");
    const double slant = D.col(0).dot(D.col(1));
    return FrameCoefficients{kappa, mu, (tau - mu * slant) / det};
}

}  // namespace ribbonlim
