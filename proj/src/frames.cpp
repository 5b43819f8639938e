#include "ribbonlim/frames.hpp"

#include <cmath>
#include <sstream>

#include "ribbonlim/errors.hpp"

namespace ribbonlim {

namespace {

Mat3 skew(const Vec3& w) {
    Mat3 s;
    s << 0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0;
    return s;
}

// Rotation rates as a rotation axis: W(kappa, mu, tau) = skew(-tau, mu, -kappa).
Vec3 axis(const FrameCoefficients& c) { return Vec3(-c.tau, c.mu, -c.kappa); }

Mat3 polar_correct(const Mat3& r) {
    return 0.5 * r * (3.0 * Mat3::Identity() - r.transpose() * r);
}

}  // namespace

Mat3 rotation_exp(const Vec3& omega) {
    const double th2 = omega.squaredNorm();
    const double th = std::sqrt(th2);
    double a, b;
    if (th < 1e-4) {
        a = 1.0 - th2 / 6.0 * (1.0 - th2 / 20.0);
        b = 0.5 - th2 / 24.0 * (1.0 - th2 / 30.0);
    } else {
        a = std::sin(th) / th;
        b = (1.0 - std::cos(th)) / th2;
    }
    const Mat3 s = skew(omega);
    return Mat3::Identity() + a * s + b * (s * s);
}

FramePath integrate_frames(const std::vector<double>& t,
                           const std::vector<FrameCoefficients>& coeffs, const Mat3& r0,
                           const Vec3& y0) {
    const std::size_t n = t.size();
    if (n < 2) throw InputError("integrate_frames: need at least 2 nodes");
    if (coeffs.size() != n) {
        std::ostringstream msg;
        msg << "integrate_frames: " << coeffs.size() << " coefficient samples for " << n
            << " nodes";
        throw InputError(msg.str());
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(t[i] > t[i - 1]))
            throw InputError("integrate_frames: t must be strictly increasing");
    if ((r0.transpose() * r0 - Mat3::Identity()).norm() > 1e-12 ||
        std::abs(r0.determinant() - 1.0) > 1e-12)
        throw InputError("integrate_frames: initial frame must be a rotation");

    FramePath path;
    path.t = t;
    path.r.resize(n);
    path.y.resize(n);
    path.r[0] = polar_correct(r0);
    path.y[0] = y0;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = t[i + 1] - t[i];
        const Vec3 w = 0.5 * (axis(coeffs[i]) + axis(coeffs[i + 1]));
        const Mat3 half = rotation_exp(0.5 * h * w) * path.r[i];
        path.y[i + 1] = path.y[i] + h * half.row(0).transpose();
        path.r[i + 1] = polar_correct(rotation_exp(h * w) * path.r[i]);
    }
    return path;
}

FramePath integrate_frames(const std::vector<double>& t,
                           const std::vector<FrameCoefficients>& coeffs) {
    return integrate_frames(t, coeffs, Mat3::Identity(), Vec3::Zero());
}

Directors material_directors(const FramePath& path, const ReferenceChart& chart) {
    const std::size_t n = path.t.size();
    if (static_cast<std::size_t>(chart.node_count()) != n) {
        std::ostringstream msg;
        msg << "material_directors: chart has " << chart.node_count() << " nodes, path has " << n;
        throw InputError(msg.str());
    }
    Directors d;
    d.d1.resize(n);
    d.d2.resize(n);
    d.d3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Mat3& r = path.r[i];
        const ChartNode& node = chart.node(static_cast<int>(i));
        const Vec3 d1 = r.row(0).transpose();
        const Vec3 d3 = r.row(2).transpose();
        d.d1[i] = d1;
        d.d3[i] = d3;
        d.d2[i] = node.D.col(0).dot(node.D.col(1)) * d1 + node.D.determinant() * d3.cross(d1);
    }
    return d;
}

}  // namespace ribbonlim
