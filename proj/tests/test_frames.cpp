#include <doctest.h>

#include <ribbonlim/frames.hpp>

#include <cmath>
#include <vector>

using namespace ribbonlim;

namespace {

Mat3 hat(const Vec3& w) {
    Mat3 m;
    m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    return m;
}

std::vector<double> uniform_grid(double length, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = length * i / (n - 1);
    return t;
}

} // namespace

TEST_CASE("rotation exponential produces rotations and fixes its axis") {
    CHECK((rotation_exp(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

    const Vec3 x_axis(0.7, 0.0, 0.0);
    const Mat3 rx = rotation_exp(x_axis);
    CHECK(rx(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rx(1, 1) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(rx(1, 2) == doctest::Approx(-std::sin(0.7)).epsilon(1e-15));
    CHECK(rx(2, 1) == doctest::Approx(std::sin(0.7)).epsilon(1e-15));

    const Vec3 w(0.3, -1.1, 0.8);
    const Mat3 r = rotation_exp(w);
    CHECK((r.transpose() * r - Mat3::Identity()).norm() <= 1e-14);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((r * w - w).norm() <= 1e-14);

    // Series branch near zero angle agrees with the linearization.
    const Vec3 tiny = 1e-9 * Vec3(1.0, 2.0, 2.0) / 3.0;
    CHECK((rotation_exp(tiny) - (Mat3::Identity() + hat(tiny))).norm() <= 1e-15);
}

TEST_CASE("frames stay orthonormal over a hundred thousand steps") {
    const int n = 100'000;
    const auto t = uniform_grid(3.0, n);
    const std::vector<FrameCoefficients> coeffs(static_cast<std::size_t>(n),
                                                FrameCoefficients{0.7, 1.1, -0.4});
    const FramePath path = integrate_frames(t, coeffs);

    double worst = 0.0;
    for (const Mat3& r : path.r)
        worst = std::max(worst, (r.transpose() * r - Mat3::Identity()).norm());
    CHECK(worst <= 1e-12);
    CHECK(path.r.back().determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure normal curvature traces a closed circle") {
    const int n = 10'000;
    const auto t = uniform_grid(3.14159265358979323846, n);
    const std::vector<FrameCoefficients> coeffs(static_cast<std::size_t>(n),
                                                FrameCoefficients{0.0, 2.0, 0.0});
    const FramePath path = integrate_frames(t, coeffs);

    CHECK((path.y.back() - path.y.front()).norm() <= 1e-6);
    CHECK((path.r.back() - path.r.front()).norm() <= 1e-6);
}

TEST_CASE("helix coefficients reproduce their Frenet data") {
    const int n = 10'000;
    const double length = 6.0;
    const auto t = uniform_grid(length, n);
    const double h = t[1] - t[0];
    const std::vector<FrameCoefficients> coeffs(static_cast<std::size_t>(n),
                                                FrameCoefficients{0.0, 1.0, 1.0});
    const FramePath path = integrate_frames(t, coeffs);

    for (int i = 500; i + 2 < n; i += 1000) {
        const auto& y = path.y;
        const std::size_t k = static_cast<std::size_t>(i);
        const Vec3 d1 = (y[k + 1] - y[k - 1]) / (2.0 * h);
        const Vec3 d2 = (y[k + 1] - 2.0 * y[k] + y[k - 1]) / (h * h);
        const Vec3 d3 = (y[k + 2] - 2.0 * y[k + 1] + 2.0 * y[k - 1] - y[k - 2]) / (2.0 * h * h * h);

        const Vec3 cross = d1.cross(d2);
        const double curvature = cross.norm() / std::pow(d1.norm(), 3);
        const double torsion = cross.dot(d3) / cross.squaredNorm();
        CHECK(std::abs(curvature - 1.0) <= 1e-5);
        CHECK(std::abs(torsion - 1.0) <= 1e-5);
    }
}

TEST_CASE("centerline converges at second order to the closed-form path") {
    const FrameCoefficients c{0.3, 0.8, -0.5};
    const double length = 2.0;

    // Constant rates make the frame a one-parameter rotation group, so the
    // end position integrates in closed form.
    const Vec3 w(-c.tau, c.mu, -c.kappa);
    const double om = w.norm();
    const Mat3 wm = hat(w);
    const Mat3 integral = length * Mat3::Identity() +
                          ((1.0 - std::cos(om * length)) / (om * om)) * wm +
                          ((om * length - std::sin(om * length)) / (om * om * om)) * wm * wm;
    const Vec3 y_exact = integral.row(0).transpose();

    double previous = -1.0;
    for (int n : {11, 21, 41}) {
        const auto t = uniform_grid(length, n);
        const std::vector<FrameCoefficients> coeffs(static_cast<std::size_t>(n), c);
        const FramePath path = integrate_frames(t, coeffs);
        const double err = (path.y.back() - y_exact).norm();
        if (previous > 0.0) CHECK(err <= previous / 3.0);
        previous = err;

        // Constant-rate steps compose exactly, so the end frame is spot on at
        // any resolution.
        CHECK((path.r.back() - rotation_exp(length * w)).norm() <= 1e-12);
    }
    CHECK(previous <= 5e-4);
}

TEST_CASE("frame integration validates its inputs") {
    const auto t = uniform_grid(1.0, 5);
    const std::vector<FrameCoefficients> coeffs(5);

    CHECK_THROWS_AS((void)integrate_frames({0.0}, {FrameCoefficients{}}), InputError);
    CHECK_THROWS_AS((void)integrate_frames(t, std::vector<FrameCoefficients>(3)), InputError);

    auto bad_t = t;
    bad_t[2] = bad_t[1];
    CHECK_THROWS_AS((void)integrate_frames(bad_t, coeffs), InputError);

    CHECK_THROWS_AS((void)integrate_frames(t, coeffs, 2.0 * Mat3::Identity(), Vec3::Zero()),
                    InputError);
    Mat3 reflection = Mat3::Identity();
    reflection(2, 2) = -1.0;
    CHECK_THROWS_AS((void)integrate_frames(t, coeffs, reflection, Vec3::Zero()), InputError);
}

TEST_CASE("material directors reproduce the flat metric") {
    const int n = 101;
    const auto chart = ReferenceChart::sheared(2.0, 0.3, 1.2, n);

    std::vector<double> t;
    std::vector<FrameCoefficients> coeffs;
    for (const ChartNode& node : chart.nodes()) {
        t.push_back(node.t);
        coeffs.push_back(frame_coefficients(node.D, node.kappa, std::sin(node.t), std::cos(node.t)));
    }
    const FramePath path = integrate_frames(t, coeffs);
    const Directors d = material_directors(path, chart);

    const double g11 = 1.0, g12 = 0.3, g22 = 0.3 * 0.3 + 1.2 * 1.2;
    for (std::size_t i = 0; i < d.d1.size(); ++i) {
        CHECK(d.d1[i].dot(d.d1[i]) == doctest::Approx(g11).epsilon(1e-10));
        CHECK(d.d1[i].dot(d.d2[i]) == doctest::Approx(g12).epsilon(1e-10));
        CHECK(d.d2[i].dot(d.d2[i]) == doctest::Approx(g22).epsilon(1e-10));
        CHECK(std::abs(d.d3[i].norm() - 1.0) <= 1e-12);
        CHECK(std::abs(d.d3[i].dot(d.d1[i])) <= 1e-12);
    }

    const auto small = ReferenceChart::sheared(2.0, 0.3, 1.2, 51);
    CHECK_THROWS_AS((void)material_directors(path, small), InputError);
}
