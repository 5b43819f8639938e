#include <doctest.h>

#include <ribbonlim/geometry.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace ribbonlim;

TEST_CASE("rectangle chart centers the parameter and keeps identity axes") {
    const auto chart = ReferenceChart::rectangle(2.0, 5);
    CHECK(chart.kind() == ChartKind::Rectangle);
    CHECK(chart.node_count() == 5);
    CHECK(chart.length() == doctest::Approx(2.0));
    CHECK(chart.node(0).t == doctest::Approx(-1.0));
    CHECK(chart.node(2).t == 0.0);
    CHECK(chart.node(4).t == doctest::Approx(1.0));
    for (const ChartNode& n : chart.nodes()) {
        CHECK((n.D - Mat2::Identity()).norm() == 0.0);
        CHECK(n.kappa == 0.0);
        CHECK(n.b.x() == doctest::Approx(n.t));
        CHECK(n.b.y() == 0.0);
        CHECK(n.natural.m11 == 0.0);
        CHECK(n.natural.m12 == 0.0);
        CHECK(n.natural.m22 == 0.0);
    }
    CHECK_THROWS_AS((void)ReferenceChart::rectangle(0.0, 5), InputError);
    CHECK_THROWS_AS((void)ReferenceChart::rectangle(1.0, 1), InputError);
}

TEST_CASE("arc chart rotates the axes with unit-speed centerline") {
    const double kappa0 = 1.2;
    const int n = 201;
    const auto chart = ReferenceChart::arc(2.0, kappa0, n);

    for (const ChartNode& node : chart.nodes()) {
        CHECK(node.kappa == kappa0);
        // Rotation matrices keep both axes orthonormal.
        CHECK((node.D.transpose() * node.D - Mat2::Identity()).norm() <= 1e-14);
        CHECK(node.D.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    }

    // The centerline is parametrized by arc length: |b'| = 1, checked by
    // central differences at interior nodes.
    const double h = chart.node(1).t - chart.node(0).t;
    for (int i = 1; i + 1 < n; ++i) {
        const Vec2 d = (chart.node(i + 1).b - chart.node(i - 1).b) / (2.0 * h);
        CHECK(std::abs(d.norm() - 1.0) <= 1e-4);
        // And the tangent column of D points along it.
        CHECK((d - chart.node(i).D.col(0)).norm() <= 1e-3);
    }

    CHECK_THROWS_AS((void)ReferenceChart::arc(7.0, 1.0, 11), InputError);
    CHECK_NOTHROW((void)ReferenceChart::arc(6.0, 1.0, 11));
}

TEST_CASE("sheared chart carries the oblique width direction") {
    const auto chart = ReferenceChart::sheared(1.0, 0.3, 1.2, 7);
    const ChartNode& n = chart.node(3);
    CHECK(n.D(0, 0) == 1.0);
    CHECK(n.D(0, 1) == 0.3);
    CHECK(n.D(1, 0) == 0.0);
    CHECK(n.D(1, 1) == 1.2);
    CHECK(n.kappa == 0.0);

    const Mat2 dual = contravariant(n.D);
    CHECK(dual(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dual(1, 0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(dual(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dual(1, 1) == doctest::Approx(1.0 / 1.2).epsilon(1e-15));

    CHECK_THROWS_AS((void)ReferenceChart::sheared(1.0, 0.3, 0.0, 7), InputError);
    CHECK_THROWS_AS((void)ReferenceChart::sheared(1.0, 0.3, -1.0, 7), InputError);
}

TEST_CASE("contravariant columns are dual to the chart columns") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int kept = 0;
    while (kept < 50) {
        Mat2 D;
        D << u(rng), u(rng), u(rng), u(rng);
        if (std::abs(D.determinant()) < 0.1) continue;
        ++kept;
        const Mat2 dual = contravariant(D);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double expected = (a == b) ? 1.0 : 0.0;
                CHECK(dual.col(a).dot(D.col(b)) == doctest::Approx(expected).epsilon(1e-12));
            }
    }

    Mat2 singular;
    singular << 1.0, 2.0, 0.5, 1.0;
    CHECK_THROWS_AS((void)contravariant(singular), InputError);
}

TEST_CASE("sampled chart recovers planar curvature from the tangents") {
    const double kappa0 = 1.2;
    const auto arc = ReferenceChart::arc(2.0, kappa0, 1001);

    std::vector<double> t;
    std::vector<Mat2> D;
    std::vector<SymMat2> natural;
    for (const ChartNode& n : arc.nodes()) {
        t.push_back(n.t);
        D.push_back(n.D);
        natural.push_back(n.natural);
    }

    const auto chart = ReferenceChart::sampled(t, D, natural);
    CHECK(chart.kind() == ChartKind::Sampled);
    for (const ChartNode& n : chart.nodes()) CHECK(std::abs(n.kappa - kappa0) <= 1e-4);

    // Supplied kappa is passed through untouched.
    std::vector<double> kap(t.size(), 0.25);
    const auto explicit_chart = ReferenceChart::sampled(t, D, natural, kap);
    for (const ChartNode& n : explicit_chart.nodes()) CHECK(n.kappa == 0.25);
}

TEST_CASE("sampled chart rejects malformed node data") {
    const std::vector<double> t{0.0, 0.5, 1.0};
    const std::vector<SymMat2> natural(3);
    std::vector<Mat2> good(3, Mat2::Identity());

    CHECK_NOTHROW((void)ReferenceChart::sampled(t, good, natural));
    CHECK_THROWS_AS((void)ReferenceChart::sampled({0.0}, {Mat2::Identity()}, {SymMat2{}}),
                    InputError);
    CHECK_THROWS_AS((void)ReferenceChart::sampled({0.0, 0.5}, good, natural), InputError);
    CHECK_THROWS_AS((void)ReferenceChart::sampled({0.0, 0.5, 0.5}, good, natural), InputError);

    auto long_tangent = good;
    long_tangent[1] << 2.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS((void)ReferenceChart::sampled(t, long_tangent, natural), InputError);

    auto reflected = good;
    reflected[2] << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS((void)ReferenceChart::sampled(t, reflected, natural), InputError);
}

TEST_CASE("natural curvature tables interpolate and clamp") {
    const auto zero = NaturalCurvature::zero();
    CHECK(zero.at(-3.0).m11 == 0.0);
    CHECK(zero.at(12.0).m22 == 0.0);

    const auto flat = NaturalCurvature::constant(SymMat2{1.0, -0.5, 2.0});
    for (double t : {-1.0, 0.0, 7.0}) {
        CHECK(flat.at(t).m11 == 1.0);
        CHECK(flat.at(t).m12 == -0.5);
        CHECK(flat.at(t).m22 == 2.0);
    }

    const auto ramp =
        NaturalCurvature::table({0.0, 1.0}, {SymMat2{0.0, 0.0, 0.0}, SymMat2{2.0, 1.0, -4.0}});
    CHECK(ramp.at(0.5).m11 == doctest::Approx(1.0));
    CHECK(ramp.at(0.5).m12 == doctest::Approx(0.5));
    CHECK(ramp.at(0.5).m22 == doctest::Approx(-2.0));
    CHECK(ramp.at(0.25).m11 == doctest::Approx(0.5));
    // Constant extension beyond the table.
    CHECK(ramp.at(-5.0).m11 == 0.0);
    CHECK(ramp.at(5.0).m11 == 2.0);

    CHECK_THROWS_AS((void)NaturalCurvature::table({0.0, 0.0}, {SymMat2{}, SymMat2{}}), InputError);
    CHECK_THROWS_AS((void)NaturalCurvature::table({0.0}, {SymMat2{}, SymMat2{}}), InputError);
    CHECK_THROWS_AS((void)NaturalCurvature::table({}, {}), InputError);
}

TEST_CASE("frame coefficients reduce to the profile for orthonormal charts") {
    const FrameCoefficients fc = frame_coefficients(Mat2::Identity(), 0.7, 2.0, 0.5);
    CHECK(fc.kappa == 0.7);
    CHECK(fc.mu == 2.0);
    CHECK(fc.tau == 0.5);
}

TEST_CASE("frame coefficients absorb the chart slant into the twist") {
    Mat2 D;
    D << 1.0, 0.3, 0.0, 1.2;
    // slant = D1 . D2 = 0.3, det = 1.2, so the twist rate is (tau - 0.3 mu)/1.2.
    const FrameCoefficients fc = frame_coefficients(D, 0.0, 2.0, 0.5);
    CHECK(fc.kappa == 0.0);
    CHECK(fc.mu == 2.0);
    CHECK(fc.tau == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));

    Mat2 bad;
    bad << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS((void)frame_coefficients(bad, 0.0, 1.0, 0.0), InputError);
}
