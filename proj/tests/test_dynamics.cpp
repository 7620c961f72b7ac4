#include <doctest.h>

#include <cmath>
#include <random>

#include "hcfix/dynamics.hpp"
#include "hcfix/solver.hpp"
#include "support/samplers.hpp"

using namespace hcfix;

TEST_CASE("iterate_w: convergence to the unique fixed point at theta=1, L=3") {
    const TrajectoryW tr = iterate_w(ModelParams(1.0, 3.0), Point2(3.0, 0.2));
    REQUIRE(tr.status == TrajectoryStatus::Converged);
    REQUIRE(tr.limit.has_value());
    CHECK(tr.limit->x == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(tr.limit->y == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(tr.sign_class == SignClass::Above);
}

TEST_CASE("iterate_w: theta=1, L=4 approaches (1,1) slowly") {
    // (1,4) lies on the pair-collapse curve: the transverse multiplier at
    // (1,1) is exactly 1 and the approach is algebraic, so the default
    // tolerance is not reachable in 1e5 steps.  The state still lands next
    // to (1,1) and keeps its sign class the whole way.
    const TrajectoryW tr = iterate_w(ModelParams(1.0, 4.0), Point2(3.0, 0.2));
    CHECK(tr.status == TrajectoryStatus::MaxItersReached);
    const Point2& f = tr.points.back();
    CHECK(std::abs(f.x - 1.0) < 1e-2);
    CHECK(std::abs(f.y - 1.0) < 1e-2);
    CHECK(tr.sign_class == SignClass::Above);
    CHECK_FALSE(tr.violation_at.has_value());

    const TrajectoryW loose = iterate_w(ModelParams(1.0, 4.0), Point2(3.0, 0.2), 100000, 1e-7);
    CHECK(loose.status == TrajectoryStatus::Converged);
    CHECK(std::abs(loose.limit->x - 1.0) < 2.5e-2);
}

TEST_CASE("iterate_w: diagonal starts stay exactly diagonal") {
    const TrajectoryW tr = iterate_w(ModelParams(6.0, 90.0), Point2(20.0, 20.0), 5000);
    CHECK(tr.sign_class == SignClass::Diagonal);
    for (const auto& p : tr.points) CHECK(p.x == p.y);
    REQUIRE(tr.status == TrajectoryStatus::Converged);
    CHECK(tr.limit->x == doctest::Approx(17.450610967222239).epsilon(1e-9));
}

TEST_CASE("iterate_w: iterates stay inside the open box from step 1") {
    const ModelParams params(2.0, 5.0, 9.0);
    const TrajectoryW tr = iterate_w(params, Point2(100.0, 0.0), 200);
    for (std::size_t k = 1; k < tr.points.size(); ++k) {
        CHECK(tr.points[k].x > 0.0);
        CHECK(tr.points[k].x < 5.0);
        CHECK(tr.points[k].y > 0.0);
        CHECK(tr.points[k].y < 9.0);
    }
}

TEST_CASE("iterate_w: sign class is preserved across regions") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> d(0.0, 30.0);
    int absorbed = 0;
    for (const RegionLabel& region : hcfix::testing::all_regions()) {
        const auto samples = hcfix::testing::sample_region(region, 2, 500u);
        for (const auto& s : samples) {
            const ModelParams params(s.theta, s.ell);
            for (int rep = 0; rep < 6; ++rep) {
                double x0 = d(rng), y0 = d(rng);
                if (rep % 3 == 0) y0 = x0;  // diagonal class
                const TrajectoryW tr = iterate_w(params, Point2(x0, y0), 500, 1e-30);
                CHECK_FALSE(tr.violation_at.has_value());
                CHECK(tr.status != TrajectoryStatus::InvariantViolation);
                if (tr.absorbed_at) ++absorbed;
                const SignClass s0 = *tr.sign_class;
                for (std::size_t k = 0; k < tr.points.size(); ++k) {
                    const SignClass sk = sign_class_of(tr.points[k]);
                    if (s0 == SignClass::Diagonal) {
                        CHECK(sk == SignClass::Diagonal);
                    } else if (!tr.absorbed_at || k < *tr.absorbed_at) {
                        CHECK(sk == s0);
                    }
                }
            }
        }
    }
    MESSAGE("diagonal absorption events: " << absorbed);
}

TEST_CASE("iterate_w: converged limits land on enumerated fixed points") {
    std::mt19937 rng(89);
    std::uniform_real_distribution<double> d(0.0, 40.0);
    const double tol = 1e-13;
    for (auto [theta, ell] : {std::pair{6.0, 90.0}, {20.0, 59.0}, {19.0, 126.0}}) {
        const auto pts = fix_w(theta, ell).all_points();
        const ModelParams params(theta, ell);
        for (int rep = 0; rep < 10; ++rep) {
            const TrajectoryW tr = iterate_w(params, Point2(d(rng), d(rng)), 100000, tol);
            if (tr.status != TrajectoryStatus::Converged) continue;
            double best = 1e300;
            for (const auto& p : pts) {
                best = std::min(best, std::max(std::abs(p.x - tr.limit->x),
                                               std::abs(p.y - tr.limit->y)));
            }
            CHECK(best <= 10.0 * tol * (1.0 + std::max(tr.limit->x, tr.limit->y)) + 1e-9);
        }
    }
}

TEST_CASE("iterate_f: n=1 matches the two-dimensional iteration") {
    const ActivityVector lam(std::vector<double>{4.0, 4.0});
    const SpinVector x0(std::vector<double>{3.0, 0.2});
    const TrajectoryF tf = iterate_f(lam, 1.0, x0, 100000, 1e-7);
    REQUIRE(tf.status == TrajectoryStatus::Converged);
    CHECK(std::abs(tf.limit->entries()[0] - 1.0) < 2.5e-2);
    CHECK(std::abs(tf.limit->entries()[1] - 1.0) < 2.5e-2);

    const TrajectoryW tw =
        iterate_w(ModelParams(1.0, 4.0), Point2(3.0, 0.2), 100000, 1e-7);
    REQUIRE(tw.points.size() == tf.points.size());
    for (std::size_t k = 0; k < tf.points.size(); ++k) {
        // n=1: the sequence state equals the reduced state
        CHECK(tf.points[k].entries()[0] == doctest::Approx(tw.points[k].x).epsilon(1e-14));
        CHECK(tf.points[k].entries()[1] == doctest::Approx(tw.points[k].y).epsilon(1e-14));
    }
}

TEST_CASE("iterate_f: stepwise reduction matches the parallel 2D trajectory") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> d(1e-4, 2.0);
    const ActivityVector lam = ActivityVector::geometric(64, 1.0, 0.5);
    const ModelParams params = params_from(lam, 6.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xv(64);
        for (auto& v : xv) v = d(rng);
        const SpinVector x0(xv);
        const TrajectoryF tf = iterate_f(lam, 6.0, x0, 100, 1e-30);
        Point2 m = reduce(x0);
        for (std::size_t k = 1; k < tf.points.size(); ++k) {
            m = apply_w(params, m);
            const Point2 r = reduce(tf.points[k]);
            const double tol = 1e-12 * (1.0 + std::max(m.x, m.y));
            CHECK(std::abs(r.x - m.x) <= tol);
            CHECK(std::abs(r.y - m.y) <= tol);
        }
    }
}

TEST_CASE("iterate_f: limits are proportional to the activity entries") {
    const ActivityVector lam = ActivityVector::geometric(16, 1.0, 0.5).rescaled(90.0, 90.0);
    std::vector<double> xv(16, 0.5);
    xv[0] = 40.0;  // make M1 > M2
    const TrajectoryF tr = iterate_f(lam, 6.0, SpinVector(xv), 100000, 1e-13);
    REQUIRE(tr.status == TrajectoryStatus::Converged);
    const SpinVector& v = *tr.limit;
    const double odd_ratio = v.entries()[0] / lam.entries()[0];
    const double even_ratio = v.entries()[1] / lam.entries()[1];
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double expect = k % 2 == 0 ? odd_ratio : even_ratio;
        CHECK(v.entries()[k] / lam.entries()[k] == doctest::Approx(expect).epsilon(1e-10));
    }
    // ... and the limit is the lift of the corresponding 2D fixed point.
    const SpinVector lifted =
        lift_point(lam, params_from(lam, 6.0), Point2(v.m1(), v.m2()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        CHECK(v.entries()[k] == doctest::Approx(lifted.entries()[k]).epsilon(1e-9));
    }
}

TEST_CASE("iterate: argument validation and max-iter status") {
    CHECK_THROWS_AS(iterate_w(ModelParams(1.0, 3.0), Point2(1.0, 1.0), 0, 1e-13),
                    std::invalid_argument);
    CHECK_THROWS_AS(iterate_w(ModelParams(1.0, 3.0), Point2(1.0, 1.0), 10, -1.0),
                    std::domain_error);
    const TrajectoryW tr = iterate_w(ModelParams(6.0, 90.0), Point2(1.0, 2.0), 3, 1e-30);
    CHECK(tr.status == TrajectoryStatus::MaxItersReached);
    CHECK(tr.steps == 3);
    CHECK(tr.points.size() == 4);
}
