#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hcfix/model.hpp"

using namespace hcfix;

TEST_CASE("apply_w: direct evaluations") {
    // theta=1, L=4: denominator 2, ratio 1/2, 4*(1/2)^2 = 1 exactly.
    const Point2 q = apply_w(ModelParams(1.0, 4.0), Point2(0.0, 0.0));
    CHECK(q.x == 1.0);
    CHECK(q.y == 1.0);
}

TEST_CASE("apply_w: diagonal inputs stay diagonal for symmetric params") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(0.0, 50.0);
    const ModelParams params(6.0, 90.0);
    for (int k = 0; k < 100; ++k) {
        const double z = d(rng);
        const Point2 q = apply_w(params, Point2(z, z));
        CHECK(q.x == q.y);  // identical computations, bitwise
    }
}

TEST_CASE("apply_w: the known off-diagonal fixed point at theta=6, L=90") {
    const Point2 p(77.673395244851477, 0.012874421117393916);
    const Point2 q = apply_w(ModelParams(6.0, 90.0), p);
    CHECK(std::abs(q.x - p.x) < 1e-6);
    CHECK(std::abs(q.y - p.y) < 1e-6);
}

TEST_CASE("apply_w: image lies strictly inside (0,L1) x (0,L2)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(0.0, 200.0);
    const ModelParams params(3.0, 7.0, 11.0);
    for (int k = 0; k < 200; ++k) {
        // includes boundary starts with a zero coordinate
        const Point2 p(k % 5 == 0 ? 0.0 : d(rng), k % 7 == 0 ? 0.0 : d(rng));
        const Point2 q = apply_w(params, p);
        CHECK(q.x > 0.0);
        CHECK(q.x < 7.0);
        CHECK(q.y > 0.0);
        CHECK(q.y < 11.0);
    }
}

TEST_CASE("apply_w: invalid inputs are rejected") {
    CHECK_THROWS_AS(Point2(std::nan(""), 0.0), std::domain_error);
    CHECK_THROWS_AS(Point2(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ModelParams(0.0, 4.0), std::domain_error);
    CHECK_THROWS_AS(ModelParams(1.0, -4.0), std::domain_error);
    CHECK_THROWS_AS(ModelParams(1.0, std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("apply_f_diag: theta=1 degeneracy, f == L/4 exactly") {
    CHECK(apply_f_diag(1.0, 40.0, 7.0) == 10.0);
    CHECK(apply_f_diag(1.0, 4.0, 1.0) == 1.0);  // fixed point
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dx(0.0, 1e6);
    std::uniform_real_distribution<double> dl(1e-3, 1e3);
    for (int k = 0; k < 500; ++k) {
        const double ell = dl(rng);
        CHECK(apply_f_diag(1.0, ell, dx(rng)) == ell / 4.0);
    }
}

TEST_CASE("apply_f_diag: fixed point at theta=6, L=90") {
    const double x = 17.450610967222239;
    CHECK(std::abs(apply_f_diag(6.0, 90.0, x) - x) < 1e-6);
}

TEST_CASE("apply_f_truncated: n=1 direct evaluation") {
    const ActivityVector lam(std::vector<double>{4.0, 4.0});
    const SpinVector x(std::vector<double>{1e-4, 1e-4});
    const SpinVector y = apply_f_truncated(lam, 1.0, x);
    const double r = 1.0001 / 2.0002;
    const double expected = 4.0 * r * r;
    CHECK(y.entries()[0] == doctest::Approx(expected).epsilon(1e-15));
    CHECK(y.entries()[1] == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("apply_f_truncated: contraction into the activity box") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(1e-6, 10.0);
    for (std::size_t dim : {2u, 8u, 64u}) {
        std::vector<double> lv(dim), xv(dim);
        for (auto& v : lv) v = d(rng);
        for (auto& v : xv) v = d(rng);
        const ActivityVector lam(lv);
        const SpinVector y = apply_f_truncated(lam, d(rng), SpinVector(xv));
        for (std::size_t k = 0; k < dim; ++k) {
            CHECK(y.entries()[k] < lam.entries()[k]);  // strict
        }
    }
}

TEST_CASE("apply_f_truncated: symmetric sums give symmetric images") {
    const ActivityVector lam(std::vector<double>{2.0, 1.0, 1.0, 2.0});  // equal odd/even sums
    const SpinVector x(std::vector<double>{0.4, 0.3, 0.2, 0.3});        // m1 == m2 == 0.6
    REQUIRE(x.m1() == x.m2());
    const SpinVector y = apply_f_truncated(lam, 2.5, x);
    CHECK(std::abs(y.m1() - y.m2()) <= 1e-12 * (1.0 + y.m1()));
}

TEST_CASE("apply_f_truncated: dimension mismatch rejected") {
    const ActivityVector lam(std::vector<double>{1.0, 2.0});
    const SpinVector x(std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(apply_f_truncated(lam, 1.0, x), std::invalid_argument);
}

TEST_CASE("reduce: partial sums") {
    const Point2 m = reduce(SpinVector(std::vector<double>{1.0, 2.0, 3.0, 4.0}));
    CHECK(m.x == 4.0);
    CHECK(m.y == 6.0);

    const std::size_t n = 6;
    const SpinVector allc(std::vector<double>(2 * n, 0.3));
    const Point2 mc = reduce(allc);
    CHECK(mc.x == doctest::Approx(n * 0.3).epsilon(1e-14));
    CHECK(mc.y == doctest::Approx(n * 0.3).epsilon(1e-14));
}

TEST_CASE("reduction commutes with one operator application") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(1e-8, 5.0);
    std::uniform_real_distribution<double> dtheta(0.1, 25.0);
    for (std::size_t dim : {2u, 8u, 64u, 200u}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> lv(dim), xv(dim);
            for (auto& v : lv) v = d(rng);
            for (auto& v : xv) v = d(rng);
            const ActivityVector lam(lv);
            const SpinVector x(xv);
            const double theta = dtheta(rng);

            const Point2 via_f = reduce(apply_f_truncated(lam, theta, x));
            const Point2 via_w = apply_w(params_from(lam, theta), reduce(x));
            const double tol = 1e-12 * (1.0 + std::max(via_w.x, via_w.y));
            CHECK(std::abs(via_f.x - via_w.x) <= tol);
            CHECK(std::abs(via_f.y - via_w.y) <= tol);
        }
    }
}

TEST_CASE("lift_point: single pair reproduces the point") {
    const ActivityVector lam(std::vector<double>{5.0, 7.0});
    const ModelParams params(2.0, 5.0, 7.0);
    const SpinVector v = lift_point(lam, params, Point2(3.25, 0.5));
    CHECK(v.entries()[0] == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(v.entries()[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("lift_point: diagonal point gives a constant-ratio vector") {
    const ActivityVector lam = ActivityVector::geometric(10, 1.0, 0.5);
    const ModelParams params = params_from(lam, 6.0);
    const double xs = 17.450610967222239;
    const SpinVector v = lift_point(lam, params, Point2(xs, xs));
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double expect =
            lam.entries()[k] * (k % 2 == 0 ? xs / params.ell1() : xs / params.ell2());
        CHECK(v.entries()[k] == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("lift_point: rejects non-positive points") {
    const ActivityVector lam(std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(lift_point(lam, ModelParams(1.0, 1.0), Point2(0.0, 1.0)),
                    std::domain_error);
}

TEST_CASE("sign identity: x' - y' factors through x - y") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(0.0, 40.0);
    std::uniform_real_distribution<double> dl(0.5, 150.0);
    std::uniform_real_distribution<double> dtheta(0.1, 25.0);
    for (int k = 0; k < 500; ++k) {
        const double theta = dtheta(rng);
        const double ell = dl(rng);
        const Point2 p(d(rng), d(rng));
        const Point2 q = apply_w(ModelParams(theta, ell), p);

        const double lhs = q.x - q.y;
        const double den = 1.0 + theta + p.x + p.y;
        const double rhs = ell * (p.x - p.y) * (2.0 + p.x + p.y) / (den * den);
        // sign preserved exactly
        if (p.x > p.y) CHECK(lhs >= 0.0);
        if (p.x < p.y) CHECK(lhs <= 0.0);
        if (p.x == p.y) CHECK(lhs == 0.0);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("ActivityVector: validation, geometric family, rescaling") {
    CHECK_THROWS_AS(ActivityVector(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ActivityVector(std::vector<double>{1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(ActivityVector::geometric(8, 1.0, 1.0), std::domain_error);

    const ActivityVector g = ActivityVector::geometric(6, 2.0, 0.5);
    CHECK(g.entries()[0] == doctest::Approx(1.0));         // 2 * 0.5
    CHECK(g.entries()[5] == doctest::Approx(2.0 / 64.0));  // 2 * 0.5^6
    CHECK(g.odd_sum() == doctest::Approx(1.0 + 0.25 + 0.0625));
    CHECK(g.even_sum() == doctest::Approx(0.5 + 0.125 + 0.03125));

    const ActivityVector r = g.rescaled(90.0, 90.0);
    CHECK(r.odd_sum() == doctest::Approx(90.0).epsilon(1e-14));
    CHECK(r.even_sum() == doctest::Approx(90.0).epsilon(1e-14));
}
