#include "hcfix/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hcfix {

namespace {

void check_iteration_args(std::size_t max_iter, double tol) {
    if (max_iter == 0) throw std::invalid_argument("iterate: max_iter must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw std::domain_error("iterate: tol must be finite and > 0");
    }
}

}  // namespace

SignClass sign_class_of(const Point2& p) {
    if (p.x < p.y) return SignClass::Below;
    if (p.x > p.y) return SignClass::Above;
    return SignClass::Diagonal;
}

char sign_char(SignClass s) {
    switch (s) {
        case SignClass::Below: return '-';
        case SignClass::Above: return '+';
        case SignClass::Diagonal: return '0';
    }
    return '?';
}

TrajectoryW iterate_w(const ModelParams& params, const Point2& p0, std::size_t max_iter,
                      double tol) {
    check_iteration_args(max_iter, tol);
    TrajectoryW tr;
    tr.points.push_back(p0);
    const bool track_sign = params.symmetric();
    if (track_sign) tr.sign_class = sign_class_of(p0);

    Point2 p = p0;
    for (std::size_t step = 1; step <= max_iter; ++step) {
        const Point2 q = apply_w(params, p);
        tr.points.push_back(q);
        tr.steps = step;

        if (track_sign) {
            const SignClass s = sign_class_of(q);
            if (s != *tr.sign_class) {
                if (s == SignClass::Diagonal) {
                    // Rounding collapsed the strict order; record once.
                    if (!tr.absorbed_at) tr.absorbed_at = step;
                } else if (*tr.sign_class != SignClass::Diagonal && !tr.absorbed_at) {
                    tr.status = TrajectoryStatus::InvariantViolation;
                    tr.violation_at = step;
                    return tr;
                }
            }
        }

        const double step_norm = std::max(std::abs(q.x - p.x), std::abs(q.y - p.y));
        const double state_norm = std::max(q.x, q.y);
        p = q;
        if (step_norm <= tol * (1.0 + state_norm)) {
            tr.status = TrajectoryStatus::Converged;
            tr.limit = q;
            return tr;
        }
    }
    tr.status = TrajectoryStatus::MaxItersReached;
    return tr;
}

TrajectoryF iterate_f(const ActivityVector& lam, double theta, const SpinVector& x0,
                      std::size_t max_iter, double tol) {
    check_iteration_args(max_iter, tol);
    if (lam.size() != x0.size()) {
        throw std::invalid_argument("iterate_f: lambda and state dimensions differ");
    }
    TrajectoryF tr;
    tr.points.push_back(x0);

    SpinVector x = x0;
    for (std::size_t step = 1; step <= max_iter; ++step) {
        SpinVector y = apply_f_truncated(lam, theta, x);
        double step_norm = 0.0;
        double state_norm = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            step_norm = std::max(step_norm, std::abs(y.entries()[k] - x.entries()[k]));
            state_norm = std::max(state_norm, y.entries()[k]);
        }
        tr.points.push_back(y);
        tr.steps = step;
        x = std::move(y);
        if (step_norm <= tol * (1.0 + state_norm)) {
            tr.status = TrajectoryStatus::Converged;
            tr.limit = x;
            return tr;
        }
    }
    tr.status = TrajectoryStatus::MaxItersReached;
    return tr;
}

}  // namespace hcfix
