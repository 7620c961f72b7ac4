#pragma once

// Discrete dynamical systems generated by W and by the truncated sequence
// operator F: trajectory recording, convergence detection, and monitoring
// of the sign invariant.
//
// For symmetric parameters the half-planes {x < y}, {x = y}, {x > y} are
// each invariant under W, because
//
//   x' - y' = L (x - y)(2 + x + y) / (1 + theta + x + y)^2.
//
// In floating point the strict order can collapse to equality (the state
// is absorbed into the diagonal); that event is recorded, a sign flip
// would be a violation.

#include <cstddef>
#include <optional>
#include <vector>

#include "hcfix/model.hpp"

namespace hcfix {

enum class SignClass { Below, Diagonal, Above };  // x < y, x == y, x > y

enum class TrajectoryStatus { Converged, MaxItersReached, InvariantViolation };

SignClass sign_class_of(const Point2& p);
char sign_char(SignClass s);  // '-', '0', '+'

struct TrajectoryW {
    std::vector<Point2> points;  // includes the start
    TrajectoryStatus status = TrajectoryStatus::MaxItersReached;
    std::size_t steps = 0;
    std::optional<Point2> limit;
    std::optional<SignClass> sign_class;      // of the start; symmetric params only
    std::optional<std::size_t> absorbed_at;   // first step with x == y from an off-diagonal start
    std::optional<std::size_t> violation_at;
};

struct TrajectoryF {
    std::vector<SpinVector> points;
    TrajectoryStatus status = TrajectoryStatus::MaxItersReached;
    std::size_t steps = 0;
    std::optional<SpinVector> limit;
};

/// Iterates W from p0; converged when the sup-norm step is at most
/// tol * (1 + |p|).  The state is inside (0, L1) x (0, L2) from step 1 on.
TrajectoryW iterate_w(const ModelParams& params, const Point2& p0,
                      std::size_t max_iter = 100000, double tol = 1e-13);

/// Iterates the truncated F; same convergence rule in sup norm.
TrajectoryF iterate_f(const ActivityVector& lam, double theta, const SpinVector& x0,
                      std::size_t max_iter = 100000, double tol = 1e-13);

}  // namespace hcfix
