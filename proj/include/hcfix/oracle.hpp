#pragma once

// Structure-blind numerical ground truth for the fixed points of W.
//
// oracle_fix_w seeds candidate cells from the residual field of W - id on
// a hybrid linear + logarithmic grid over (0, L]^2 (off-diagonal fixed
// points have one coordinate near zero), refines each seed with a damped
// two-dimensional Newton iteration, and deduplicates.  Seeds whose
// Jacobian turns out nearly singular (fold points, where two fixed points
// coalesce) get an extra tangency refinement so they are located to full
// precision rather than to the square root of the residual tolerance.
//
// Deliberately ignorant of the diagonal / product structure the solver
// exploits; that independence is its entire value.
//
// Known limitation: at (theta, L) = (5, 16), where four solutions coalesce
// at (1, 1) to quartic order, the set that satisfies the fixed-point
// equation to any floating-point tolerance is a curved arc of width ~1e-3
// and the oracle reports an indistinguishable cluster instead of one
// point.  The closed-form solver is exact there.

#include <vector>

#include "hcfix/model.hpp"

namespace hcfix {

struct OracleConfig {
    int grid_n = 400;          // seed-grid resolution per axis (>= 16)
    double refine_tol = 1e-12; // Newton stop: residual <= refine_tol * (1 + |p|)
    double dedup_tol = 1e-7;   // sup-norm merge distance
};

/// All solutions of W(p) = p in (0, L]^2, sorted by (x, y).
/// Throws SolverError if no point is found (at least one always exists).
std::vector<Point2> oracle_fix_w(double theta, double ell, const OracleConfig& cfg = {});

/// All real roots of c3 u^3 + c2 u^2 + c1 u + c0 in (lo, hi), found by a
/// dense sign scan plus bisection; double roots (sign-preserving tangencies
/// at a critical point) are detected separately and reported once.
std::vector<double> oracle_cubic_roots(double c3, double c2, double c1, double c0,
                                       double lo, double hi);

}  // namespace hcfix
