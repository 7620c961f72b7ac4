#pragma once

// Closed-form enumeration of the fixed points of W for symmetric parameters
// (L1 = L2 = L).
//
// Diagonal fixed points x = y solve the cubic (in u = sqrt(x))
//
//   2u^3 - sqrt(L) u^2 + (theta + 1) u - sqrt(L) = 0,
//
// which has one, two, or three positive roots depending on where L sits
// relative to the fold thresholds returned by fold_thresholds().  Any
// off-diagonal fixed point satisfies x*y = 1 and is generated by a root
// xi > 2 of
//
//   xi^2 - sqrt(L) xi + theta - 1 = 0
//
// via u = (xi + sqrt(xi^2 - 4)) / 2, x = u^2, y = 1/u^2.  xi == 2
// degenerates to the diagonal point (1, 1) and is credited to the
// diagonal count.
//
// All functions are pure and reentrant.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcfix/model.hpp"

namespace hcfix {

/// Internal consistency failure (residual or dedup violation); carries the
/// offending point.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, Point2 offending)
        : std::runtime_error(msg), offending_(offending) {}

    const Point2& offending() const { return offending_; }

private:
    Point2 offending_;
};

/// L-interval endpoints between which the diagonal map has three fixed
/// points (for theta > 17); on either endpoint it has two.
struct FoldThresholds {
    double lower = 0.0;  // L-hat-1
    double upper = 0.0;  // L-hat-2
};

/// Diagonal fixed points x_i = u_i^2, sorted ascending in x.
struct DiagonalRoots {
    std::vector<double> xs;         // 1 to 3 strictly positive values
    std::vector<double> us;         // matching cubic roots u = sqrt(x)
    std::vector<double> residuals;  // per root |f(x) - x|

    int count() const { return static_cast<int>(xs.size()); }
};

/// One symmetric off-diagonal pair {(x, y), (y, x)} with x > 1 > y = 1/x.
struct OffDiagPair {
    double x = 0.0;
    double y = 0.0;
    double xi = 0.0;  // the generating root of the xi-quadratic
};

struct OffDiagPairs {
    std::vector<OffDiagPair> pairs;  // 0, 1, or 2 pairs, descending xi

    int count_points() const { return 2 * static_cast<int>(pairs.size()); }
    std::vector<double> xis() const;
};

/// The complete fixed-point set of W at symmetric parameters.
struct FixedPointSet {
    DiagonalRoots diagonal;
    OffDiagPairs offdiag;

    int count_diagonal() const { return diagonal.count(); }
    int count_offdiag() const { return offdiag.count_points(); }
    int count_total() const { return count_diagonal() + count_offdiag(); }

    /// All points, diagonal ascending first, then each pair as (x, y), (y, x)
    /// in descending xi order.
    std::vector<Point2> all_points() const;
};

/// Roots of xi^2 - sqrt(L) xi + (theta - 1) = 0, descending; empty when
/// L < 4(theta - 1).  A double root is returned once with the flag set.
struct XiRoots {
    std::vector<double> roots;
    bool double_root = false;
};

/// Fold thresholds of the diagonal map; absent for theta <= 17 (the map
/// then has a unique fixed point for every L).
std::optional<FoldThresholds> fold_thresholds(double theta);

/// All positive roots of the diagonal cubic, fold-aware: within 1e-12
/// relative of a fold threshold the root count is decided by the threshold
/// comparison and the double root is placed at the cubic's critical point.
DiagonalRoots diagonal_fixed_points(double theta, double ell);

XiRoots xi_roots(double theta, double ell);

/// Off-diagonal pairs from the admissible (xi > 2) quadratic roots.
OffDiagPairs offdiag_fixed_points(double theta, double ell);

/// Enumerates and validates the full fixed-point set: every member must
/// pass the W-residual bound 1e-10 * (1 + |p|) and members must be
/// pairwise distinct beyond 1e-9.
FixedPointSet fix_w(double theta, double ell);

/// Lifts every fixed point of W to sequence space over lambda.  Requires
/// odd and even sums equal within 1e-9 relative; solves with L = odd sum.
/// Each lifted vector is residual-checked against apply_f_truncated.
std::vector<SpinVector> fix_f(const ActivityVector& lam, double theta);

/// Real-branch Cardano evaluation of the diagonal cubic.  Returns the
/// closed-form root when the inner radicand is nonnegative (the single
/// real-root regime); used only as a cross-check against the polished
/// numeric roots, never as the enumeration route.
std::optional<double> diagonal_cubic_cardano_root(double theta, double ell);

/// Comparison of the Cardano closed form against the enumerated roots on
/// a random parameter sample.  Disagreements are reported, not asserted.
struct CardanoCrossCheck {
    int tested = 0;         // samples with a usable (nonnegative) radicand
    int skipped = 0;        // samples with a negative radicand
    int agreements = 0;     // closed form within 1e-8 relative of a root
    int disagreements = 0;
    double worst_rel_error = 0.0;
    std::vector<std::string> disagreement_notes;
};

CardanoCrossCheck cardano_cross_check(int samples, unsigned seed = 20230901u);

/// Direct radical expressions for the four off-diagonal coordinates
/// x1..x4 quoted for this system.  Entries are absent where a radicand is
/// negative.  These forms are known to disagree with the xi-route on part
/// of the parameter space; audit_offdiag_radical_forms reports the
/// comparison instead of assuming either.
struct OffDiagRadicalForms {
    std::optional<double> x1, x2, x3, x4;
};

OffDiagRadicalForms offdiag_radical_forms(double theta, double ell);

/// Report comparing the xi-route pairs (residual-checked against W) with
/// the direct radical forms at the same parameters.
struct RadicalFormAudit {
    OffDiagPairs route;                     // the authoritative enumeration
    std::vector<double> route_residuals;    // sup residual of each pair under W
    OffDiagRadicalForms printed;
    std::vector<double> printed_residuals;  // sup residual of each defined printed pair
    bool agree = false;                     // every defined printed pair matches a route pair to 1e-8
    std::string verdict;                    // explicit "agreement"/"disagreement" text
};

RadicalFormAudit audit_offdiag_radical_forms(double theta, double ell);

}  // namespace hcfix
