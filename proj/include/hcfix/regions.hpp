#pragma once

// Seven-region classification of the symmetric parameter plane (theta, L)
// by fixed-point counts (i, j): i diagonal points, j off-diagonal points.
//
// The partition is bounded by four curves:
//
//   L = 4(theta - 1)        the xi-quadratic's double-root locus
//   L = (theta + 3)^2 / 4   where the smaller xi root equals 2
//   L = fold_lower(theta)   lower fold of the diagonal map   (theta > 17)
//   L = fold_upper(theta)   upper fold of the diagonal map   (theta > 17)
//
// fold_lower is tangent to (theta+3)^2/4 at theta = 9 + 8*sqrt(2).
//
// classify_formula applies the published inequalities verbatim (equality
// sets tested within a relative tolerance) and returns nothing on the
// boundary slivers those inequalities leave uncovered; classify_computed
// derives (i, j) from the solver and is always defined.

#include <optional>
#include <string>
#include <vector>

#include "hcfix/solver.hpp"

namespace hcfix {

enum class BoundaryTag {
    XiDoubleRoot,  // L = 4(theta - 1)
    XiAtTwo,       // L = (theta + 3)^2 / 4
    FoldLower,     // L = fold_lower(theta)
    FoldUpper,     // L = fold_upper(theta)
};

std::string to_string(BoundaryTag tag);

struct RegionLabel {
    int diag_count = 0;     // i in {1, 2, 3}
    int offdiag_count = 0;  // j in {0, 2, 4}
    std::vector<BoundaryTag> on_boundary;

    /// "A1,0", "A3,4", ...
    std::string name() const;
};

/// The theta where fold_lower meets (theta+3)^2/4: 9 + 8*sqrt(2).
double theta_star();

/// L = 4(theta - 1).
double xi_double_root_curve(double theta);

/// L = (theta + 3)^2 / 4.
double xi_at_two_curve(double theta);

/// Classification by the published inequalities.  Equalities are tested
/// within rel_tol (measure-zero sets are undecidable exactly in floating
/// point).  Returns nullopt on the uncovered boundary slivers, e.g.
/// L = (theta+3)^2/4 with 5 < theta <= 17.
std::optional<RegionLabel> classify_formula(double theta, double ell, double rel_tol = 1e-12);

/// Classification by computed fixed-point counts; always assigned.
RegionLabel classify_computed(double theta, double ell);

/// One row of the boundary-curve table.
struct BoundaryRow {
    double theta = 0.0;
    double xi_double_root = 0.0;  // 4(theta-1); may be <= 0 for theta <= 1
    double xi_at_two = 0.0;       // (theta+3)^2/4
    std::optional<double> fold_lower;
    std::optional<double> fold_upper;
};

/// Samples all boundary curves on a uniform theta grid (inclusive ends).
std::vector<BoundaryRow> boundary_curves(double theta_lo, double theta_hi, std::size_t samples);

}  // namespace hcfix
