#include "hcfix/regions.hpp"

#include <cmath>
#include <stdexcept>

namespace hcfix {

namespace {

// |L - c| <= tol * max(1, c); with tol = 0 this is exact equality.
bool near(double ell, double curve, double tol) {
    return std::abs(ell - curve) <= tol * std::max(1.0, curve);
}

std::vector<BoundaryTag> boundary_tags(double theta, double ell, double tol) {
    std::vector<BoundaryTag> tags;
    const double c1 = xi_double_root_curve(theta);
    if (c1 > 0.0 && near(ell, c1, tol)) tags.push_back(BoundaryTag::XiDoubleRoot);
    if (near(ell, xi_at_two_curve(theta), tol)) tags.push_back(BoundaryTag::XiAtTwo);
    if (const auto folds = fold_thresholds(theta)) {
        if (near(ell, folds->lower, tol)) tags.push_back(BoundaryTag::FoldLower);
        if (near(ell, folds->upper, tol)) tags.push_back(BoundaryTag::FoldUpper);
    }
    return tags;
}

RegionLabel make_label(int i, int j, double theta, double ell, double tol) {
    RegionLabel lbl{i, j, boundary_tags(theta, ell, tol)};
    const bool valid = (j == 0 && i == 1) || (j == 2 && (i == 1 || i == 2 || i == 3)) ||
                       (j == 4 && (i == 1 || i == 2 || i == 3));
    if (!valid) {
        throw SolverError("RegionLabel: counts outside the admissible set", Point2(theta, ell));
    }
    return lbl;
}

void check_inputs(double theta, double ell) {
    if (!std::isfinite(theta) || theta <= 0.0 || !std::isfinite(ell) || ell <= 0.0) {
        throw std::domain_error("regions: theta and L must be finite and > 0");
    }
}

}  // namespace

std::string to_string(BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::XiDoubleRoot: return "L=4(theta-1)";
        case BoundaryTag::XiAtTwo: return "L=(theta+3)^2/4";
        case BoundaryTag::FoldLower: return "L=fold_lower(theta)";
        case BoundaryTag::FoldUpper: return "L=fold_upper(theta)";
    }
    return "?";
}

std::string RegionLabel::name() const {
    return "A" + std::to_string(diag_count) + "," + std::to_string(offdiag_count);
}

double theta_star() { return 9.0 + 8.0 * std::sqrt(2.0); }

double xi_double_root_curve(double theta) { return 4.0 * (theta - 1.0); }

double xi_at_two_curve(double theta) {
    const double t = theta + 3.0;
    return t * t / 4.0;
}

std::optional<RegionLabel> classify_formula(double theta, double ell, double rel_tol) {
    check_inputs(theta, ell);
    if (!(rel_tol >= 0.0)) {
        throw std::domain_error("classify_formula: rel_tol must be >= 0");
    }

    const double c1 = xi_double_root_curve(theta);
    const double c2 = xi_at_two_curve(theta);
    const double ts = theta_star();

    if (theta <= 5.0) {
        // Single region boundary: the unique-solution set includes L <= c2.
        if (ell <= c2 || near(ell, c2, rel_tol)) return make_label(1, 0, theta, ell, rel_tol);
        return make_label(1, 2, theta, ell, rel_tol);
    }

    if (theta <= 17.0) {
        if (near(ell, c1, rel_tol)) return make_label(1, 2, theta, ell, rel_tol);
        if (near(ell, c2, rel_tol)) return std::nullopt;  // boundary left uncovered
        if (ell < c1) return make_label(1, 0, theta, ell, rel_tol);
        if (ell < c2) return make_label(1, 4, theta, ell, rel_tol);
        return make_label(1, 2, theta, ell, rel_tol);
    }

    const FoldThresholds folds = *fold_thresholds(theta);

    if (theta <= ts) {
        // Curve order: c1 < c2 <= fold_lower < fold_upper (tangency at ts).
        if (theta < ts && near(ell, folds.lower, rel_tol)) {
            return make_label(2, 2, theta, ell, rel_tol);
        }
        if (near(ell, folds.upper, rel_tol)) return make_label(2, 2, theta, ell, rel_tol);
        if (near(ell, c1, rel_tol)) return make_label(1, 2, theta, ell, rel_tol);
        if (theta < ts && near(ell, c2, rel_tol)) {
            return make_label(1, 2, theta, ell, rel_tol);  // inclusive edge of the c2..fold band
        }
        if (ell < c1) return make_label(1, 0, theta, ell, rel_tol);
        if (ell < c2) return make_label(1, 4, theta, ell, rel_tol);
        if (ell < folds.lower) return make_label(1, 2, theta, ell, rel_tol);
        if (ell < folds.upper) return make_label(3, 2, theta, ell, rel_tol);
        return make_label(1, 2, theta, ell, rel_tol);
    }

    // theta > theta_star: curve order c1 < fold_lower < c2 < fold_upper.
    if (near(ell, folds.lower, rel_tol)) return make_label(2, 4, theta, ell, rel_tol);
    if (near(ell, folds.upper, rel_tol)) return make_label(2, 2, theta, ell, rel_tol);
    if (near(ell, c1, rel_tol)) return make_label(1, 2, theta, ell, rel_tol);
    if (near(ell, c2, rel_tol)) return std::nullopt;  // boundary left uncovered
    if (ell < c1) return make_label(1, 0, theta, ell, rel_tol);
    if (ell < folds.lower) return make_label(1, 4, theta, ell, rel_tol);
    if (ell < c2) return make_label(3, 4, theta, ell, rel_tol);
    if (ell < folds.upper) return make_label(3, 2, theta, ell, rel_tol);
    return make_label(1, 2, theta, ell, rel_tol);
}

RegionLabel classify_computed(double theta, double ell) {
    check_inputs(theta, ell);
    const FixedPointSet set = fix_w(theta, ell);
    return make_label(set.count_diagonal(), set.count_offdiag(), theta, ell, 1e-12);
}

std::vector<BoundaryRow> boundary_curves(double theta_lo, double theta_hi, std::size_t samples) {
    if (!std::isfinite(theta_lo) || !std::isfinite(theta_hi) || theta_lo <= 0.0 ||
        theta_hi <= theta_lo) {
        throw std::domain_error("boundary_curves: need 0 < theta_lo < theta_hi");
    }
    if (samples < 2) {
        throw std::invalid_argument("boundary_curves: samples must be >= 2");
    }
    std::vector<BoundaryRow> rows;
    rows.reserve(samples);
    const double step = (theta_hi - theta_lo) / static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta = k + 1 == samples ? theta_hi : theta_lo + step * static_cast<double>(k);
        BoundaryRow row;
        row.theta = theta;
        row.xi_double_root = xi_double_root_curve(theta);
        row.xi_at_two = xi_at_two_curve(theta);
        if (const auto folds = fold_thresholds(theta)) {
            row.fold_lower = folds->lower;
            row.fold_upper = folds->upper;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hcfix
