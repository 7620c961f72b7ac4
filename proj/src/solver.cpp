#include "hcfix/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace hcfix {

namespace {

constexpr double kFoldBandRelTol = 1e-12;   // on-threshold decision band
constexpr double kResidualRel = 1e-10;      // fixed-point residual bound
constexpr double kDedupAbsTol = 1e-9;       // distinctness floor

void check_params(double theta, double ell, const char* what) {
    if (!std::isfinite(theta) || theta <= 0.0 || !std::isfinite(ell) || ell <= 0.0) {
        throw std::domain_error(std::string(what) + ": theta and L must be finite and > 0");
    }
}

// The diagonal cubic p(u) = 2u^3 - s*u^2 + (theta+1)*u - s, s = sqrt(L).
struct DiagCubic {
    double s;
    double theta;

    double operator()(double u) const { return ((2.0 * u - s) * u + (theta + 1.0)) * u - s; }
    double deriv(double u) const { return (6.0 * u - 2.0 * s) * u + (theta + 1.0); }
    double deriv2(double u) const { return 12.0 * u - 2.0 * s; }
};

// Bisection on a bracket with f(lo)*f(hi) <= 0, then Newton polish.
// The bracket must come from monotone root isolation.
double bisect_polish(const DiagCubic& p, double lo, double hi) {
    double flo = p(lo);
    double fhi = p(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw SolverError("diagonal cubic: invalid bracket", Point2(lo, hi));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    // Newton polish; quadratic convergence at simple roots.
    double u = 0.5 * (lo + hi);
    double best = u;
    double best_abs = std::abs(p(u));
    for (int it = 0; it < 40; ++it) {
        const double d = p.deriv(u);
        if (d == 0.0) break;
        const double step = p(u) / d;
        u -= step;
        if (!(u > 0.0) || !std::isfinite(u)) { u = best; break; }
        const double a = std::abs(p(u));
        if (a < best_abs) {
            best = u;
            best_abs = a;
        }
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(u))) break;
    }
    return best;
}

// Critical points of the cubic (roots of p'), ascending; stable forms.
std::optional<std::pair<double, double>> critical_points(const DiagCubic& p) {
    const double cdisc = p.s * p.s - 6.0 * (p.theta + 1.0);
    if (cdisc <= 0.0) return std::nullopt;
    const double ub = (p.s + std::sqrt(cdisc)) / 6.0;
    const double ua = (p.theta + 1.0) / (6.0 * ub);  // product of p' roots
    return std::make_pair(ua, ub);
}

// Polishes a double root of p, i.e. a simple root of p', by Newton on p'.
double polish_critical(const DiagCubic& p, double u) {
    for (int it = 0; it < 8; ++it) {
        const double d2 = p.deriv2(u);
        if (d2 == 0.0) break;
        const double step = p.deriv(u) / d2;
        u -= step;
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(u))) break;
    }
    return u;
}

// Palindromic quartic h(u) = u^4 - s u^3 + (theta+1) u^2 - s u + 1 whose
// roots u > 1 generate the off-diagonal pairs; used to polish u.
double polish_offdiag_u(double u, double s, double theta) {
    const double b = theta + 1.0;
    auto h = [&](double v) { return (((v - s) * v + b) * v - s) * v + 1.0; };
    auto dh = [&](double v) { return ((4.0 * v - 3.0 * s) * v + 2.0 * b) * v - s; };
    double best = u;
    double best_abs = std::abs(h(u));
    for (int it = 0; it < 20; ++it) {
        const double d = dh(u);
        if (d == 0.0) break;
        const double step = h(u) / d;
        u -= step;
        if (!(u > 1.0) || !std::isfinite(u)) return best;
        const double a = std::abs(h(u));
        if (a < best_abs) {
            best = u;
            best_abs = a;
        }
        if (std::abs(step) <= 1e-17 * (1.0 + u)) break;
    }
    return best;
}

double sup_dist(const Point2& a, const Point2& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

double w_residual_sup(const ModelParams& params, const Point2& p) {
    const Point2 q = apply_w(params, p);
    return sup_dist(q, p);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> OffDiagPairs::xis() const {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.xi);
    return out;
}

std::vector<Point2> FixedPointSet::all_points() const {
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(count_total()));
    for (double x : diagonal.xs) out.emplace_back(x, x);
    for (const auto& pr : offdiag.pairs) {
        out.emplace_back(pr.x, pr.y);
        out.emplace_back(pr.y, pr.x);
    }
    return out;
}

std::optional<FoldThresholds> fold_thresholds(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("fold_thresholds: theta must be finite and > 0");
    }
    if (theta <= 17.0) return std::nullopt;
    // Discriminant factored as (theta-1)(theta-17); exact for the integer
    // cases that matter (e.g. theta = 19 gives sqrt(36) = 6).
    const double disc = std::sqrt((theta - 1.0) * (theta - 17.0));
    const double base = 2.0 * theta * theta + 76.0 * theta - 142.0;
    const double spread = (2.0 * theta - 34.0) * disc;
    return FoldThresholds{(base - spread) / 16.0, (base + spread) / 16.0};
}

DiagonalRoots diagonal_fixed_points(double theta, double ell) {
    check_params(theta, ell, "diagonal_fixed_points");

    DiagonalRoots out;
    if (theta == 1.0) {
        // f is the constant L/4: the unique fixed point, exactly.
        const double x = ell / 4.0;
        out.xs = {x};
        out.us = {std::sqrt(x)};
        out.residuals = {std::abs(apply_f_diag(theta, ell, x) - x)};
        return out;
    }

    const double s = std::sqrt(ell);
    const DiagCubic p{s, theta};

    // Root count from the fold thresholds; near a threshold (1e-12
    // relative) the comparison, not numeric root separation, decides.
    int expect = 1;
    int on_fold = 0;  // 1 = lower threshold, 2 = upper
    const auto folds = fold_thresholds(theta);
    if (folds) {
        if (std::abs(ell - folds->lower) <= kFoldBandRelTol * folds->lower) {
            expect = 2;
            on_fold = 1;
        } else if (std::abs(ell - folds->upper) <= kFoldBandRelTol * folds->upper) {
            expect = 2;
            on_fold = 2;
        } else if (ell > folds->lower && ell < folds->upper) {
            expect = 3;
        }
    }

    // Every root satisfies u < sqrt(L): p(sqrt(L)) = sqrt(L)(L + theta) > 0.
    const double hi = s;
    const auto crit = critical_points(p);
    std::vector<double> us;

    if (expect == 3) {
        if (!crit) {
            throw SolverError("diagonal_fixed_points: three roots expected but cubic is monotone",
                              Point2(theta, ell));
        }
        const auto [ua, ub] = *crit;
        us = {bisect_polish(p, 0.0, ua), bisect_polish(p, ua, ub), bisect_polish(p, ub, hi)};
    } else if (expect == 2) {
        if (!crit) {
            throw SolverError("diagonal_fixed_points: fold expected but cubic is monotone",
                              Point2(theta, ell));
        }
        const auto [ua, ub] = *crit;
        // Tangency sits at the local minimum on the lower threshold and at
        // the local maximum on the upper one; the simple root is on the
        // other side.
        if (on_fold == 1) {
            us = {bisect_polish(p, 0.0, ua), polish_critical(p, ub)};
        } else {
            us = {polish_critical(p, ua), bisect_polish(p, ub, hi)};
        }
    } else {
        if (!crit) {
            us = {bisect_polish(p, 0.0, hi)};
        } else {
            const auto [ua, ub] = *crit;
            const double pa = p(ua);
            const double pb = p(ub);
            if (pa > 0.0 && pb > 0.0) {
                us = {bisect_polish(p, 0.0, ua)};
            } else if (pa < 0.0) {
                us = {bisect_polish(p, ub, hi)};
            } else {
                // Fence case just outside the threshold band: keep the root
                // that persists on this side of the fold.
                const bool below = !folds || ell <= folds->lower;
                us = {below ? bisect_polish(p, 0.0, ua) : bisect_polish(p, ub, hi)};
            }
        }
    }

    std::sort(us.begin(), us.end());
    for (double u : us) {
        const double x = u * u;
        out.us.push_back(u);
        out.xs.push_back(x);
        out.residuals.push_back(std::abs(apply_f_diag(theta, ell, x) - x));
    }
    return out;
}

XiRoots xi_roots(double theta, double ell) {
    check_params(theta, ell, "xi_roots");
    const double s = std::sqrt(ell);
    const double disc = ell - 4.0 * (theta - 1.0);
    if (disc < 0.0) return {};
    const double q = std::sqrt(disc);
    const double xi1 = 0.5 * (s + q);
    // Larger-root-first quadratic evaluation; the product form avoids
    // cancellation in xi2 when theta > 1.
    const double xi2 = theta > 1.0 ? (theta - 1.0) / xi1 : 0.5 * (s - q);
    if (xi1 - xi2 <= 1e-14 * (1.0 + xi1)) {
        return {{xi1}, true};
    }
    return {{xi1, xi2}, false};
}

OffDiagPairs offdiag_fixed_points(double theta, double ell) {
    const XiRoots xr = xi_roots(theta, ell);
    const double s = std::sqrt(ell);
    OffDiagPairs out;
    for (double xi : xr.roots) {
        if (!(xi > 2.0)) continue;  // xi == 2 collapses onto the diagonal point (1, 1)
        double u = 0.5 * (xi + std::sqrt(xi * xi - 4.0));
        u = polish_offdiag_u(u, s, theta);
        const double x = u * u;
        out.pairs.push_back({x, 1.0 / x, xi});
    }
    return out;
}

FixedPointSet fix_w(double theta, double ell) {
    check_params(theta, ell, "fix_w");
    FixedPointSet set{diagonal_fixed_points(theta, ell), offdiag_fixed_points(theta, ell)};

    const int i = set.count_diagonal();
    const int j = set.count_offdiag();
    if (i < 1 || i > 3 || j < 0 || j > 4 || j % 2 != 0) {
        throw SolverError("fix_w: impossible fixed-point counts", Point2(theta, ell));
    }

    const ModelParams params(theta, ell);
    const auto points = set.all_points();
    for (const auto& p : points) {
        const double res = w_residual_sup(params, p);
        const double norm = std::max(p.x, p.y);
        if (!(res <= kResidualRel * (1.0 + norm))) {
            throw SolverError("fix_w: residual bound violated at (" + fmt17(p.x) + ", " +
                                  fmt17(p.y) + "), residual " + fmt17(res),
                              p);
        }
    }
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            if (sup_dist(points[a], points[b]) <= kDedupAbsTol) {
                throw SolverError("fix_w: duplicate fixed points", points[a]);
            }
        }
    }
    return set;
}

std::vector<SpinVector> fix_f(const ActivityVector& lam, double theta) {
    const double l1 = lam.odd_sum();
    const double l2 = lam.even_sum();
    if (std::abs(l1 - l2) > 1e-9 * std::max(l1, l2)) {
        throw std::invalid_argument(
            "fix_f: unsupported configuration, odd and even activity sums must be equal "
            "within 1e-9 relative (got " + fmt17(l1) + " and " + fmt17(l2) + ")");
    }
    const ModelParams params = params_from(lam, theta);
    const FixedPointSet set = fix_w(theta, l1);

    std::vector<SpinVector> out;
    for (const Point2& p : set.all_points()) {
        SpinVector v = lift_point(lam, params, p);
        const SpinVector fv = apply_f_truncated(lam, theta, v);
        double res = 0.0;
        double norm = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            res = std::max(res, std::abs(fv.entries()[k] - v.entries()[k]));
            norm = std::max(norm, v.entries()[k]);
        }
        if (!(res <= kResidualRel * (1.0 + norm))) {
            throw SolverError("fix_f: lifted vector fails the residual bound", p);
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<double> diagonal_cubic_cardano_root(double theta, double ell) {
    check_params(theta, ell, "diagonal_cubic_cardano_root");
    const double s = std::sqrt(ell);
    const double t2 = theta * theta;
    const double rad = 216.0 + 648.0 * theta + 648.0 * t2 + 216.0 * t2 * theta +
                       (1917.0 - 1026.0 * theta - 27.0 * t2 + 108.0 * ell) * ell;
    if (rad < 0.0) return std::nullopt;
    const double n = std::cbrt((45.0 - 9.0 * theta + ell) * s + std::sqrt(rad));
    if (n == 0.0) return std::nullopt;
    return s / 6.0 - (6.0 + 6.0 * theta - ell) / (6.0 * n) + n / 6.0;
}

CardanoCrossCheck cardano_cross_check(int samples, unsigned seed) {
    CardanoCrossCheck report;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.2, 30.0);
    std::uniform_real_distribution<double> ell_dist(0.2, 200.0);

    for (int k = 0; k < samples; ++k) {
        const double theta = theta_dist(rng);
        const double ell = ell_dist(rng);
        const auto u1 = diagonal_cubic_cardano_root(theta, ell);
        if (!u1) {
            ++report.skipped;
            continue;
        }
        ++report.tested;
        const DiagonalRoots roots = diagonal_fixed_points(theta, ell);
        double best = std::numeric_limits<double>::infinity();
        for (double u : roots.us) {
            best = std::min(best, std::abs(u - *u1) / std::max(1.0, std::abs(u)));
        }
        report.worst_rel_error = std::max(report.worst_rel_error, best);
        if (best <= 1e-8) {
            ++report.agreements;
        } else {
            ++report.disagreements;
            report.disagreement_notes.push_back(
                "theta=" + fmt17(theta) + " L=" + fmt17(ell) + " closed-form u=" + fmt17(*u1) +
                " nearest-root rel err=" + fmt17(best));
        }
    }
    return report;
}

OffDiagRadicalForms offdiag_radical_forms(double theta, double ell) {
    check_params(theta, ell, "offdiag_radical_forms");
    OffDiagRadicalForms out;
    const double s = std::sqrt(ell);
    const double d0 = ell - 4.0 * (theta - 1.0);
    if (d0 < 0.0) return out;
    const double q = std::sqrt(d0);
    const double cross = ell * ell - 4.0 * (theta - 1.0) * ell;
    if (cross < 0.0) return out;
    const double w = std::sqrt(cross);

    const double rad_plus = 2.0 * ell - 4.0 * theta + 2.0 * w;
    if (rad_plus >= 0.0) {
        const double t = std::sqrt(rad_plus);
        out.x1 = 0.5 * (s + q + t);
        out.x2 = 0.5 * (s + q - t);
    }
    const double rad_minus = 2.0 * ell - 4.0 * theta - 2.0 * w;
    if (rad_minus >= 0.0) {
        const double t = std::sqrt(rad_minus);
        out.x3 = 0.5 * (s - q + t);
        out.x4 = 0.5 * (s - q - t);
    }
    return out;
}

RadicalFormAudit audit_offdiag_radical_forms(double theta, double ell) {
    RadicalFormAudit audit;
    audit.route = offdiag_fixed_points(theta, ell);
    audit.printed = offdiag_radical_forms(theta, ell);

    const ModelParams params(theta, ell);
    for (const auto& pr : audit.route.pairs) {
        audit.route_residuals.push_back(w_residual_sup(params, Point2(pr.x, pr.y)));
    }

    std::vector<std::pair<double, double>> printed_pairs;
    if (audit.printed.x1 && audit.printed.x2 && *audit.printed.x2 > 0.0) {
        printed_pairs.emplace_back(*audit.printed.x1, *audit.printed.x2);
    }
    if (audit.printed.x3 && audit.printed.x4 && *audit.printed.x4 > 0.0) {
        printed_pairs.emplace_back(*audit.printed.x3, *audit.printed.x4);
    }

    bool all_match = true;
    for (const auto& [a, b] : printed_pairs) {
        const Point2 cand(a, b);
        audit.printed_residuals.push_back(w_residual_sup(params, cand));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pr : audit.route.pairs) {
            best = std::min(best, std::max(std::abs(pr.x - a), std::abs(pr.y - b)));
            best = std::min(best, std::max(std::abs(pr.y - a), std::abs(pr.x - b)));
        }
        if (!(best <= 1e-8 * (1.0 + std::abs(a)))) all_match = false;
    }
    if (printed_pairs.size() != audit.route.pairs.size()) all_match = false;

    audit.agree = all_match;
    audit.verdict = std::string("radical-form audit at theta=") + fmt17(theta) +
                    " L=" + fmt17(ell) + ": " +
                    (all_match ? "AGREEMENT - the direct radical expressions reproduce the "
                                 "xi-route pairs"
                               : "DISAGREEMENT - the direct radical expressions do not satisfy "
                                 "the fixed-point system; the xi-route pairs are authoritative");
    return audit;
}

}  // namespace hcfix
