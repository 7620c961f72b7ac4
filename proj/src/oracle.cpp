#include "hcfix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcfix/solver.hpp"

namespace hcfix {

namespace {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
    double frob2() const { return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22; }
};

struct System {
    double theta, ell;

    bool in_domain(double x, double y) const {
        return std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0 &&
               x <= 2.0 * ell && y <= 2.0 * ell;
    }

    // R(p) = W(p) - p.
    Vec2 residual(double x, double y) const {
        const double den = 1.0 + theta + x + y;
        const double rx = (1.0 + x) / den;
        const double ry = (1.0 + y) / den;
        return {ell * rx * rx - x, ell * ry * ry - y};
    }

    // Analytic Jacobian of R.
    Mat2 jacobian(double x, double y) const {
        const double den = 1.0 + theta + x + y;
        const double d3 = den * den * den;
        const double px = 1.0 + x;
        const double py = 1.0 + y;
        Mat2 j;
        j.a11 = 2.0 * ell * px * (theta + y) / d3 - 1.0;
        j.a12 = -2.0 * ell * px * px / d3;
        j.a21 = -2.0 * ell * py * py / d3;
        j.a22 = 2.0 * ell * py * (theta + x) / d3 - 1.0;
        return j;
    }

    double res_norm(double x, double y) const {
        const Vec2 r = residual(x, y);
        return std::max(std::abs(r.x), std::abs(r.y));
    }
};

// Damped Newton from a seed; returns true on residual convergence.
bool newton_refine(const System& sys, double& x, double& y, double tol, int max_iter) {
    double rn = sys.res_norm(x, y);
    for (int it = 0; it < max_iter; ++it) {
        if (rn <= tol * (1.0 + std::max(x, y))) return true;
        const Vec2 r = sys.residual(x, y);
        const Mat2 j = sys.jacobian(x, y);
        const double det = j.det();
        if (det == 0.0) return false;
        double dx = -(r.x * j.a22 - r.y * j.a12) / det;
        double dy = -(j.a11 * r.y - j.a21 * r.x) / det;
        // Step halving, up to 40 times, until the residual decreases.
        double scale = 1.0;
        bool accepted = false;
        for (int h = 0; h < 40; ++h) {
            const double nx = x + scale * dx;
            const double ny = y + scale * dy;
            if (sys.in_domain(nx, ny)) {
                const double nrn = sys.res_norm(nx, ny);
                if (nrn < rn) {
                    x = nx;
                    y = ny;
                    rn = nrn;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if (!accepted) return rn <= tol * (1.0 + std::max(x, y));
    }
    return sys.res_norm(x, y) <= tol * (1.0 + std::max(x, y));
}

// Tangency refinement for coalescing fixed points.  Where two solutions
// merge the Jacobian of R is singular along a direction v, the residual is
// quadratically flat, and plain Newton only locates the point to about
// sqrt(tol).  The merge point is instead a simple zero of
//
//   g(t) = v' J(p + t v) v      (second derivative of R along v)
//
// so a scalar secant solve on g followed by a transverse correction
// recovers it to machine precision.  Returns false (leaving p unchanged)
// if the input does not behave like a tangency.
bool fold_refine(const System& sys, double& x, double& y) {
    double px = x, py = y;
    const double start_rn = sys.res_norm(px, py);
    for (int pass = 0; pass < 6; ++pass) {
        const Mat2 j = sys.jacobian(px, py);
        // Right kernel direction: orthogonal to the larger row.  The
        // Jacobian is not symmetric away from the diagonal, so the left
        // kernel (orthogonal to the larger column) is needed as well; the
        // reduced function u'Jv tracks the vanishing eigenvalue, v'Jv does
        // not.
        const double r1 = std::hypot(j.a11, j.a12);
        const double r2 = std::hypot(j.a21, j.a22);
        double vx, vy;
        if (r1 >= r2) {
            if (r1 == 0.0) return false;
            vx = -j.a12 / r1;
            vy = j.a11 / r1;
        } else {
            vx = -j.a22 / r2;
            vy = j.a21 / r2;
        }
        const double c1 = std::hypot(j.a11, j.a21);
        const double c2 = std::hypot(j.a12, j.a22);
        double ux, uy;
        if (c1 >= c2) {
            if (c1 == 0.0) return false;
            ux = -j.a21 / c1;
            uy = j.a11 / c1;
        } else {
            ux = -j.a22 / c2;
            uy = j.a12 / c2;
        }
        auto g = [&](double t) {
            const Mat2 m = sys.jacobian(px + t * vx, py + t * vy);
            return ux * (m.a11 * vx + m.a12 * vy) + uy * (m.a21 * vx + m.a22 * vy);
        };
        // Bracket the simple zero of g around t = 0, then bisect; bisection
        // is immune to the evaluation jitter of g near its zero.
        double span = 1e-4 * (1.0 + std::max(px, py));
        double ta = -span, tb = span;
        double ga = g(ta), gb = g(tb);
        bool bracketed = (ga > 0.0) != (gb > 0.0);
        for (int grow = 0; grow < 4 && !bracketed; ++grow) {
            span *= 8.0;
            ta = -span;
            tb = span;
            ga = g(ta);
            gb = g(tb);
            bracketed = (ga > 0.0) != (gb > 0.0);
        }
        if (!bracketed) return false;
        for (int it = 0; it < 120 && tb - ta > 1e-18 * (1.0 + std::abs(tb)); ++it) {
            const double tm = 0.5 * (ta + tb);
            const double gm = g(tm);
            if (gm == 0.0) { ta = tb = tm; break; }
            if ((gm > 0.0) == (gb > 0.0)) {
                tb = tm;
                gb = gm;
            } else {
                ta = tm;
                ga = gm;
            }
        }
        const double t1 = 0.5 * (ta + tb);
        double nx = px + t1 * vx;
        double ny = py + t1 * vy;
        if (!sys.in_domain(nx, ny)) return false;
        // Transverse correction: zero the nondegenerate residual component
        // (left range direction) moving along v-perp.
        const double wx = vy, wy = -vx;
        const double qx = uy, qy = -ux;
        for (int it = 0; it < 30; ++it) {
            const Vec2 r = sys.residual(nx, ny);
            const double h = qx * r.x + qy * r.y;
            const Mat2 m = sys.jacobian(nx, ny);
            const double dh = qx * (m.a11 * wx + m.a12 * wy) + qy * (m.a21 * wx + m.a22 * wy);
            if (dh == 0.0) break;
            const double s = h / dh;
            nx -= s * wx;
            ny -= s * wy;
            if (!sys.in_domain(nx, ny)) return false;
            if (std::abs(s) <= 1e-17 * (1.0 + std::max(nx, ny))) break;
        }
        const double moved = std::max(std::abs(nx - px), std::abs(ny - py));
        px = nx;
        py = ny;
        if (moved <= 1e-15 * (1.0 + std::max(px, py))) break;
    }
    // Accept only a genuine improvement; at a regular root the tangency
    // solve wanders off and is discarded.
    if (sys.res_norm(px, py) <= start_rn) {
        x = px;
        y = py;
        return true;
    }
    return false;
}

std::vector<double> seed_axis(double box, int n) {
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(2 * n));
    for (int k = 1; k <= n; ++k) {
        coords.push_back(box * static_cast<double>(k) / static_cast<double>(n));
    }
    // Logarithmic ladder down to box * 1e-10 to resolve near-axis points.
    const double lo = box * 1e-10;
    const double ratio = std::pow(box / lo, 1.0 / static_cast<double>(n - 1));
    double v = lo;
    for (int k = 0; k < n; ++k) {
        coords.push_back(std::min(v, box));
        v *= ratio;
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return coords;
}

}  // namespace

std::vector<Point2> oracle_fix_w(double theta, double ell, const OracleConfig& cfg) {
    if (!std::isfinite(theta) || theta <= 0.0 || !std::isfinite(ell) || ell <= 0.0) {
        throw std::domain_error("oracle_fix_w: theta and L must be finite and > 0");
    }
    if (cfg.grid_n < 16 || !(cfg.refine_tol > 0.0) || !(cfg.refine_tol < cfg.dedup_tol) ||
        !(cfg.dedup_tol < 1.0)) {
        throw std::invalid_argument("oracle_fix_w: invalid OracleConfig");
    }

    const System sys{theta, ell};
    const std::vector<double> ax = seed_axis(ell, cfg.grid_n);
    const std::size_t m = ax.size();

    // Residual fields on the grid.
    std::vector<double> f1(m * m), f2(m * m);
    for (std::size_t iy = 0; iy < m; ++iy) {
        for (std::size_t ix = 0; ix < m; ++ix) {
            const Vec2 r = sys.residual(ax[ix], ax[iy]);
            f1[iy * m + ix] = r.x;
            f2[iy * m + ix] = r.y;
        }
    }

    std::vector<std::pair<double, double>> seeds;
    auto cell_sign_change = [&](const std::vector<double>& f, std::size_t ix, std::size_t iy) {
        const double c00 = f[iy * m + ix];
        const double c10 = f[iy * m + ix + 1];
        const double c01 = f[(iy + 1) * m + ix];
        const double c11 = f[(iy + 1) * m + ix + 1];
        const double lo = std::min(std::min(c00, c10), std::min(c01, c11));
        const double hi = std::max(std::max(c00, c10), std::max(c01, c11));
        return lo <= 0.0 && hi >= 0.0;
    };
    for (std::size_t iy = 0; iy + 1 < m; ++iy) {
        for (std::size_t ix = 0; ix + 1 < m; ++ix) {
            if (cell_sign_change(f1, ix, iy) && cell_sign_change(f2, ix, iy)) {
                seeds.emplace_back(0.5 * (ax[ix] + ax[ix + 1]), 0.5 * (ax[iy] + ax[iy + 1]));
            }
        }
    }
    // Small-magnitude seeds: local minima of the nodewise residual norm
    // catch tangent (non-crossing) solutions.
    const double small_mag = 1e-2 * (1.0 + ell);
    for (std::size_t iy = 1; iy + 1 < m; ++iy) {
        for (std::size_t ix = 1; ix + 1 < m; ++ix) {
            const auto mag = [&](std::size_t jx, std::size_t jy) {
                return std::max(std::abs(f1[jy * m + jx]), std::abs(f2[jy * m + jx]));
            };
            const double c = mag(ix, iy);
            if (c >= small_mag) continue;
            bool is_min = true;
            for (int dy = -1; dy <= 1 && is_min; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (mag(ix + static_cast<std::size_t>(dx), iy + static_cast<std::size_t>(dy)) <
                        c) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min) seeds.emplace_back(ax[ix], ax[iy]);
        }
    }

    std::vector<Point2> found;
    std::vector<double> found_res;
    for (const auto& [sx, sy] : seeds) {
        double x = sx, y = sy;
        if (!newton_refine(sys, x, y, cfg.refine_tol, 200)) continue;
        // Near-singular Jacobian: coalescing solutions, refine the tangency.
        // The trigger is deliberately loose; fold_refine rejects itself at
        // regular roots.
        const Mat2 j = sys.jacobian(x, y);
        if (std::abs(j.det()) < 1e-3 * (j.frob2() + 1e-30)) {
            fold_refine(sys, x, y);
        }
        const double rn = sys.res_norm(x, y);
        if (!(rn <= cfg.refine_tol * (1.0 + std::max(x, y)))) continue;
        if (!(x > 0.0 && y > 0.0 && x <= ell && y <= ell)) continue;

        bool merged = false;
        for (std::size_t k = 0; k < found.size(); ++k) {
            if (std::max(std::abs(found[k].x - x), std::abs(found[k].y - y)) <= cfg.dedup_tol) {
                if (rn < found_res[k]) {
                    found[k] = Point2(x, y);
                    found_res[k] = rn;
                }
                merged = true;
                break;
            }
        }
        if (!merged) {
            found.emplace_back(x, y);
            found_res.push_back(rn);
        }
    }

    // Degenerate-cluster agglomeration.  Where solutions coalesce to high
    // order (e.g. the pair-collapse locus) the residual is flat over a
    // neighborhood far wider than dedup_tol and refinement stalls at
    // arbitrary points inside it.  Two candidates whose connecting segment
    // stays below the residual tolerance are numerically indistinguishable
    // as fixed points, so they collapse to their midpoint.
    auto segment_flat = [&](const Point2& a, const Point2& b) {
        for (double t : {0.25, 0.5, 0.75}) {
            const double mx = a.x + t * (b.x - a.x);
            const double my = a.y + t * (b.y - a.y);
            if (sys.res_norm(mx, my) > 4.0 * cfg.refine_tol * (1.0 + std::max(mx, my))) {
                return false;
            }
        }
        return true;
    };
    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (std::size_t a = 0; a < found.size() && !merged_any; ++a) {
            for (std::size_t b = a + 1; b < found.size(); ++b) {
                const double dist = std::max(std::abs(found[a].x - found[b].x),
                                             std::abs(found[a].y - found[b].y));
                const double scale =
                    1.0 + std::max(std::max(found[a].x, found[a].y),
                                   std::max(found[b].x, found[b].y));
                if (dist > 1e-2 * scale || !segment_flat(found[a], found[b])) continue;
                const Point2 mid(0.5 * (found[a].x + found[b].x),
                                 0.5 * (found[a].y + found[b].y));
                found[a] = mid;
                found_res[a] = sys.res_norm(mid.x, mid.y);
                found.erase(found.begin() + static_cast<std::ptrdiff_t>(b));
                found_res.erase(found_res.begin() + static_cast<std::ptrdiff_t>(b));
                merged_any = true;
                break;
            }
        }
    }

    if (found.empty()) {
        throw SolverError("oracle_fix_w: no fixed point found (at least one must exist)",
                          Point2(theta, ell));
    }
    std::sort(found.begin(), found.end(), [](const Point2& a, const Point2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return found;
}

std::vector<double> oracle_cubic_roots(double c3, double c2, double c1, double c0, double lo,
                                       double hi) {
    if (c3 == 0.0) throw std::domain_error("oracle_cubic_roots: leading coefficient is zero");
    if (!(lo < hi)) throw std::domain_error("oracle_cubic_roots: need lo < hi");

    auto p = [&](double u) { return ((c3 * u + c2) * u + c1) * u + c0; };
    auto dp = [&](double u) { return (3.0 * c3 * u + 2.0 * c2) * u + c1; };
    auto eval_scale = [&](double u) {
        const double au = std::abs(u);
        return std::abs(c3) * au * au * au + std::abs(c2) * au * au + std::abs(c1) * au +
               std::abs(c0);
    };

    std::vector<double> roots;
    const int n = 20000;
    const double step = (hi - lo) / static_cast<double>(n);
    double ua = lo;
    double fa = p(ua);
    for (int k = 1; k <= n; ++k) {
        const double ub = k == n ? hi : lo + step * static_cast<double>(k);
        const double fb = p(ub);
        if (fa == 0.0) {
            roots.push_back(ua);
        } else if ((fa > 0.0) != (fb > 0.0)) {
            double a = ua, b = ub, faa = fa;
            for (int it = 0; it < 200 && b - a > 1e-16 * (1.0 + std::abs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = p(mid);
                if (fm == 0.0) { a = b = mid; break; }
                if ((fm > 0.0) == (faa > 0.0)) {
                    a = mid;
                    faa = fm;
                } else {
                    b = mid;
                }
            }
            double u = 0.5 * (a + b);
            for (int it = 0; it < 30; ++it) {
                const double d = dp(u);
                if (d == 0.0) break;
                const double s = p(u) / d;
                u -= s;
                if (std::abs(s) <= 1e-17 * (1.0 + std::abs(u))) break;
            }
            roots.push_back(u);
        }
        ua = ub;
        fa = fb;
    }

    // Double roots: the polynomial touches zero at a critical point, either
    // without a sign change (scan misses it) or with a pair of spurious
    // noise crossings (scan splits it).  The critical point is the accurate
    // location in both cases, so it replaces any scan root nearby.
    const double cd = c2 * c2 - 3.0 * c3 * c1;
    if (cd > 0.0) {
        const double sq = std::sqrt(cd);
        for (double crit : {(-c2 - sq) / (3.0 * c3), (-c2 + sq) / (3.0 * c3)}) {
            if (!(crit > lo && crit < hi)) continue;
            if (std::abs(p(crit)) > 1e-10 * (eval_scale(crit) + 1.0)) continue;
            std::erase_if(roots, [&](double r) {
                return std::abs(r - crit) <= 1e-7 * (1.0 + std::abs(crit));
            });
            roots.push_back(crit);
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                                return std::abs(a - b) <= 1e-7 * (1.0 + std::abs(b));
                            }),
                roots.end());
    return roots;
}

}  // namespace hcfix
