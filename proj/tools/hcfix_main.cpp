// hcfix: fixed-point enumeration, region classification, iteration, sweeps
// and curve sampling for the two-dimensional operator W and its
// sequence-space lift.
//
// Exit codes: 0 success, 2 invalid input, 3 solver/oracle mismatch under
// --check, 1 internal failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hcfix/dynamics.hpp"
#include "hcfix/io.hpp"
#include "hcfix/oracle.hpp"
#include "hcfix/regions.hpp"

namespace {

using namespace hcfix;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;

// "geometric:c,r" or a path to a newline-delimited list of positive reals.
ActivityVector parse_lambda_spec(const std::string& spec, std::size_t dim) {
    const std::string prefix = "geometric:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string args = spec.substr(prefix.size());
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("lambda-spec: expected geometric:c,r");
        }
        const double c = std::stod(args.substr(0, comma));
        const double r = std::stod(args.substr(comma + 1));
        return ActivityVector::geometric(dim, c, r);
    }
    std::ifstream in(spec);
    if (!in) {
        throw std::invalid_argument("lambda-spec: cannot open file " + spec);
    }
    std::vector<double> entries;
    double v = 0.0;
    while (in >> v) entries.push_back(v);
    return ActivityVector(std::move(entries));
}

RegionRecord region_record(double theta, double ell, double rel_tol) {
    RegionRecord out;
    const auto formula = classify_formula(theta, ell, rel_tol);
    const RegionLabel computed = classify_computed(theta, ell);
    if (formula) out.formula = formula->name();
    out.computed = computed.name();
    out.diag_count = computed.diag_count;
    out.offdiag_count = computed.offdiag_count;
    for (const auto tag : computed.on_boundary) out.on_boundary.push_back(to_string(tag));
    out.agreement = !formula || formula->name() == computed.name();
    return out;
}

std::vector<FixedPointRecord> fixed_point_records(double theta, double ell,
                                                  const FixedPointSet& set) {
    const ModelParams params(theta, ell);
    std::vector<FixedPointRecord> out;
    for (double x : set.diagonal.xs) {
        const Point2 p(x, x);
        const Point2 q = apply_w(params, p);
        out.push_back({"diagonal", x, x,
                       std::max(std::abs(q.x - p.x), std::abs(q.y - p.y))});
    }
    for (const auto& pr : set.offdiag.pairs) {
        for (const Point2& p : {Point2(pr.x, pr.y), Point2(pr.y, pr.x)}) {
            const Point2 q = apply_w(params, p);
            out.push_back({"offdiag", p.x, p.y,
                           std::max(std::abs(q.x - p.x), std::abs(q.y - p.y))});
        }
    }
    return out;
}

int run_classify(double theta, double ell, double rel_tol) {
    OutputRecord rec;
    rec.command = "classify";
    rec.theta = theta;
    rec.ell1 = rec.ell2 = ell;
    rec.region = region_record(theta, ell, rel_tol);
    if (!rec.region->agreement) {
        std::cerr << "warning: formula and computed classifications disagree\n";
    }
    std::cout << to_json(rec);
    return kExitOk;
}

int run_fixpoints(double theta, double ell, bool check, bool lift,
                  const std::string& lambda_spec, std::size_t dim, const OracleConfig& ocfg) {
    const FixedPointSet set = fix_w(theta, ell);

    OutputRecord rec;
    rec.command = "fixpoints";
    rec.theta = theta;
    rec.ell1 = rec.ell2 = ell;
    rec.region = region_record(theta, ell, 1e-12);
    rec.fixed_points = fixed_point_records(theta, ell, set);

    bool mismatch = false;
    if (check) {
        const auto oracle_pts = oracle_fix_w(theta, ell, ocfg);
        const auto solver_pts = set.all_points();
        OracleCheckRecord oc;
        oc.solver_points = static_cast<int>(solver_pts.size());
        oc.oracle_points = static_cast<int>(oracle_pts.size());
        oc.match = solver_pts.size() == oracle_pts.size();
        for (const auto& sp : solver_pts) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& op : oracle_pts) {
                best = std::min(best, std::max(std::abs(sp.x - op.x), std::abs(sp.y - op.y)));
            }
            oc.max_mismatch = std::max(oc.max_mismatch, best);
        }
        if (oc.max_mismatch > 1e-8) oc.match = false;
        rec.oracle_check = oc;
        mismatch = !oc.match;
    }

    if (lift) {
        // The profile is rescaled so its odd/even sums both equal L; the
        // lifted vectors are then genuine fixed points of the truncated F.
        const ActivityVector lam = parse_lambda_spec(lambda_spec, dim).rescaled(ell, ell);
        const auto lifted = fix_f(lam, theta);
        const auto points = set.all_points();
        for (std::size_t i = 0; i < lifted.size(); ++i) {
            const SpinVector& v = lifted[i];
            const SpinVector fv = apply_f_truncated(lam, theta, v);
            double res = 0.0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                res = std::max(res, std::abs(fv.entries()[k] - v.entries()[k]));
            }
            rec.lifted.push_back({points[i].x, points[i].y, v.entries(), res});
        }
    }

    std::cout << to_json(rec);
    return mismatch ? kExitMismatch : kExitOk;
}

int run_iterate(double theta, double ell1, double ell2, double x0, double y0,
                std::size_t max_iter, double tol) {
    const ModelParams params(theta, ell1, ell2);
    const TrajectoryW tr = iterate_w(params, Point2(x0, y0), max_iter, tol);
    std::cout << csv_row({"step", "x", "y", "sign"});
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
        const Point2& p = tr.points[k];
        std::cout << csv_row({std::to_string(k), format_double(p.x), format_double(p.y),
                              std::string(1, sign_char(sign_class_of(p)))});
    }
    if (tr.status == TrajectoryStatus::MaxItersReached) {
        std::cerr << "note: not converged within " << max_iter << " iterations\n";
    }
    return kExitOk;
}

int run_sweep(double theta_min, double theta_max, double ell_min, double ell_max,
              std::size_t grid_theta, std::size_t grid_ell) {
    if (!(theta_min > 0.0) || !(ell_min > 0.0) || !(theta_max > theta_min) ||
        !(ell_max > ell_min) || grid_theta < 2 || grid_ell < 2) {
        throw std::domain_error("sweep: ranges must be positive and grids at least 2x2");
    }
    const auto theta_at = [&](std::size_t i) {
        return theta_min + (theta_max - theta_min) * static_cast<double>(i) /
                               static_cast<double>(grid_theta - 1);
    };
    const auto ell_at = [&](std::size_t j) {
        return ell_min + (ell_max - ell_min) * static_cast<double>(j) /
                             static_cast<double>(grid_ell - 1);
    };

    const std::size_t cells = grid_theta * grid_ell;
    std::vector<std::pair<int, int>> counts(cells);
    std::atomic<std::size_t> next{0};
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1)) {
                const RegionLabel lbl =
                    classify_computed(theta_at(cell / grid_ell), ell_at(cell % grid_ell));
                counts[cell] = {lbl.diag_count, lbl.offdiag_count};
            }
        });
    }
    for (auto& w : workers) w.join();

    // Deterministic emission: theta-major, then L.
    std::cout << csv_row({"theta", "ell", "i", "j"});
    for (std::size_t i = 0; i < grid_theta; ++i) {
        for (std::size_t j = 0; j < grid_ell; ++j) {
            const auto [di, dj] = counts[i * grid_ell + j];
            std::cout << csv_row({format_double(theta_at(i)), format_double(ell_at(j)),
                                  std::to_string(di), std::to_string(dj)});
        }
    }
    return kExitOk;
}

int run_curves(double theta, double ell, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("curves: samples must be >= 2");
    const ModelParams params(theta, ell);  // validates
    (void)params;
    // y = psi(x) is the first fixed-point equation solved for y; the
    // reflected locus x = psi(y) is the second.  Intersections of the two
    // are exactly the fixed points of W.
    const auto psi = [&](double x) {
        const double sx = std::sqrt(x);
        return std::sqrt(ell) * (1.0 / sx + sx) - (1.0 + theta + x);
    };
    std::cout << csv_row({"x", "y", "curve"});
    const double lo = ell * 1e-6;
    const double ratio = std::pow(ell / lo, 1.0 / static_cast<double>(samples - 1));
    double t = lo;
    std::vector<double> ts(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        ts[k] = std::min(t, ell);
        t *= ratio;
    }
    for (double v : ts) {
        std::cout << csv_row({format_double(v), format_double(psi(v)), "y=psi(x)"});
    }
    for (double v : ts) {
        std::cout << csv_row({format_double(psi(v)), format_double(v), "x=psi(y)"});
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed points of the reduced two-dimensional operator W"};
    app.require_subcommand(1);

    double theta = 0.0, ell = 0.0;
    double rel_tol = 1e-12;

    auto* classify = app.add_subcommand("classify", "Region of a symmetric parameter pair");
    classify->add_option("--theta", theta, "theta > 0")->required();
    classify->add_option("--ell", ell, "L > 0")->required();
    classify->add_option("--rel-tol", rel_tol, "boundary-membership tolerance (relative)");

    bool check = false, lift = false;
    std::string lambda_spec = "geometric:1,0.5";
    std::size_t dim = 64;
    OracleConfig ocfg;
    auto* fixpoints = app.add_subcommand("fixpoints", "Enumerate all fixed points of W");
    fixpoints->add_option("--theta", theta, "theta > 0")->required();
    fixpoints->add_option("--ell", ell, "L > 0")->required();
    fixpoints->add_flag("--check", check, "verify against the brute-force oracle (exit 3 on mismatch)");
    fixpoints->add_flag("--lift", lift, "also lift the set to sequence space");
    fixpoints->add_option("--lambda-spec", lambda_spec,
                          "activity profile: geometric:c,r or a file of positive reals; "
                          "rescaled so both partial sums equal --ell");
    fixpoints->add_option("--dim", dim, "truncation length (even)");
    fixpoints->add_option("--grid-n", ocfg.grid_n, "oracle seed-grid resolution");
    fixpoints->add_option("--refine-tol", ocfg.refine_tol, "oracle refinement tolerance");
    fixpoints->add_option("--dedup-tol", ocfg.dedup_tol, "oracle deduplication distance");

    double ell1 = 0.0, ell2 = 0.0, x0 = 0.0, y0 = 0.0, tol = 1e-13;
    std::size_t max_iter = 100000;
    auto* iterate = app.add_subcommand("iterate", "Iterate W and emit the trajectory as CSV");
    iterate->add_option("--theta", theta, "theta > 0")->required();
    iterate->add_option("--ell", ell, "L1 = L2 = L");
    iterate->add_option("--ell1", ell1, "L1 (with --ell2)");
    iterate->add_option("--ell2", ell2, "L2 (with --ell1)");
    iterate->add_option("--x0", x0, "start x >= 0")->required();
    iterate->add_option("--y0", y0, "start y >= 0")->required();
    iterate->add_option("--max-iter", max_iter, "iteration cap");
    iterate->add_option("--tol", tol, "relative sup-norm step tolerance");

    double theta_min = 0.0, theta_max = 0.0, ell_min = 0.0, ell_max = 0.0;
    std::size_t grid_theta = 2, grid_ell = 2;
    auto* sweep = app.add_subcommand("sweep", "Region map over a parameter grid (CSV)");
    sweep->add_option("--theta-min", theta_min)->required();
    sweep->add_option("--theta-max", theta_max)->required();
    sweep->add_option("--ell-min", ell_min)->required();
    sweep->add_option("--ell-max", ell_max)->required();
    sweep->add_option("--grid-theta", grid_theta, "theta samples (>= 2)");
    sweep->add_option("--grid-ell", grid_ell, "L samples (>= 2)");

    std::size_t samples = 512;
    auto* curves = app.add_subcommand("curves", "Sample the fixed-point loci y=psi(x), x=psi(y)");
    curves->add_option("--theta", theta, "theta > 0")->required();
    curves->add_option("--ell", ell, "L > 0")->required();
    curves->add_option("--samples", samples, "points per locus (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (app.got_subcommand(classify)) return run_classify(theta, ell, rel_tol);
        if (app.got_subcommand(fixpoints)) {
            return run_fixpoints(theta, ell, check, lift, lambda_spec, dim, ocfg);
        }
        if (app.got_subcommand(iterate)) {
            if (ell > 0.0 && ell1 == 0.0 && ell2 == 0.0) {
                ell1 = ell2 = ell;
            }
            return run_iterate(theta, ell1, ell2, x0, y0, max_iter, tol);
        }
        if (app.got_subcommand(sweep)) {
            return run_sweep(theta_min, theta_max, ell_min, ell_max, grid_theta, grid_ell);
        }
        if (app.got_subcommand(curves)) return run_curves(theta, ell, samples);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInvalid;
}
