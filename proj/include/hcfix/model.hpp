#pragma once

// Core domain types and operator evaluations.
//
// The model is a pair of coupled positive sequences driven by an activity
// vector lambda.  Writing M1 / M2 for the odd- and even-position partial
// sums of the state and L1 / L2 for those of lambda, one application of the
// sequence operator F is
//
//   x'_odd  = lambda_odd  * ((1 + M1) / (1 + theta + M1 + M2))^2
//   x'_even = lambda_even * ((1 + M2) / (1 + theta + M1 + M2))^2
//
// so the pair (M1, M2) evolves autonomously under the two-dimensional map
//
//   W(x, y) = ( L1 * ((1+x) / (1+theta+x+y))^2 ,
//               L2 * ((1+y) / (1+theta+x+y))^2 ).
//
// Everything in this header is a pure function of its inputs; values are
// freely copyable and safe to use from multiple threads.

#include <cstddef>
#include <vector>

namespace hcfix {

/// Parameters (theta, L1, L2) of the reduced two-dimensional operator.
class ModelParams {
public:
    ModelParams(double theta, double ell1, double ell2);
    /// Symmetric convenience: L1 = L2 = ell.
    ModelParams(double theta, double ell) : ModelParams(theta, ell, ell) {}

    double theta() const { return theta_; }
    double ell1() const { return ell1_; }
    double ell2() const { return ell2_; }

    /// True iff L1 == L2 (exact); region classification requires this.
    bool symmetric() const { return ell1_ == ell2_; }

private:
    double theta_;
    double ell1_;
    double ell2_;
};

/// A point in the closed positive quadrant, the state of W.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double x, double y);  // throws std::domain_error unless finite and >= 0
};

/// Truncated activity vector: 2n strictly positive entries with cached
/// odd/even partial sums (1-indexed positions; entry 0 is position 1).
class ActivityVector {
public:
    explicit ActivityVector(std::vector<double> entries);

    /// Geometric family lambda_i = c * r^i, i = 1..dim.  Summable by
    /// construction; the conventional default profile is c = 1, r = 0.5.
    static ActivityVector geometric(std::size_t dim, double c = 1.0, double r = 0.5);

    /// Same entry profile rescaled so the odd/even sums equal the targets.
    ActivityVector rescaled(double odd_target, double even_target) const;

    const std::vector<double>& entries() const { return entries_; }
    double odd_sum() const { return odd_sum_; }
    double even_sum() const { return even_sum_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<double> entries_;
    double odd_sum_ = 0.0;
    double even_sum_ = 0.0;
};

/// Truncated state vector: strictly positive entries with cached partial
/// sums m1 (odd positions) and m2 (even positions).
class SpinVector {
public:
    explicit SpinVector(std::vector<double> entries);

    const std::vector<double>& entries() const { return entries_; }
    double m1() const { return m1_; }
    double m2() const { return m2_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<double> entries_;
    double m1_ = 0.0;
    double m2_ = 0.0;
};

/// Parameters of the reduced operator induced by an activity vector.
ModelParams params_from(const ActivityVector& lam, double theta);

/// One application of the two-dimensional operator W.  The image always
/// lies strictly inside (0, L1) x (0, L2) because both ratios are < 1.
Point2 apply_w(const ModelParams& params, const Point2& p);

/// The diagonal restriction f(x) = L * ((1+x) / (1+theta+2x))^2.
/// At theta == 1 this is the constant L/4.
double apply_f_diag(double theta, double ell, double x);

/// One application of the truncated sequence operator F.  Every output
/// entry is strictly smaller than the matching lambda entry.
SpinVector apply_f_truncated(const ActivityVector& lam, double theta, const SpinVector& x);

/// The reduction (M1, M2): odd- and even-position partial sums.
/// Satisfies reduce(F(x)) == W(reduce(x)) up to summation rounding.
Point2 reduce(const SpinVector& x);

/// Reconstructs the sequence-space point over a fixed point (a, b) of W:
/// entries a/L1 * lambda_odd and b/L2 * lambda_even.
SpinVector lift_point(const ActivityVector& lam, const ModelParams& params, const Point2& p);

}  // namespace hcfix
