#include "hcfix/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hcfix {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_even_positive(const std::vector<double>& entries, const char* what) {
    if (entries.empty() || entries.size() % 2 != 0) {
        throw std::invalid_argument(std::string(what) + ": length must be even and nonzero");
    }
    for (double v : entries) {
        if (!finite_positive(v)) {
            throw std::domain_error(std::string(what) + ": entries must be finite and > 0");
        }
    }
}

// Left-to-right partial sums over odd (0-based even index) and even positions.
std::pair<double, double> split_sums(const std::vector<double>& entries) {
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i % 2 == 0) {
            odd += entries[i];
        } else {
            even += entries[i];
        }
    }
    return {odd, even};
}

}  // namespace

ModelParams::ModelParams(double theta, double ell1, double ell2)
    : theta_(theta), ell1_(ell1), ell2_(ell2) {
    if (!finite_positive(theta) || !finite_positive(ell1) || !finite_positive(ell2)) {
        throw std::domain_error("ModelParams: theta, L1, L2 must be finite and > 0");
    }
}

Point2::Point2(double x_, double y_) : x(x_), y(y_) {
    if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || y < 0.0) {
        throw std::domain_error("Point2: coordinates must be finite and >= 0");
    }
}

ActivityVector::ActivityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    check_even_positive(entries_, "ActivityVector");
    auto [odd, even] = split_sums(entries_);
    odd_sum_ = odd;
    even_sum_ = even;
    if (!finite_positive(odd_sum_) || !finite_positive(even_sum_)) {
        throw std::domain_error("ActivityVector: partial sums must be finite and > 0");
    }
}

ActivityVector ActivityVector::geometric(std::size_t dim, double c, double r) {
    if (dim == 0 || dim % 2 != 0) {
        throw std::invalid_argument("ActivityVector::geometric: dim must be even and nonzero");
    }
    if (!finite_positive(c) || !(r > 0.0 && r < 1.0)) {
        throw std::domain_error("ActivityVector::geometric: need c > 0 and 0 < r < 1");
    }
    std::vector<double> entries(dim);
    double term = c;
    for (std::size_t i = 0; i < dim; ++i) {
        term *= r;  // term = c * r^(i+1)
        entries[i] = term;
    }
    return ActivityVector(std::move(entries));
}

ActivityVector ActivityVector::rescaled(double odd_target, double even_target) const {
    if (!finite_positive(odd_target) || !finite_positive(even_target)) {
        throw std::domain_error("ActivityVector::rescaled: targets must be finite and > 0");
    }
    const double so = odd_target / odd_sum_;
    const double se = even_target / even_sum_;
    std::vector<double> entries(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries[i] = entries_[i] * (i % 2 == 0 ? so : se);
    }
    return ActivityVector(std::move(entries));
}

SpinVector::SpinVector(std::vector<double> entries) : entries_(std::move(entries)) {
    check_even_positive(entries_, "SpinVector");
    auto [m1, m2] = split_sums(entries_);
    m1_ = m1;
    m2_ = m2;
}

ModelParams params_from(const ActivityVector& lam, double theta) {
    return ModelParams(theta, lam.odd_sum(), lam.even_sum());
}

Point2 apply_w(const ModelParams& params, const Point2& p) {
    const double den = 1.0 + params.theta() + p.x + p.y;
    const double rx = (1.0 + p.x) / den;
    const double ry = (1.0 + p.y) / den;
    return Point2(params.ell1() * rx * rx, params.ell2() * ry * ry);
}

double apply_f_diag(double theta, double ell, double x) {
    if (!finite_positive(theta) || !finite_positive(ell)) {
        throw std::domain_error("apply_f_diag: theta and L must be finite and > 0");
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("apply_f_diag: x must be finite and >= 0");
    }
    const double r = (1.0 + x) / (1.0 + theta + 2.0 * x);
    return ell * r * r;
}

SpinVector apply_f_truncated(const ActivityVector& lam, double theta, const SpinVector& x) {
    if (!finite_positive(theta)) {
        throw std::domain_error("apply_f_truncated: theta must be finite and > 0");
    }
    if (lam.size() != x.size()) {
        throw std::invalid_argument("apply_f_truncated: lambda and state dimensions differ");
    }
    const double den = 1.0 + theta + x.m1() + x.m2();
    const double r_odd = (1.0 + x.m1()) / den;
    const double r_even = (1.0 + x.m2()) / den;
    const double f_odd = r_odd * r_odd;    // shared ratio for all odd positions
    const double f_even = r_even * r_even;
    const auto& lv = lam.entries();
    std::vector<double> out(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) {
        out[i] = lv[i] * (i % 2 == 0 ? f_odd : f_even);
    }
    return SpinVector(std::move(out));
}

Point2 reduce(const SpinVector& x) { return Point2(x.m1(), x.m2()); }

SpinVector lift_point(const ActivityVector& lam, const ModelParams& params, const Point2& p) {
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
        throw std::domain_error("lift_point: point must be strictly positive");
    }
    const double ax = p.x / params.ell1();
    const double ay = p.y / params.ell2();
    const auto& lv = lam.entries();
    std::vector<double> out(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) {
        out[i] = lv[i] * (i % 2 == 0 ? ax : ay);
    }
    return SpinVector(std::move(out));
}

}  // namespace hcfix
