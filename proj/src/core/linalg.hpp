#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "core/errors.hpp"

namespace rancova {

// Cholesky factorization of a small symmetric positive-definite matrix with a
// single ridge retry. Used for the Mahalanobis quadratic form of the p x p
// bootstrap covariance (p is 3 or 5 here).
class SpdSolver {
 public:
  // matrix is row-major p x p. On a failed factorization, retries once with
  // lambda = ridge_rel * trace / p added to the diagonal; a second failure
  // throws anc_error(degenerate_cloud).
  SpdSolver(std::span<const double> matrix, std::size_t p, double ridge_rel = 1e-10)
      : p_(p), chol_(matrix.begin(), matrix.end()) {
    if (matrix.size() != p * p || p == 0) {
      fail(errc::invalid_argument, "mahalanobis", "covariance must be square and nonempty");
    }
    if (!factorize()) {
      double trace = 0.0;
      for (std::size_t i = 0; i < p_; ++i) trace += matrix[i * p_ + i];
      const double lambda = ridge_rel * trace / static_cast<double>(p_);
      chol_.assign(matrix.begin(), matrix.end());
      for (std::size_t i = 0; i < p_; ++i) chol_[i * p_ + i] += lambda;
      ridged_ = true;
      if (lambda <= 0.0 || !factorize()) {
        fail(errc::degenerate_cloud, "mahalanobis",
             "bootstrap covariance is numerically singular");
      }
    }
  }

  // (v - center)' S^{-1} (v - center) via one forward solve.
  double quad_form(std::span<const double> v, std::span<const double> center) const {
    std::vector<double> w(p_);
    for (std::size_t i = 0; i < p_; ++i) {
      double sum = v[i] - center[i];
      for (std::size_t j = 0; j < i; ++j) sum -= chol_[i * p_ + j] * w[j];
      w[i] = sum / chol_[i * p_ + i];
    }
    double d2 = 0.0;
    for (double wi : w) d2 += wi * wi;
    return d2;
  }

  bool ridged() const noexcept { return ridged_; }

 private:
  bool factorize() {
    for (std::size_t i = 0; i < p_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = chol_[i * p_ + j];
        for (std::size_t k = 0; k < j; ++k) {
          sum -= chol_[i * p_ + k] * chol_[j * p_ + k];
        }
        if (i == j) {
          if (!(sum > 0.0) || !std::isfinite(sum)) return false;
          chol_[i * p_ + i] = std::sqrt(sum);
        } else {
          chol_[i * p_ + j] = sum / chol_[j * p_ + j];
        }
      }
    }
    return true;
  }

  std::size_t p_;
  std::vector<double> chol_;  // lower triangle holds the factor
  bool ridged_ = false;
};

}  // namespace rancova
