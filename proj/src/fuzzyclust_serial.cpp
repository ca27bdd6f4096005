#include "elmine/fuzzyclust_serial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "elmine/errors.hpp"
#include "elmine/fuzzyclust.hpp"

namespace elmine::fuzzy::serial {

namespace {

double sqdist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double one_minus_kernel(double sq_dist, double sigma) {
  return -std::expm1(-sq_dist / (sigma * sigma));
}

Matrix memberships_from(const Matrix &X, const Matrix &centers, double m,
                        const std::vector<std::vector<double>> &diss) {
  std::size_t n = X.rows(), c = centers.rows();
  Matrix U(c, n);
  double expo = -1.0 / (m - 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t coincident = 0;
    for (std::size_t i = 0; i < c; ++i)
      if (diss[j][i] == 0.0)
        ++coincident;
    if (coincident > 0) {
      for (std::size_t i = 0; i < c; ++i)
        U(i, j) = diss[j][i] == 0.0
                      ? 1.0 / static_cast<double>(coincident)
                      : 0.0;
      continue;
    }
    std::vector<double> inv(c);
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      inv[i] = std::pow(std::max(diss[j][i], kDistanceFloor), expo);
      sum += inv[i];
    }
    for (std::size_t i = 0; i < c; ++i)
      U(i, j) = inv[i] / sum;
  }
  return U;
}

} // namespace

double fcm_objective(const Matrix &X, const Matrix &U, const Matrix &centers,
                     double m) {
  double total = 0.0;
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j)
      total += std::pow(U(i, j), m) * sqdist(X.row(j), centers.row(i));
  return total;
}

Matrix fcm_centers(const Matrix &X, const Matrix &U, double m) {
  std::size_t c = U.rows(), n = U.cols(), d = X.cols();
  Matrix centers(c, d);
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<double> num(d, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = std::pow(U(i, j), m);
      den += w;
      for (std::size_t k = 0; k < d; ++k)
        num[k] += w * X(j, k);
    }
    if (den == 0.0)
      throw DegenerateCluster("cluster " + std::to_string(i) +
                              " has zero total weight");
    for (std::size_t k = 0; k < d; ++k)
      centers(i, k) = num[k] / den;
  }
  return centers;
}

Matrix fcm_memberships(const Matrix &X, const Matrix &centers, double m) {
  std::size_t n = X.rows(), c = centers.rows();
  std::vector<std::vector<double>> diss(n, std::vector<double>(c));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < c; ++i)
      diss[j][i] = sqdist(X.row(j), centers.row(i));
  return memberships_from(X, centers, m, diss);
}

double kfcm_objective(const Matrix &X, const Matrix &U, const Matrix &centers,
                      double m, double sigma) {
  double total = 0.0;
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j)
      total += std::pow(U(i, j), m) *
               one_minus_kernel(sqdist(X.row(j), centers.row(i)), sigma);
  return 2.0 * total;
}

Matrix kfcm_memberships(const Matrix &X, const Matrix &centers, double m,
                        double sigma) {
  std::size_t n = X.rows(), c = centers.rows();
  std::vector<std::vector<double>> diss(n, std::vector<double>(c));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < c; ++i) {
      double d2 = sqdist(X.row(j), centers.row(i));
      diss[j][i] = d2 == 0.0 ? 0.0 : one_minus_kernel(d2, sigma);
    }
  }
  return memberships_from(X, centers, m, diss);
}

Matrix kfcm_centers(const Matrix &X, const Matrix &U,
                    const Matrix &kernel_centers, double m, double sigma) {
  std::size_t c = U.rows(), n = U.cols(), d = X.cols();
  Matrix centers(c, d);
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<double> num(d, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double d2 = sqdist(X.row(j), kernel_centers.row(i));
      double w = std::pow(U(i, j), m) * std::exp(-d2 / (sigma * sigma));
      den += w;
      for (std::size_t k = 0; k < d; ++k)
        num[k] += w * X(j, k);
    }
    if (den == 0.0)
      throw DegenerateCluster("cluster " + std::to_string(i) +
                              " has zero total weight");
    for (std::size_t k = 0; k < d; ++k)
      centers(i, k) = num[k] / den;
  }
  return centers;
}

} // namespace elmine::fuzzy::serial
