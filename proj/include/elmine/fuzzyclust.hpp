#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "elmine/matrix.hpp"

namespace elmine::fuzzy {

enum class Method { Fcm, Kfcm };

// Floor applied to squared distances and to (1 - kernel) values before they
// are raised to a negative power, so coincident points cannot divide by zero.
inline constexpr double kDistanceFloor = 1e-12;

struct ClusterModel {
  Matrix centers; // c x d
  double m = 2.0;
  Method method = Method::Fcm;
  double sigma = 0.0; // kernel width, used when method == Kfcm
};

struct FitReport {
  std::size_t iterations = 0;
  std::vector<double> objective_trace; // one entry per iteration
  bool converged = false;
  double final_delta = 0.0; // max |u(t) - u(t-1)| at the last iteration
};

struct FitOptions {
  std::size_t clusters = 3;
  Method method = Method::Fcm;
  double m = 2.0;
  std::optional<double> sigma; // Kfcm only; unset picks the median heuristic
  double eps = 1e-5;
  std::size_t max_iter = 300;
  std::uint64_t seed = 1;
  // Invoked after each iteration with the iteration number (1-based) and the
  // freshly updated membership matrix.
  std::function<void(std::size_t, const Matrix &)> on_iteration;
};

struct FitResult {
  ClusterModel model;
  Matrix memberships; // c x n
  FitReport report;
};

// Seeded random memberships, each column normalized to sum to 1.
// Throws InvalidShape when n < c or c < 2.
Matrix init_membership(std::size_t n, std::size_t c, std::uint64_t seed);

double squared_distance(std::span<const double> a, std::span<const double> b);

// exp(-|x - c|^2 / sigma^2), in (0, 1].
double gaussian_kernel(std::span<const double> x, std::span<const double> c,
                       double sigma);

// Sum over clusters and points of u^m |x - c|^2.
double fcm_objective(const Matrix &X, const Matrix &U,
                     const ClusterModel &model);

// Weighted means: c_i = sum_j u_ij^m x_j / sum_j u_ij^m.
// Throws DegenerateCluster when a cluster's total weight is zero.
Matrix fcm_centers(const Matrix &X, const Matrix &U, double m);

// u_ij proportional to |x_j - c_i|^{-2/(m-1)}, columns summing to 1. A point
// coinciding with one or more centers gets membership 1 split equally among
// them.
Matrix fcm_memberships(const Matrix &X, const Matrix &centers, double m);

// 2 * sum over clusters and points of u^m (1 - K(x_j, c_i)).
double kfcm_objective(const Matrix &X, const Matrix &U,
                      const ClusterModel &model);

// u_ij proportional to (1 - K(x_j, c_i))^{-1/(m-1)}, same zero-distance rule
// as fcm_memberships.
Matrix kfcm_memberships(const Matrix &X, const Matrix &centers, double m,
                        double sigma);

// Kernel-weighted means: c_i = sum_j u_ij^m K(x_j, c_i) x_j / same weights.
// The kernel is evaluated against kernel_centers (the previous iterate).
Matrix kfcm_centers(const Matrix &X, const Matrix &U,
                    const Matrix &kernel_centers, double m, double sigma);

// Median Euclidean distance over all pairs of a strided subsample of at most
// 500 rows; returns 1.0 when the data admits no positive distance.
double median_pairwise_distance(const Matrix &X);

// Alternating optimization: centers from the current memberships, objective,
// then membership update, stopping when max |delta u| < eps or max_iter is
// hit. Kfcm takes a plain weighted-means center step on the first iteration
// (there is no previous center to evaluate the kernel at) and the
// kernel-weighted step afterwards.
FitResult fit(const Matrix &X, const FitOptions &opts);

// Same loop from a caller-supplied initial membership matrix.
FitResult fit_from(const Matrix &X, Matrix memberships, const FitOptions &opts);

} // namespace elmine::fuzzy
