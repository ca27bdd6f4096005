#include "elmine/fuzzyclust.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>

#include "elmine/errors.hpp"

namespace elmine::fuzzy {

namespace {

void check_xu(const Matrix &X, const Matrix &U) {
  if (X.rows() == 0 || X.cols() == 0)
    throw InvalidShape("empty data matrix");
  if (U.rows() == 0)
    throw InvalidShape("membership matrix has no rows");
  if (U.cols() != X.rows())
    throw ShapeMismatch("membership columns != data rows");
}

void check_xc(const Matrix &X, const Matrix &centers) {
  if (centers.rows() == 0)
    throw InvalidShape("no cluster centers");
  if (centers.cols() != X.cols())
    throw ShapeMismatch("center dimension != data dimension");
}

[[noreturn]] void throw_degenerate(std::size_t cluster) {
  throw DegenerateCluster("cluster " + std::to_string(cluster) +
                          " has zero total weight");
}

// Shared shape of the two center updates; weight(i, j) supplies u^m for the
// plain variant and u^m K for the kernel variant.
template <typename WeightFn>
Matrix weighted_centers(const Matrix &X, const Matrix &U, WeightFn weight) {
  std::size_t c = U.rows(), n = U.cols(), d = X.cols();
  Matrix centers(c, d);
  std::atomic<std::int64_t> bad{-1};
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<double> num(d, 0.0);
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = weight(i, j);
      den += w;
      const double *x = X.row(j).data();
      for (std::size_t k = 0; k < d; ++k)
        num[k] += w * x[k];
    }
    if (den == 0.0) {
      std::int64_t expected = -1;
      bad.compare_exchange_strong(expected, static_cast<std::int64_t>(i));
      continue;
    }
    for (std::size_t k = 0; k < d; ++k)
      centers(i, k) = num[k] / den;
  }
  if (bad.load() >= 0)
    throw_degenerate(static_cast<std::size_t>(bad.load()));
  return centers;
}

// Membership update shared by both methods; dissimilarity(j, i) must be zero
// exactly when point j coincides with center i.
template <typename DissimFn>
Matrix normalized_memberships(std::size_t n, std::size_t c, double m,
                              DissimFn dissimilarity) {
  Matrix U(c, n);
  double expo = -1.0 / (m - 1.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> diss(c);
    std::size_t coincident = 0;
    for (std::size_t i = 0; i < c; ++i) {
      diss[i] = dissimilarity(j, i);
      if (diss[i] == 0.0)
        ++coincident;
    }
    if (coincident > 0) {
      double share = 1.0 / static_cast<double>(coincident);
      for (std::size_t i = 0; i < c; ++i)
        U(i, j) = diss[i] == 0.0 ? share : 0.0;
      continue;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      diss[i] = std::pow(std::max(diss[i], kDistanceFloor), expo);
      sum += diss[i];
    }
    for (std::size_t i = 0; i < c; ++i)
      U(i, j) = diss[i] / sum;
  }
  return U;
}

// Per-point partial sums reduced in index order, so the result does not
// depend on the thread count.
template <typename TermFn>
double ordered_objective(std::size_t n, std::size_t c, TermFn term) {
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < c; ++i)
      s += term(i, j);
    partial[j] = s;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    total += partial[j];
  return total;
}

double one_minus_kernel(double sq_dist, double sigma) {
  return -std::expm1(-sq_dist / (sigma * sigma));
}

} // namespace

Matrix init_membership(std::size_t n, std::size_t c, std::uint64_t seed) {
  if (c < 2)
    throw InvalidShape("need at least 2 clusters");
  if (n < c)
    throw InvalidShape("fewer points than clusters");
  std::mt19937_64 rng(seed);
  Matrix U(c, n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
      // top 53 bits -> uniform in [0,1), identical on every platform
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      U(i, j) = u;
      sum += u;
    }
    if (sum == 0.0) {
      for (std::size_t i = 0; i < c; ++i)
        U(i, j) = 1.0 / static_cast<double>(c);
    } else {
      for (std::size_t i = 0; i < c; ++i)
        U(i, j) /= sum;
    }
  }
  return U;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double gaussian_kernel(std::span<const double> x, std::span<const double> c,
                       double sigma) {
  return std::exp(-squared_distance(x, c) / (sigma * sigma));
}

double fcm_objective(const Matrix &X, const Matrix &U,
                     const ClusterModel &model) {
  check_xu(X, U);
  check_xc(X, model.centers);
  if (model.centers.rows() != U.rows())
    throw ShapeMismatch("center count != membership rows");
  const Matrix &C = model.centers;
  double m = model.m;
  return ordered_objective(U.cols(), U.rows(), [&](std::size_t i, std::size_t j) {
    return std::pow(U(i, j), m) * squared_distance(X.row(j), C.row(i));
  });
}

Matrix fcm_centers(const Matrix &X, const Matrix &U, double m) {
  check_xu(X, U);
  return weighted_centers(X, U, [&](std::size_t i, std::size_t j) {
    return std::pow(U(i, j), m);
  });
}

Matrix fcm_memberships(const Matrix &X, const Matrix &centers, double m) {
  check_xc(X, centers);
  return normalized_memberships(
      X.rows(), centers.rows(), m, [&](std::size_t j, std::size_t i) {
        return squared_distance(X.row(j), centers.row(i));
      });
}

double kfcm_objective(const Matrix &X, const Matrix &U,
                      const ClusterModel &model) {
  check_xu(X, U);
  check_xc(X, model.centers);
  if (model.centers.rows() != U.rows())
    throw ShapeMismatch("center count != membership rows");
  const Matrix &C = model.centers;
  double m = model.m, sigma = model.sigma;
  double sum =
      ordered_objective(U.cols(), U.rows(), [&](std::size_t i, std::size_t j) {
        double d2 = squared_distance(X.row(j), C.row(i));
        return std::pow(U(i, j), m) * one_minus_kernel(d2, sigma);
      });
  return 2.0 * sum;
}

Matrix kfcm_memberships(const Matrix &X, const Matrix &centers, double m,
                        double sigma) {
  check_xc(X, centers);
  return normalized_memberships(
      X.rows(), centers.rows(), m, [&](std::size_t j, std::size_t i) {
        double d2 = squared_distance(X.row(j), centers.row(i));
        return d2 == 0.0 ? 0.0 : one_minus_kernel(d2, sigma);
      });
}

Matrix kfcm_centers(const Matrix &X, const Matrix &U,
                    const Matrix &kernel_centers, double m, double sigma) {
  check_xu(X, U);
  check_xc(X, kernel_centers);
  if (kernel_centers.rows() != U.rows())
    throw ShapeMismatch("center count != membership rows");
  return weighted_centers(X, U, [&](std::size_t i, std::size_t j) {
    return std::pow(U(i, j), m) *
           gaussian_kernel(X.row(j), kernel_centers.row(i), sigma);
  });
}

double median_pairwise_distance(const Matrix &X) {
  std::size_t n = X.rows();
  if (n < 2)
    return 1.0;
  std::size_t stride = (n + 499) / 500;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; j += stride)
    idx.push_back(j);
  std::vector<double> dists;
  dists.reserve(idx.size() * (idx.size() - 1) / 2);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      dists.push_back(
          std::sqrt(squared_distance(X.row(idx[a]), X.row(idx[b]))));
  if (dists.empty())
    return 1.0;
  std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  double median = dists[mid];
  return median > 0.0 ? median : 1.0;
}

FitResult fit(const Matrix &X, const FitOptions &opts) {
  return fit_from(X, init_membership(X.rows(), opts.clusters, opts.seed),
                  opts);
}

FitResult fit_from(const Matrix &X, Matrix memberships,
                   const FitOptions &opts) {
  check_xu(X, memberships);
  if (opts.clusters < 2)
    throw InvalidShape("need at least 2 clusters");
  if (X.rows() < opts.clusters)
    throw InvalidShape("fewer points than clusters");
  if (memberships.rows() != opts.clusters)
    throw ShapeMismatch("membership rows != requested cluster count");
  if (opts.m <= 1.0)
    throw InvalidShape("fuzzifier m must exceed 1");
  if (opts.eps <= 0.0)
    throw InvalidShape("eps must be positive");
  if (opts.max_iter == 0)
    throw InvalidShape("max_iter must be positive");

  ClusterModel model;
  model.m = opts.m;
  model.method = opts.method;
  if (opts.method == Method::Kfcm) {
    model.sigma = opts.sigma ? *opts.sigma : median_pairwise_distance(X);
    if (model.sigma <= 0.0)
      throw InvalidShape("sigma must be positive");
  }

  Matrix U = std::move(memberships);
  FitReport report;
  for (std::size_t t = 1; t <= opts.max_iter; ++t) {
    try {
      if (opts.method == Method::Fcm || t == 1)
        model.centers = fcm_centers(X, U, opts.m);
      else
        model.centers =
            kfcm_centers(X, U, model.centers, opts.m, model.sigma);
    } catch (const DegenerateCluster &e) {
      throw DegenerateCluster("iteration " + std::to_string(t) + ": " +
                              e.message());
    }

    report.objective_trace.push_back(opts.method == Method::Fcm
                                         ? fcm_objective(X, U, model)
                                         : kfcm_objective(X, U, model));

    Matrix next = opts.method == Method::Fcm
                      ? fcm_memberships(X, model.centers, opts.m)
                      : kfcm_memberships(X, model.centers, opts.m, model.sigma);
    double delta = 0.0;
    for (std::size_t p = 0; p < U.rows() * U.cols(); ++p)
      delta = std::max(delta, std::abs(next.data()[p] - U.data()[p]));
    U = std::move(next);

    report.iterations = t;
    report.final_delta = delta;
    if (opts.on_iteration)
      opts.on_iteration(t, U);
    if (delta < opts.eps) {
      report.converged = true;
      break;
    }
  }
  return FitResult{std::move(model), std::move(U), std::move(report)};
}

} // namespace elmine::fuzzy
