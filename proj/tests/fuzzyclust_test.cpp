#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "elmine/errors.hpp"
#include "elmine/fuzzyclust.hpp"
#include "elmine/fuzzyclust_serial.hpp"

using namespace elmine;
using namespace elmine::fuzzy;

namespace {

Matrix matrix_1d(const std::vector<double> &values) {
  Matrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); i++)
    m(i, 0) = values[i];
  return m;
}

Matrix crisp(std::size_t c, const std::vector<std::size_t> &assign) {
  Matrix u(c, assign.size());
  for (std::size_t j = 0; j < assign.size(); j++)
    u(assign[j], j) = 1.0;
  return u;
}

// Three tight 2D blobs around well-separated means, 20 points each.
Matrix three_blobs(std::uint64_t seed, double means[3][2]) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  Matrix X(60, 2);
  for (int b = 0; b < 3; b++)
    for (int p = 0; p < 20; p++) {
      X(b * 20 + p, 0) = means[b][0] + noise(rng);
      X(b * 20 + p, 1) = means[b][1] + noise(rng);
    }
  return X;
}

// Plain 1D fixed-point iteration written straight from the update formulas,
// independent of the library code. Centers first, then memberships, stop
// when max |du| < eps.
struct Oracle {
  std::vector<double> centers;
  std::vector<std::vector<double>> u;
};

Oracle oracle_fcm_1d(const std::vector<double> &x,
                     std::vector<std::vector<double>> u, double m, double eps,
                     int max_iter) {
  std::size_t c = u.size(), n = x.size();
  std::vector<double> centers(c, 0.0);
  for (int it = 0; it < max_iter; it++) {
    for (std::size_t i = 0; i < c; i++) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; j++) {
        double w = std::pow(u[i][j], m);
        num += w * x[j];
        den += w;
      }
      centers[i] = num / den;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < n; j++) {
      std::vector<double> d2(c);
      std::size_t zeros = 0;
      for (std::size_t i = 0; i < c; i++) {
        d2[i] = (x[j] - centers[i]) * (x[j] - centers[i]);
        if (d2[i] == 0.0)
          zeros++;
      }
      for (std::size_t i = 0; i < c; i++) {
        double next;
        if (zeros > 0) {
          next = d2[i] == 0.0 ? 1.0 / double(zeros) : 0.0;
        } else {
          double s = 0.0;
          for (std::size_t k = 0; k < c; k++)
            s += std::pow(d2[i] / d2[k], 1.0 / (m - 1.0));
          next = 1.0 / s;
        }
        delta = std::max(delta, std::abs(next - u[i][j]));
        u[i][j] = next;
      }
    }
    if (delta < eps)
      break;
  }
  return {centers, u};
}

Oracle oracle_kfcm_1d(const std::vector<double> &x,
                      std::vector<std::vector<double>> u, double m,
                      double sigma, double eps, int max_iter) {
  std::size_t c = u.size(), n = x.size();
  std::vector<double> centers(c, 0.0);
  for (int it = 0; it < max_iter; it++) {
    for (std::size_t i = 0; i < c; i++) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; j++) {
        // first pass has no previous center to put inside the kernel, so it
        // takes the plain weighted mean, like the library
        double k = it == 0 ? 1.0
                           : std::exp(-(x[j] - centers[i]) *
                                      (x[j] - centers[i]) / (sigma * sigma));
        double w = std::pow(u[i][j], m) * k;
        num += w * x[j];
        den += w;
      }
      centers[i] = num / den;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < n; j++) {
      std::vector<double> dk(c);
      std::size_t zeros = 0;
      for (std::size_t i = 0; i < c; i++) {
        double d2 = (x[j] - centers[i]) * (x[j] - centers[i]);
        dk[i] = 1.0 - std::exp(-d2 / (sigma * sigma));
        if (d2 == 0.0)
          zeros++;
      }
      for (std::size_t i = 0; i < c; i++) {
        double next;
        if (zeros > 0) {
          next = dk[i] == 0.0 ? 1.0 / double(zeros) : 0.0;
        } else {
          double s = 0.0;
          for (std::size_t k = 0; k < c; k++)
            s += std::pow(dk[i] / dk[k], 1.0 / (m - 1.0));
          next = 1.0 / s;
        }
        delta = std::max(delta, std::abs(next - u[i][j]));
        u[i][j] = next;
      }
    }
    if (delta < eps)
      break;
  }
  return {centers, u};
}

std::vector<std::vector<double>> to_rows(const Matrix &U) {
  std::vector<std::vector<double>> rows(U.rows(),
                                        std::vector<double>(U.cols()));
  for (std::size_t i = 0; i < U.rows(); i++)
    for (std::size_t j = 0; j < U.cols(); j++)
      rows[i][j] = U(i, j);
  return rows;
}

} // namespace

TEST_SUITE("fuzzyclust") {

TEST_CASE("init_membership is deterministic and normalized") {
  Matrix a = init_membership(5, 2, 42);
  Matrix b = init_membership(5, 2, 42);
  CHECK(a == b);
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 5);
  for (std::size_t j = 0; j < a.cols(); j++) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); i++) {
      CHECK(a(i, j) >= 0.0);
      CHECK(a(i, j) <= 1.0);
      sum += a(i, j);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(init_membership(5, 2, 43) != a);
}

TEST_CASE("init_membership rejects bad shapes") {
  CHECK_THROWS_AS(init_membership(4, 5, 0), InvalidShape);
  CHECK_THROWS_AS(init_membership(4, 1, 0), InvalidShape);
}

TEST_CASE("fcm objective is zero for crisp points at their centers") {
  Matrix X = matrix_1d({0.0, 2.0});
  ClusterModel model;
  model.centers = matrix_1d({0.0, 2.0});
  Matrix U = crisp(2, {0, 1});
  CHECK(fcm_objective(X, U, model) == 0.0);
}

TEST_CASE("fcm objective, one center between two points") {
  // u = 1 for the single cluster, distances 0.5 each: 0.25 + 0.25
  Matrix X = matrix_1d({0.0, 1.0});
  ClusterModel model;
  model.centers = matrix_1d({0.5});
  Matrix U(1, 2, 1.0);
  CHECK(fcm_objective(X, U, model) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("objective checks shapes") {
  Matrix X = matrix_1d({0.0, 1.0});
  ClusterModel model;
  model.centers = Matrix(2, 3); // wrong dimension
  CHECK_THROWS_AS(fcm_objective(X, Matrix(2, 2, 0.5), model), ShapeMismatch);
  model.centers = matrix_1d({0.0});
  CHECK_THROWS_AS(fcm_objective(X, Matrix(2, 2, 0.5), model), ShapeMismatch);
  CHECK_THROWS_AS(fcm_objective(X, Matrix(1, 3, 1.0), model), ShapeMismatch);
}

TEST_CASE("crisp memberships give per-cluster means") {
  Matrix X = matrix_1d({0.0, 4.0, 10.0, 14.0});
  Matrix U = crisp(2, {0, 0, 1, 1});
  Matrix C = fcm_centers(X, U, 2.0);
  CHECK(C(0, 0) == doctest::Approx(2.0));
  CHECK(C(1, 0) == doctest::Approx(12.0));
}

TEST_CASE("uniform memberships pull every center to the global mean") {
  Matrix X(4, 2);
  double pts[4][2] = {{0, 0}, {2, 0}, {0, 6}, {2, 6}};
  for (int j = 0; j < 4; j++) {
    X(j, 0) = pts[j][0];
    X(j, 1) = pts[j][1];
  }
  for (double m : {1.5, 2.0, 3.0}) {
    Matrix C = fcm_centers(X, Matrix(3, 4, 1.0 / 3.0), m);
    for (std::size_t i = 0; i < 3; i++) {
      CHECK(C(i, 0) == doctest::Approx(1.0));
      CHECK(C(i, 1) == doctest::Approx(3.0));
    }
  }
}

TEST_CASE("an all-zero membership row is degenerate") {
  Matrix X = matrix_1d({0.0, 1.0});
  Matrix U(2, 2);
  U(0, 0) = 1.0;
  U(0, 1) = 1.0;
  CHECK_THROWS_AS(fcm_centers(X, U, 2.0), DegenerateCluster);
}

TEST_CASE("membership hand value") {
  // point at 0 against centers 0.5 and 10.5, m=2:
  // u_1 = 1 / (1 + (0.5/10.5)^2)
  Matrix X = matrix_1d({0.0});
  Matrix C = matrix_1d({0.5, 10.5});
  Matrix U = fcm_memberships(X, C, 2.0);
  double expected = 1.0 / (1.0 + (0.5 / 10.5) * (0.5 / 10.5));
  CHECK(U(0, 0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(U(0, 0) == doctest::Approx(0.99774).epsilon(1e-5));
  CHECK(U(0, 0) + U(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("membership zero-distance rules") {
  Matrix X = matrix_1d({0.0});
  // exact hit on the first center
  Matrix U = fcm_memberships(X, matrix_1d({0.0, 3.0}), 2.0);
  CHECK(U(0, 0) == 1.0);
  CHECK(U(1, 0) == 0.0);
  // two coincident centers on the point split it evenly
  U = fcm_memberships(X, matrix_1d({0.0, 0.0, 5.0}), 2.0);
  CHECK(U(0, 0) == 0.5);
  CHECK(U(1, 0) == 0.5);
  CHECK(U(2, 0) == 0.0);
}

TEST_CASE("equidistant point splits evenly") {
  Matrix X = matrix_1d({0.0});
  Matrix U = fcm_memberships(X, matrix_1d({-1.0, 1.0}), 2.0);
  CHECK(U(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(U(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  Matrix K = kfcm_memberships(X, matrix_1d({-1.0, 1.0}), 2.0, 2.0);
  CHECK(K(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(K(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gaussian kernel values") {
  std::vector<double> x = {1.0, 2.0};
  std::vector<double> same = {1.0, 2.0};
  CHECK(gaussian_kernel(x, same, 3.0) == 1.0);
  // squared distance equal to sigma^2
  std::vector<double> c = {1.0, 2.0 + 3.0};
  CHECK(gaussian_kernel(x, c, 3.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gaussian_kernel(x, c, 3.0) == gaussian_kernel(c, x, 3.0));
}

TEST_CASE("kernel objective values") {
  Matrix X = matrix_1d({0.0, 2.0});
  ClusterModel model;
  model.method = Method::Kfcm;
  model.sigma = 1.0;
  model.centers = matrix_1d({0.0, 2.0});
  CHECK(kfcm_objective(X, crisp(2, {0, 1}), model) == 0.0);

  // single point, u=1, squared distance sigma^2: 2 (1 - e^{-1})
  Matrix X1 = matrix_1d({0.0});
  ClusterModel m1;
  m1.method = Method::Kfcm;
  m1.sigma = 5.0;
  m1.centers = matrix_1d({5.0});
  double f = kfcm_objective(X1, Matrix(1, 1, 1.0), m1);
  CHECK(f == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
}

TEST_CASE("kernel objective stays under its crude bound") {
  std::mt19937_64 rng(3);
  Matrix X(20, 3);
  for (auto &v : X.data())
    v = double(rng() % 1000) / 100.0;
  Matrix U = init_membership(20, 4, 9);
  ClusterModel model;
  model.method = Method::Kfcm;
  model.sigma = 2.0;
  model.centers = Matrix(4, 3, 1.0);
  double bound = 0.0;
  for (std::size_t i = 0; i < 4; i++)
    for (std::size_t j = 0; j < 20; j++)
      bound += 2.0 * U(i, j) * U(i, j);
  double f = kfcm_objective(X, U, model);
  CHECK(f >= 0.0);
  CHECK(f < bound);
}

TEST_CASE("kernel membership is crisp on an exact center hit") {
  Matrix U = kfcm_memberships(matrix_1d({2.0}), matrix_1d({2.0, 7.0}), 2.0,
                              3.0);
  CHECK(U(0, 0) == 1.0);
  CHECK(U(1, 0) == 0.0);
}

TEST_CASE("huge sigma makes kernel memberships match the plain ones") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(5, means);
  Matrix C(3, 2);
  for (int i = 0; i < 3; i++) {
    C(i, 0) = means[i][0] + 0.3;
    C(i, 1) = means[i][1] - 0.2;
  }
  double diameter = std::sqrt(32.0) + 1.0; // generous bound for the blob data
  Matrix a = fcm_memberships(X, C, 2.0);
  Matrix b = kfcm_memberships(X, C, 2.0, 1000.0 * diameter);
  for (std::size_t p = 0; p < a.data().size(); p++)
    CHECK(std::abs(a.data()[p] - b.data()[p]) < 1e-3);
}

TEST_CASE("kernel center update fixes a lone point") {
  Matrix X = matrix_1d({7.0});
  Matrix U(1, 1, 1.0);
  Matrix prev = matrix_1d({3.0});
  Matrix C = kfcm_centers(X, U, prev, 2.0, 2.0);
  CHECK(C(0, 0) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("kernel center of symmetric data sits at zero") {
  Matrix X = matrix_1d({-3.0, 3.0});
  Matrix U(1, 2, 0.5);
  Matrix prev = matrix_1d({0.0});
  Matrix C = kfcm_centers(X, U, prev, 2.0, 4.0);
  CHECK(C(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("1d fcm run agrees with the brute-force oracle") {
  std::vector<double> x = {0.0, 1.0, 10.0, 11.0};
  Matrix X = matrix_1d(x);
  Matrix U0 = init_membership(4, 2, 7);

  FitOptions opts;
  opts.clusters = 2;
  opts.m = 2.0;
  opts.eps = 1e-6;
  FitResult res = fit_from(X, U0, opts);
  CHECK(res.report.converged);

  Oracle ora = oracle_fcm_1d(x, to_rows(U0), 2.0, 1e-6, 300);
  for (std::size_t i = 0; i < 2; i++)
    CHECK(std::abs(res.model.centers(i, 0) - ora.centers[i]) < 1e-4);
  for (std::size_t i = 0; i < 2; i++)
    for (std::size_t j = 0; j < 4; j++)
      CHECK(std::abs(res.memberships(i, j) - ora.u[i][j]) < 1e-6);
  // the pair of centers this instance converges to
  double lo = std::min(ora.centers[0], ora.centers[1]);
  double hi = std::max(ora.centers[0], ora.centers[1]);
  CHECK(std::abs(lo - 0.5) < 0.05);
  CHECK(std::abs(hi - 10.5) < 0.05);
}

TEST_CASE("1d kfcm run agrees with its oracle and lands near the means") {
  std::vector<double> x = {0.0, 1.0, 10.0, 11.0};
  Matrix X = matrix_1d(x);
  Matrix U0 = init_membership(4, 2, 7);

  FitOptions opts;
  opts.clusters = 2;
  opts.method = Method::Kfcm;
  opts.m = 2.0;
  opts.sigma = 5.0;
  opts.eps = 1e-6;
  FitResult res = fit_from(X, U0, opts);
  CHECK(res.report.converged);

  Oracle ora = oracle_kfcm_1d(x, to_rows(U0), 2.0, 5.0, 1e-6, 300);
  for (std::size_t i = 0; i < 2; i++)
    CHECK(std::abs(res.model.centers(i, 0) - ora.centers[i]) < 1e-3);
  double lo = std::min(res.model.centers(0, 0), res.model.centers(1, 0));
  double hi = std::max(res.model.centers(0, 0), res.model.centers(1, 0));
  CHECK(std::abs(lo - 0.5) < 0.2);
  CHECK(std::abs(hi - 10.5) < 0.2);
}

TEST_CASE("both methods recover three planted blobs") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(11, means);
  for (Method method : {Method::Fcm, Method::Kfcm}) {
    FitOptions opts;
    opts.clusters = 3;
    opts.method = method;
    opts.seed = 2;
    if (method == Method::Kfcm)
      opts.sigma = 4.0;
    FitResult res = fit(X, opts);
    CHECK(res.report.converged);
    CHECK(res.report.iterations < 300);
    CHECK(res.report.objective_trace.size() == res.report.iterations);
    // every planted mean has exactly one center close to it
    bool used[3] = {false, false, false};
    for (int b = 0; b < 3; b++) {
      int found = -1;
      for (std::size_t i = 0; i < 3; i++) {
        double dx = res.model.centers(i, 0) - means[b][0];
        double dy = res.model.centers(i, 1) - means[b][1];
        if (std::sqrt(dx * dx + dy * dy) < 0.1 && !used[i]) {
          found = int(i);
          break;
        }
      }
      REQUIRE(found >= 0);
      used[found] = true;
    }
  }
}

TEST_CASE("as many clusters as points collapses to zero objective") {
  Matrix X = matrix_1d({0.0, 5.0, 9.0});
  FitOptions opts;
  opts.clusters = 3;
  FitResult res = fit_from(X, crisp(3, {0, 1, 2}), opts);
  CHECK(res.report.converged);
  CHECK(res.report.objective_trace.back() == doctest::Approx(0.0));
  for (std::size_t j = 0; j < 3; j++)
    CHECK(res.memberships(j, j) == 1.0);
}

TEST_CASE("same seed means identical fits") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(13, means);
  FitOptions opts;
  opts.clusters = 3;
  opts.seed = 5;
  FitResult a = fit(X, opts);
  FitResult b = fit(X, opts);
  CHECK(a.model.centers == b.model.centers);
  CHECK(a.memberships == b.memberships);
  CHECK(a.report.iterations == b.report.iterations);
  CHECK(a.report.objective_trace == b.report.objective_trace);
  CHECK(a.report.final_delta == b.report.final_delta);
}

TEST_CASE("memberships stay normalized through every iteration") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(17, means);
  for (Method method : {Method::Fcm, Method::Kfcm}) {
    FitOptions opts;
    opts.clusters = 3;
    opts.method = method;
    std::size_t calls = 0;
    opts.on_iteration = [&](std::size_t t, const Matrix &U) {
      calls++;
      CHECK(t == calls);
      for (std::size_t j = 0; j < U.cols(); j++) {
        double sum = 0.0;
        for (std::size_t i = 0; i < U.rows(); i++)
          sum += U(i, j);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
      }
    };
    FitResult res = fit(X, opts);
    CHECK(calls == res.report.iterations);
  }
}

TEST_CASE("objective traces never increase") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(19, means);
  for (Method method : {Method::Fcm, Method::Kfcm}) {
    FitOptions opts;
    opts.clusters = 3;
    opts.method = method;
    FitResult res = fit(X, opts);
    const auto &trace = res.report.objective_trace;
    for (std::size_t t = 1; t < trace.size(); t++)
      CHECK(trace[t] <= trace[t - 1] + 1e-9);
  }
}

TEST_CASE("permuting initial membership rows permutes the result") {
  double means[3][2] = {{0, 0}, {4, 0}, {0, 4}};
  Matrix X = three_blobs(23, means);
  Matrix U0 = init_membership(60, 3, 3);
  Matrix P0(3, 60);
  std::size_t perm[3] = {2, 0, 1};
  for (std::size_t i = 0; i < 3; i++)
    for (std::size_t j = 0; j < 60; j++)
      P0(perm[i], j) = U0(i, j);

  FitOptions opts;
  opts.clusters = 3;
  FitResult a = fit_from(X, U0, opts);
  FitResult b = fit_from(X, P0, opts);
  CHECK(a.report.iterations == b.report.iterations);
  for (std::size_t i = 0; i < 3; i++) {
    for (std::size_t k = 0; k < 2; k++)
      CHECK(std::abs(a.model.centers(i, k) - b.model.centers(perm[i], k)) <=
            1e-12);
    for (std::size_t j = 0; j < 60; j++)
      CHECK(std::abs(a.memberships(i, j) - b.memberships(perm[i], j)) <=
            1e-12);
  }
}

TEST_CASE("fcm centers stay inside the data bounding box") {
  std::mt19937_64 rng(29);
  Matrix X(40, 3);
  for (auto &v : X.data())
    v = double(rng() % 2000) / 100.0 - 10.0;
  FitOptions opts;
  opts.clusters = 4;
  FitResult res = fit(X, opts);
  for (std::size_t k = 0; k < 3; k++) {
    double lo = X(0, k), hi = X(0, k);
    for (std::size_t j = 1; j < 40; j++) {
      lo = std::min(lo, X(j, k));
      hi = std::max(hi, X(j, k));
    }
    for (std::size_t i = 0; i < 4; i++) {
      CHECK(res.model.centers(i, k) >= lo);
      CHECK(res.model.centers(i, k) <= hi);
    }
  }
}

TEST_CASE("fit validates its options") {
  Matrix X = matrix_1d({0.0, 1.0, 2.0});
  FitOptions opts;
  opts.clusters = 4; // more clusters than points
  CHECK_THROWS_AS(fit(X, opts), InvalidShape);
  opts.clusters = 2;
  opts.m = 1.0;
  CHECK_THROWS_AS(fit(X, opts), InvalidShape);
  opts.m = 2.0;
  opts.eps = 0.0;
  CHECK_THROWS_AS(fit(X, opts), InvalidShape);
  opts.eps = 1e-5;
  opts.max_iter = 0;
  CHECK_THROWS_AS(fit(X, opts), InvalidShape);
  opts.max_iter = 300;
  CHECK_THROWS_AS(fit_from(X, Matrix(3, 3, 1.0 / 3.0), opts), ShapeMismatch);
  opts.method = Method::Kfcm;
  opts.sigma = -1.0;
  CHECK_THROWS_AS(fit(X, opts), InvalidShape);
}

TEST_CASE("a dead cluster reports the iteration that killed it") {
  Matrix X = matrix_1d({0.0, 1.0});
  Matrix U(2, 2);
  U(0, 0) = 1.0;
  U(0, 1) = 1.0; // row 1 is all zeros
  FitOptions opts;
  opts.clusters = 2;
  try {
    fit_from(X, U, opts);
    FAIL("expected DegenerateCluster");
  } catch (const DegenerateCluster &e) {
    CHECK(e.message().find("iteration 1") != std::string::npos);
  }
}

TEST_CASE("median pairwise distance") {
  CHECK(median_pairwise_distance(matrix_1d({0.0, 1.0})) ==
        doctest::Approx(1.0));
  CHECK(median_pairwise_distance(matrix_1d({0.0, 1.0, 2.0})) ==
        doctest::Approx(1.0));
  // identical points fall back to a usable width
  CHECK(median_pairwise_distance(Matrix(5, 2, 3.0)) == 1.0);
  CHECK(median_pairwise_distance(Matrix(1, 2, 0.0)) == 1.0);
  // subsampling keeps the result in the data's scale
  std::mt19937_64 rng(31);
  Matrix big(2000, 2);
  for (auto &v : big.data())
    v = double(rng() % 1000) / 100.0;
  double med = median_pairwise_distance(big);
  CHECK(med > 0.5);
  CHECK(med < 15.0);
}

TEST_CASE("parallel and reference kernels compute the same numbers") {
  std::mt19937_64 rng(37);
  Matrix X(50, 4);
  for (auto &v : X.data())
    v = double(rng() % 1000) / 50.0;
  Matrix U = init_membership(50, 3, 41);
  Matrix C = fcm_centers(X, U, 2.0);

  CHECK(serial::fcm_centers(X, U, 2.0) == C);
  CHECK(serial::fcm_memberships(X, C, 2.0) == fcm_memberships(X, C, 2.0));
  CHECK(serial::kfcm_centers(X, U, C, 2.0, 3.0) ==
        kfcm_centers(X, U, C, 2.0, 3.0));
  CHECK(serial::kfcm_memberships(X, C, 2.0, 3.0) ==
        kfcm_memberships(X, C, 2.0, 3.0));

  ClusterModel model;
  model.centers = C;
  model.m = 2.0;
  double f = fcm_objective(X, U, model);
  CHECK(serial::fcm_objective(X, U, C, 2.0) ==
        doctest::Approx(f).epsilon(1e-12));
  model.method = Method::Kfcm;
  model.sigma = 3.0;
  double fk = kfcm_objective(X, U, model);
  CHECK(serial::kfcm_objective(X, U, C, 2.0, 3.0) ==
        doctest::Approx(fk).epsilon(1e-12));
}

} // TEST_SUITE
