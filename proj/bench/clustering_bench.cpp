// Times the OpenMP clustering kernels against the single-threaded reference
// implementations. Build with the rest of the tree and run directly:
//
//   ./build/bench/elmine_bench [n] [d] [c] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "elmine/fuzzyclust.hpp"
#include "elmine/fuzzyclust_serial.hpp"

using elmine::Matrix;

namespace {

double sink = 0.0;

double time_ms(const std::function<void()> &fn, int reps) {
  fn(); // warm up
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; r++)
    fn();
  auto t1 = std::chrono::steady_clock::now();
  std::chrono::duration<double, std::milli> dt = t1 - t0;
  return dt.count() / reps;
}

void report(const char *name, double serial_ms, double parallel_ms) {
  std::printf("%-18s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char **argv) {
  std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
  std::size_t d = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 5;
  std::size_t c = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 3;
  int reps = argc > 4 ? std::atoi(argv[4]) : 5;

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 10.0);
  Matrix X(n, d);
  for (std::size_t j = 0; j < n; j++)
    for (std::size_t k = 0; k < d; k++)
      X(j, k) = unif(rng);

  Matrix U = elmine::fuzzy::init_membership(n, c, 7);
  Matrix centers = elmine::fuzzy::fcm_centers(X, U, 2.0);
  double sigma = 4.0;

  elmine::fuzzy::ClusterModel fcm_model;
  fcm_model.centers = centers;
  elmine::fuzzy::ClusterModel kfcm_model = fcm_model;
  kfcm_model.method = elmine::fuzzy::Method::Kfcm;
  kfcm_model.sigma = sigma;

  std::printf("n=%zu d=%zu c=%zu reps=%d\n", n, d, c, reps);
  std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  report("fcm_centers",
         time_ms([&] { sink += elmine::fuzzy::serial::fcm_centers(X, U, 2.0)(0, 0); },
                 reps),
         time_ms([&] { sink += elmine::fuzzy::fcm_centers(X, U, 2.0)(0, 0); },
                 reps));
  report("fcm_memberships",
         time_ms(
             [&] {
               sink += elmine::fuzzy::serial::fcm_memberships(X, centers, 2.0)(0, 0);
             },
             reps),
         time_ms(
             [&] { sink += elmine::fuzzy::fcm_memberships(X, centers, 2.0)(0, 0); },
             reps));
  report("fcm_objective",
         time_ms(
             [&] {
               sink += elmine::fuzzy::serial::fcm_objective(X, U, centers, 2.0);
             },
             reps),
         time_ms(
             [&] { sink += elmine::fuzzy::fcm_objective(X, U, fcm_model); },
             reps));
  report("kfcm_centers",
         time_ms(
             [&] {
               sink += elmine::fuzzy::serial::kfcm_centers(X, U, centers, 2.0,
                                                           sigma)(0, 0);
             },
             reps),
         time_ms(
             [&] {
               sink += elmine::fuzzy::kfcm_centers(X, U, centers, 2.0, sigma)(0, 0);
             },
             reps));
  report("kfcm_memberships",
         time_ms(
             [&] {
               sink += elmine::fuzzy::serial::kfcm_memberships(X, centers, 2.0,
                                                               sigma)(0, 0);
             },
             reps),
         time_ms(
             [&] {
               sink += elmine::fuzzy::kfcm_memberships(X, centers, 2.0, sigma)(0, 0);
             },
             reps));
  report("kfcm_objective",
         time_ms(
             [&] {
               sink += elmine::fuzzy::serial::kfcm_objective(X, U, centers, 2.0,
                                                             sigma);
             },
             reps),
         time_ms(
             [&] {
               sink += elmine::fuzzy::kfcm_objective(X, U, kfcm_model);
             },
             reps));

  // keep the results alive so nothing gets optimized out
  std::fprintf(stderr, "checksum %g\n", sink);
  return 0;
}
