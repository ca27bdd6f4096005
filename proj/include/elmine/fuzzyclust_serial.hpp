#pragma once

#include "elmine/matrix.hpp"

// Single-threaded reference implementations of the clustering kernels. The
// shipped kernels in fuzzyclust.hpp run the same arithmetic under OpenMP;
// tests and the benchmark target compare the two.

namespace elmine::fuzzy::serial {

double fcm_objective(const Matrix &X, const Matrix &U, const Matrix &centers,
                     double m);

Matrix fcm_centers(const Matrix &X, const Matrix &U, double m);

Matrix fcm_memberships(const Matrix &X, const Matrix &centers, double m);

double kfcm_objective(const Matrix &X, const Matrix &U, const Matrix &centers,
                      double m, double sigma);

Matrix kfcm_memberships(const Matrix &X, const Matrix &centers, double m,
                        double sigma);

Matrix kfcm_centers(const Matrix &X, const Matrix &U,
                    const Matrix &kernel_centers, double m, double sigma);

} // namespace elmine::fuzzy::serial
