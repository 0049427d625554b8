// Copyright 2026 The qrff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "qrff/dataset.hpp"
#include "qrff/sampling.hpp"
#include "qrff/spectrum.hpp"

namespace qrff {

/// Largest feature count 2D accepted by the closed-form solver.
inline constexpr int kDefaultDenseCap = 8192;

/**
 * The random trigonometric feature map
 *   phi(x) = (1/sqrt(D)) [cos(w_i^T x); sin(w_i^T x)]_{i in 1..D},
 * laid out (cos, sin) interleaved per frequency in sample order. The
 * layout is fixed; serialized weights depend on it.
 */
struct FeatureMap {
    FrequencySample sample;

    int dims() const { return sample.dims(); }
    int num_frequencies() const { return sample.size(); }
    int feature_count() const { return 2 * sample.size(); }

    Eigen::VectorXd features(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd feature_matrix(const Eigen::MatrixXd& inputs) const;

    /// phi(x)^T phi(y) = (1/D) sum_i cos(w_i^T (x - y)).
    double kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// Exact model kernel: the mean of cos(w^T (x - y)) over the distinct
/// frequencies of the full symmetric spectrum. Factorizes across
/// dimensions, so no cross-dimension enumeration happens.
double exact_kernel(const Spectrum& spectrum, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct TrainingInfo {
    std::string solver;            // "closed_form_primal", "closed_form_dual", "adam"
    double lambda0 = 0.0;
    double lambda_effective = 0.0; // M * lambda0, the ridge actually added
    double jitter = 0.0;           // diagonal added on factorization failure
    int epochs = 0;
    std::uint64_t seed = 0;
    double final_loss = 0.0;
};

/// A trained feature-space model f(x) = w^T phi(x).
struct RFFModel {
    FeatureMap map;
    Eigen::VectorXd weights;  // length 2D, (cos, sin) per frequency
    double lambda0 = 0.0;
    TrainingInfo info;

    double predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict_rows(const Eigen::MatrixXd& inputs) const;
    double train_mse(const Dataset& data) const;
};

/**
 * Ridge regression in closed form: w = (Phi^T Phi + M lambda0 I)^-1 Phi^T y,
 * solved through a Cholesky factorization of whichever of the 2D x 2D
 * primal or M x M dual system is smaller. A failed factorization retries
 * once with 1e-12 * trace added to the diagonal (recorded in info);
 * lambda0 = 0 gets no such rescue and raises SingularSystem instead.
 */
RFFModel fit_closed_form(const FeatureMap& map, const Dataset& data, double lambda0,
                         int dense_cap = kDefaultDenseCap);

struct SgdOptions {
    double learning_rate = 1e-3;  // Adam defaults
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int epochs = 100;
    int batch_size = 32;
    std::uint64_t seed = 0;
};

/// Minimize (1/M)||Phi w - y||^2 + lambda0 ||w||^2 with Adam; deterministic
/// under (seed, options). Raises DivergedTraining on a non-finite loss.
RFFModel fit_sgd(const FeatureMap& map, const Dataset& data, double lambda0,
                 const SgdOptions& options);

using KernelFn = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Kernel ridge regression in the dual: alpha = (K + M lambda0 I)^-1 y,
/// predicting f(x) = sum_i alpha_i k(x_i, x).
struct KRRModel {
    Eigen::MatrixXd train_inputs;
    Eigen::VectorXd alphas;
    KernelFn kernel;

    double predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict_rows(const Eigen::MatrixXd& inputs) const;
};

KRRModel fit_krr_dual(const KernelFn& kernel, const Dataset& data, double lambda0,
                      int dense_cap = kDefaultDenseCap);

/// Shared Adam stepper (also used for circuit-parameter training).
class AdamOptimizer {
  public:
    AdamOptimizer(int dimension, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8);
    void step(Eigen::VectorXd& params, const Eigen::VectorXd& gradient);

  private:
    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    Eigen::VectorXd m_, v_;
};

}  // namespace qrff
