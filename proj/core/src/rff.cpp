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

#include "qrff/rff.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "qrff/rng.hpp"

namespace qrff {

Eigen::VectorXd FeatureMap::features(const Eigen::VectorXd& x) const {
    if (x.size() != sample.dims()) throw ShapeError("feature map input dimension mismatch");
    const int d = num_frequencies();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const Eigen::VectorXd phase = sample.frequencies * x;
    Eigen::VectorXd out(2 * d);
    for (int i = 0; i < d; ++i) {
        out(2 * i) = norm * std::cos(phase(i));
        out(2 * i + 1) = norm * std::sin(phase(i));
    }
    return out;
}

Eigen::MatrixXd FeatureMap::feature_matrix(const Eigen::MatrixXd& inputs) const {
    if (inputs.cols() != sample.dims()) throw ShapeError("feature map input dimension mismatch");
    const int d = num_frequencies();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const Eigen::MatrixXd phases = inputs * sample.frequencies.transpose();  // M x D
    Eigen::MatrixXd out(inputs.rows(), 2 * d);
    for (int i = 0; i < d; ++i) {
        out.col(2 * i) = norm * phases.col(i).array().cos();
        out.col(2 * i + 1) = norm * phases.col(i).array().sin();
    }
    return out;
}

double FeatureMap::kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (x.size() != sample.dims() || y.size() != sample.dims()) {
        throw ShapeError("kernel input dimension mismatch");
    }
    const Eigen::VectorXd phase = sample.frequencies * (x - y);
    return phase.array().cos().sum() / num_frequencies();
}

double exact_kernel(const Spectrum& spectrum, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != spectrum.dims() || y.size() != spectrum.dims()) {
        throw ShapeError("kernel input dimension mismatch");
    }
    // mean over the product spectrum = product of per-dimension means,
    // each real because the dimension spectra are symmetric
    double product = 1.0;
    for (int k = 0; k < spectrum.dims(); ++k) {
        const auto& entries = spectrum.dimensions[k].entries;
        double mean = 0.0;
        for (const FrequencyEntry& e : entries) mean += std::cos(e.frequency * (x(k) - y(k)));
        product *= mean / static_cast<double>(entries.size());
    }
    return product;
}

double RFFModel::predict(const Eigen::VectorXd& x) const { return weights.dot(map.features(x)); }

Eigen::VectorXd RFFModel::predict_rows(const Eigen::MatrixXd& inputs) const {
    return map.feature_matrix(inputs) * weights;
}

double RFFModel::train_mse(const Dataset& data) const {
    return mean_squared_error(predict_rows(data.inputs), data.targets);
}

namespace {

// Solve (A + mu I) z = b through LDLT. A factorization that fails or is
// rank-deficient retries once with jitter when allowed (lambda0 > 0);
// at zero ridge it raises SingularSystem instead. Returns the jitter used.
double solve_spd(const Eigen::MatrixXd& gram, double mu, const Eigen::MatrixXd& rhs,
                 Eigen::MatrixXd& solution, bool allow_jitter) {
    const auto factor_ok = [](const Eigen::LDLT<Eigen::MatrixXd>& ldlt) {
        if (ldlt.info() != Eigen::Success) return false;
        const Eigen::VectorXd diag = ldlt.vectorD();
        const double largest = diag.cwiseAbs().maxCoeff();
        return largest > 0.0 && diag.minCoeff() > 1e-13 * largest;
    };

    Eigen::MatrixXd system = gram;
    system.diagonal().array() += mu;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
    if (factor_ok(ldlt)) {
        solution = ldlt.solve(rhs);
        if (solution.allFinite()) return 0.0;
    }
    if (!allow_jitter) {
        throw SingularSystem("normal equations are singular at lambda0 = 0");
    }
    const double jitter = 1e-12 * system.trace();
    system.diagonal().array() += jitter;
    Eigen::LDLT<Eigen::MatrixXd> retry(system);
    if (retry.info() != Eigen::Success) {
        throw SingularSystem("normal equations remain singular after jitter");
    }
    solution = retry.solve(rhs);
    if (!solution.allFinite()) throw SingularSystem("ridge solve produced non-finite weights");
    return jitter;
}

}  // namespace

RFFModel fit_closed_form(const FeatureMap& map, const Dataset& data, double lambda0,
                         int dense_cap) {
    data.validate();
    if (lambda0 < 0.0 || !std::isfinite(lambda0)) throw InvalidSpec("lambda0 must be >= 0");
    const int p = map.feature_count();
    if (p > dense_cap) {
        throw InvalidSpec("feature count " + std::to_string(p) + " exceeds the dense cap");
    }
    const int m = data.size();
    const Eigen::MatrixXd phi = map.feature_matrix(data.inputs);
    const double mu = static_cast<double>(m) * lambda0;

    RFFModel model;
    model.map = map;
    model.lambda0 = lambda0;
    model.info.lambda0 = lambda0;
    model.info.lambda_effective = mu;

    Eigen::MatrixXd solution;
    if (p <= m) {
        // primal: (Phi^T Phi + M lambda0 I) w = Phi^T y
        model.info.solver = "closed_form_primal";
        const Eigen::MatrixXd gram = phi.transpose() * phi;
        const Eigen::MatrixXd rhs = phi.transpose() * data.targets;
        model.info.jitter = solve_spd(gram, mu, rhs, solution, lambda0 > 0.0);
        model.weights = solution.col(0);
    } else {
        // dual: w = Phi^T (Phi Phi^T + M lambda0 I)^-1 y
        model.info.solver = "closed_form_dual";
        const Eigen::MatrixXd gram = phi * phi.transpose();
        model.info.jitter = solve_spd(gram, mu, data.targets, solution, lambda0 > 0.0);
        model.weights = phi.transpose() * solution.col(0);
    }
    model.info.final_loss = mean_squared_error(phi * model.weights, data.targets);
    return model;
}

AdamOptimizer::AdamOptimizer(int dimension, double learning_rate, double beta1, double beta2,
                             double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
      m_(Eigen::VectorXd::Zero(dimension)), v_(Eigen::VectorXd::Zero(dimension)) {}

void AdamOptimizer::step(Eigen::VectorXd& params, const Eigen::VectorXd& gradient) {
    ++t_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * gradient;
    v_ = beta2_ * v_ + (1.0 - beta2_) * gradient.cwiseProduct(gradient);
    const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    params -= (lr_ / correction1) * m_.cwiseQuotient(
                  ((v_ / correction2).cwiseSqrt().array() + eps_).matrix());
}

RFFModel fit_sgd(const FeatureMap& map, const Dataset& data, double lambda0,
                 const SgdOptions& options) {
    data.validate();
    if (lambda0 < 0.0 || !std::isfinite(lambda0)) throw InvalidSpec("lambda0 must be >= 0");
    if (options.epochs < 0 || options.batch_size < 1) throw InvalidSpec("bad SGD options");

    const int m = data.size();
    const Eigen::MatrixXd phi = map.feature_matrix(data.inputs);
    const int p = map.feature_count();

    Eigen::VectorXd weights = Eigen::VectorXd::Zero(p);
    AdamOptimizer adam(p, options.learning_rate, options.beta1, options.beta2, options.epsilon);
    Rng rng(options.seed);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);

    double loss = mean_squared_error(phi * weights, data.targets) + lambda0 * weights.squaredNorm();
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        Rng epoch_rng = rng.derive(static_cast<std::uint64_t>(epoch));
        epoch_rng.shuffle(order);
        for (int start = 0; start < m; start += options.batch_size) {
            const int count = std::min(options.batch_size, m - start);
            Eigen::MatrixXd batch(count, p);
            Eigen::VectorXd batch_y(count);
            for (int i = 0; i < count; ++i) {
                batch.row(i) = phi.row(order[start + i]);
                batch_y(i) = data.targets(order[start + i]);
            }
            const Eigen::VectorXd residual = batch * weights - batch_y;
            const Eigen::VectorXd gradient =
                (2.0 / count) * (batch.transpose() * residual) + 2.0 * lambda0 * weights;
            adam.step(weights, gradient);
        }
        loss = mean_squared_error(phi * weights, data.targets) + lambda0 * weights.squaredNorm();
        if (!std::isfinite(loss)) throw DivergedTraining("non-finite loss during Adam training");
    }

    RFFModel model;
    model.map = map;
    model.weights = weights;
    model.lambda0 = lambda0;
    model.info.solver = "adam";
    model.info.lambda0 = lambda0;
    model.info.lambda_effective = static_cast<double>(m) * lambda0;
    model.info.epochs = options.epochs;
    model.info.seed = options.seed;
    model.info.final_loss = loss;
    return model;
}

double KRRModel::predict(const Eigen::VectorXd& x) const {
    double out = 0.0;
    for (Eigen::Index i = 0; i < train_inputs.rows(); ++i) {
        out += alphas(i) * kernel(train_inputs.row(i).transpose(), x);
    }
    return out;
}

Eigen::VectorXd KRRModel::predict_rows(const Eigen::MatrixXd& inputs) const {
    Eigen::VectorXd out(inputs.rows());
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) out(i) = predict(inputs.row(i).transpose());
    return out;
}

KRRModel fit_krr_dual(const KernelFn& kernel, const Dataset& data, double lambda0, int dense_cap) {
    data.validate();
    const int m = data.size();
    if (m > dense_cap) throw InvalidSpec("dataset exceeds the dense cap for KRR");

    Eigen::MatrixXd gram(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double value =
                kernel(data.inputs.row(i).transpose(), data.inputs.row(j).transpose());
            gram(i, j) = value;
            gram(j, i) = value;
        }
    }
    Eigen::MatrixXd solution;
    solve_spd(gram, static_cast<double>(m) * lambda0, data.targets, solution, lambda0 > 0.0);

    KRRModel model;
    model.train_inputs = data.inputs;
    model.alphas = solution.col(0);
    model.kernel = kernel;
    return model;
}

}  // namespace qrff
