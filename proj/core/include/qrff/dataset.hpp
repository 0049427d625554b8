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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qrff/errors.hpp"

namespace qrff {

/// A regression dataset: M input rows and M real targets.
struct Dataset {
    Eigen::MatrixXd inputs;   // M x d
    Eigen::VectorXd targets;  // M

    int size() const { return static_cast<int>(inputs.rows()); }
    int dims() const { return static_cast<int>(inputs.cols()); }
    void validate() const;
};

/// Load a CSV with a header row and numeric columns; the last column is
/// the target. Throws ParseError naming the offending row and column.
Dataset load_csv(const std::string& path);

/// Write `x1,...,xd,y` rows with a header.
void write_csv(const Dataset& data, const std::string& path);

struct PcaModel {
    Eigen::VectorXd mean;          // over kept columns
    Eigen::VectorXd scale;         // per-column std dev of kept columns
    Eigen::MatrixXd components;    // kept_cols x num_components, descending variance
    Eigen::VectorXd eigenvalues;   // descending
    std::vector<int> kept_columns; // zero-variance columns are dropped
};

/// Standardize, drop zero-variance columns (with a warning on stderr),
/// and diagonalize the covariance of what remains.
PcaModel pca_fit(const Eigen::MatrixXd& features, int num_components);

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& features);

/// Affine map per column sending the column minimum to lo and the maximum
/// to hi. Constant columns map to the midpoint.
Eigen::MatrixXd rescale_to_interval(const Eigen::MatrixXd& features, double lo, double hi);

/// Deterministic shuffled split. The first fraction of rows (rounded down,
/// at least one on each side) becomes the train set.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             std::uint64_t seed);

double mean_squared_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);
double mean_absolute_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);
/// Fraction of sign agreements against +-1 labels.
double sign_accuracy(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);

}  // namespace qrff
