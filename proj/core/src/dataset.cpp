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

#include "qrff/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "qrff/rng.hpp"

namespace qrff {

void Dataset::validate() const {
    if (inputs.rows() < 1) throw InvalidSpec("dataset is empty");
    if (inputs.rows() != targets.size()) throw ShapeError("inputs and targets disagree on M");
    if (!inputs.allFinite() || !targets.allFinite()) {
        throw InvalidSpec("dataset contains non-finite entries");
    }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_number(const std::string& text, std::size_t row, std::size_t col) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    // allow surrounding whitespace, nothing else
    while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end == begin || (end && *end != '\0') || !std::isfinite(value)) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": not a finite number: '" + text + "'");
    }
    return value;
}

}  // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(file, line)) throw ParseError("'" + path + "' is empty");
    const std::size_t columns = split_line(line).size();
    if (columns < 2) throw ParseError("need at least one feature column and a target column");

    std::vector<std::vector<double>> rows;
    std::size_t row_number = 1;  // header was row 1
    while (std::getline(file, line)) {
        ++row_number;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != columns) {
            throw ParseError("row " + std::to_string(row_number) + ": expected " +
                             std::to_string(columns) + " fields, got " +
                             std::to_string(fields.size()));
        }
        std::vector<double> row(columns);
        for (std::size_t c = 0; c < columns; ++c) {
            row[c] = parse_number(fields[c], row_number, c + 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("'" + path + "' has a header but no data rows");

    Dataset data;
    data.inputs.resize(static_cast<long>(rows.size()), static_cast<long>(columns - 1));
    data.targets.resize(static_cast<long>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c + 1 < columns; ++c) {
            data.inputs(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
        }
        data.targets(static_cast<long>(r)) = rows[r][columns - 1];
    }
    return data;
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    for (int c = 0; c < data.dims(); ++c) file << "x" << (c + 1) << ",";
    file << "y\n";
    char buffer[64];
    for (int r = 0; r < data.size(); ++r) {
        for (int c = 0; c < data.dims(); ++c) {
            std::snprintf(buffer, sizeof buffer, "%.17g", data.inputs(r, c));
            file << buffer << ",";
        }
        std::snprintf(buffer, sizeof buffer, "%.17g", data.targets(r));
        file << buffer << "\n";
    }
}

PcaModel pca_fit(const Eigen::MatrixXd& features, int num_components) {
    const long m = features.rows();
    if (m < 2) throw InvalidSpec("PCA needs at least two rows");

    const Eigen::VectorXd mean = features.colwise().mean();
    Eigen::VectorXd stddev(features.cols());
    for (long c = 0; c < features.cols(); ++c) {
        stddev(c) = std::sqrt((features.col(c).array() - mean(c)).square().sum() / m);
    }

    PcaModel model;
    for (long c = 0; c < features.cols(); ++c) {
        if (stddev(c) > 1e-12 * std::max(1.0, std::abs(mean(c)))) {
            model.kept_columns.push_back(static_cast<int>(c));
        } else {
            std::cerr << "warning: dropping zero-variance column " << c << "\n";
        }
    }
    const long kept = static_cast<long>(model.kept_columns.size());
    if (kept == 0) throw InvalidSpec("every feature column has zero variance");
    if (num_components < 1 || num_components > kept) {
        throw InvalidSpec("PCA component count out of range");
    }

    Eigen::MatrixXd standardized(m, kept);
    model.mean.resize(kept);
    model.scale.resize(kept);
    for (long k = 0; k < kept; ++k) {
        const int c = model.kept_columns[static_cast<std::size_t>(k)];
        model.mean(k) = mean(c);
        model.scale(k) = stddev(c);
        standardized.col(k) = (features.col(c).array() - mean(c)) / stddev(c);
    }

    const Eigen::MatrixXd covariance = standardized.transpose() * standardized / m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    if (solver.info() != Eigen::Success) throw Error("PCA eigendecomposition failed");

    model.components.resize(kept, num_components);
    model.eigenvalues.resize(num_components);
    for (int j = 0; j < num_components; ++j) {
        const long src = kept - 1 - j;  // solver returns ascending order
        Eigen::VectorXd component = solver.eigenvectors().col(src);
        // fix the sign so results do not depend on solver internals
        long argmax = 0;
        component.cwiseAbs().maxCoeff(&argmax);
        if (component(argmax) < 0.0) component = -component;
        model.components.col(j) = component;
        model.eigenvalues(j) = solver.eigenvalues()(src);
    }
    return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& features) {
    const long kept = static_cast<long>(model.kept_columns.size());
    Eigen::MatrixXd standardized(features.rows(), kept);
    for (long k = 0; k < kept; ++k) {
        const int c = model.kept_columns[static_cast<std::size_t>(k)];
        if (c >= features.cols()) throw ShapeError("feature matrix narrower than PCA model");
        standardized.col(k) = (features.col(c).array() - model.mean(k)) / model.scale(k);
    }
    return standardized * model.components;
}

Eigen::MatrixXd rescale_to_interval(const Eigen::MatrixXd& features, double lo, double hi) {
    Eigen::MatrixXd out(features.rows(), features.cols());
    for (long c = 0; c < features.cols(); ++c) {
        const double min = features.col(c).minCoeff();
        const double max = features.col(c).maxCoeff();
        if (max - min <= 0.0) {
            out.col(c).setConstant(0.5 * (lo + hi));
        } else {
            out.col(c) = (features.col(c).array() - min) / (max - min) * (hi - lo) + lo;
        }
    }
    return out;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             std::uint64_t seed) {
    data.validate();
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw InvalidSpec("train fraction must lie strictly between 0 and 1");
    }
    const int m = data.size();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    int train_count = static_cast<int>(train_fraction * m);
    train_count = std::clamp(train_count, 1, m - 1);

    Dataset train, test;
    train.inputs.resize(train_count, data.dims());
    train.targets.resize(train_count);
    test.inputs.resize(m - train_count, data.dims());
    test.targets.resize(m - train_count);
    for (int i = 0; i < m; ++i) {
        if (i < train_count) {
            train.inputs.row(i) = data.inputs.row(order[i]);
            train.targets(i) = data.targets(order[i]);
        } else {
            test.inputs.row(i - train_count) = data.inputs.row(order[i]);
            test.targets(i - train_count) = data.targets(order[i]);
        }
    }
    return {std::move(train), std::move(test)};
}

double mean_squared_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
    if (predictions.size() != targets.size()) throw ShapeError("prediction/target length mismatch");
    return (predictions - targets).squaredNorm() / predictions.size();
}

double mean_absolute_error(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
    if (predictions.size() != targets.size()) throw ShapeError("prediction/target length mismatch");
    return (predictions - targets).cwiseAbs().mean();
}

double sign_accuracy(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
    if (predictions.size() != labels.size()) throw ShapeError("prediction/label length mismatch");
    int correct = 0;
    for (Eigen::Index i = 0; i < predictions.size(); ++i) {
        const double sign = predictions(i) >= 0.0 ? 1.0 : -1.0;
        if (sign == labels(i)) ++correct;
    }
    return static_cast<double>(correct) / predictions.size();
}

}  // namespace qrff
