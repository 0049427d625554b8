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

#include <Eigen/Dense>

#include "qrff/errors.hpp"

namespace qrff {

/// A finite real trigonometric series
///   f(x) = sum_k a_k cos(w_k^T x) + b_k sin(w_k^T x).
struct TrigSeries {
    Eigen::MatrixXd frequencies;  // K x d, one row per term
    Eigen::VectorXd cos_coeffs;   // a_k
    Eigen::VectorXd sin_coeffs;   // b_k

    int terms() const { return static_cast<int>(frequencies.rows()); }
    int dims() const { return static_cast<int>(frequencies.cols()); }

    double evaluate(const Eigen::VectorXd& x) const {
        if (x.size() != frequencies.cols()) throw ShapeError("input dimension mismatch");
        const Eigen::VectorXd phase = frequencies * x;
        return cos_coeffs.dot(phase.array().cos().matrix()) +
               sin_coeffs.dot(phase.array().sin().matrix());
    }

    Eigen::VectorXd evaluate_rows(const Eigen::MatrixXd& inputs) const {
        Eigen::VectorXd out(inputs.rows());
        for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
            out(i) = evaluate(inputs.row(i).transpose());
        }
        return out;
    }

    /// sum_k |a_k| + |b_k|, an upper bound on |f|_inf.
    double coefficient_l1() const {
        return cos_coeffs.cwiseAbs().sum() + sin_coeffs.cwiseAbs().sum();
    }
};

}  // namespace qrff
