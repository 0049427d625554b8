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
#include <map>
#include <string>
#include <vector>

#include "qrff/analysis.hpp"
#include "qrff/rff.hpp"
#include "qrff/sampling.hpp"
#include "qrff/vqc.hpp"

namespace qrff {

enum class ExperimentKind { MimicVQC, SparseTarget, RealDataset, ScalingProtocol };

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

struct SolverConfig {
    std::string method = "closed_form";  // or "adam"
    double lambda0 = 1e-8;
    SgdOptions sgd;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::MimicVQC;
    std::string experiment_id;            // defaults to the kind name
    RandomInstanceConfig instance;        // circuit generator
    std::vector<SamplingStrategy> strategies{SamplingStrategy::Distinct, SamplingStrategy::Tree,
                                             SamplingStrategy::Grid};
    std::vector<double> fractions;        // of the positive spectrum size
    std::vector<int> sample_counts;       // explicit D values (used when fractions empty)
    SolverConfig solver;
    std::vector<std::uint64_t> seeds{0};
    std::string output_dir;
    int threads = 1;

    // dataset construction (mimic / sparse)
    std::vector<double> x_max;            // default 2*pi per dimension
    int num_points = 0;                   // 0 = Shannon minimum (per dim for grids, total for scaling)
    // grid-strategy parameters; 0 derives step = 2*pi/x_range and the
    // Shannon omega_max from the training set size
    double grid_omega_max = 0.0;
    double grid_step = 0.0;

    // sparse target
    std::vector<double> target_frequencies{4.0, 10.0, 60.0};
    bool train_vqc = false;
    VqcTrainOptions vqc_train;

    // real dataset
    int pca_dims = 5;
    double rescale_lo = -M_PI;
    double rescale_hi = M_PI;
    std::string task = "regression";      // or "classification"
    double train_fraction = 0.9;

    // scaling protocol lattice [0, L]^d
    int lattice_gates = 9;
    int lattice_dims = 3;
    double epsilon = 0.5;
};

/// One strategy/size/seed outcome. Wall time is measured but never
/// written to result files, so reruns stay byte-identical.
struct ResultRecord {
    std::string experiment_id;
    std::string strategy;                 // distinct | tree | grid | vqc | full
    int num_samples = 0;                  // D
    double fraction = 0.0;
    double train_mse = 0.0;
    double test_metric = 0.0;
    std::string test_metric_kind = "mse"; // mse | accuracy | mae_vs_full
    bool diverged = false;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> metadata;
};

std::string result_record_to_json(const ResultRecord& record, bool include_wall_time);

/// Random circuits mimicked by the three strategies across the D sweep.
std::vector<ResultRecord> run_mimic(const ExperimentConfig& config);

/// A sparse trigonometric target fit by the circuit (optionally) and by
/// the three strategies on the same samples.
std::vector<ResultRecord> run_sparse_target(const ExperimentConfig& config);

/// CSV ingestion, standardization + PCA + rescaling, then the circuit
/// versus strategy comparison. Classification runs regression on +-1
/// labels and thresholds at zero.
std::vector<ResultRecord> run_real_dataset(const ExperimentConfig& config,
                                           const std::string& csv_path);

struct ScalingOutcome {
    std::vector<ResultRecord> records;
    std::vector<int> selected_samples;        // per seed
    std::vector<double> selected_fractions;   // per seed
    double mean_selected_fraction = 0.0;
};

/// Planted Fourier labels on the lattice [0, L]^d, a D sweep
/// {1, k|O|/10}, and the smallest D whose test outputs stay within
/// epsilon mean absolute error of the full-spectrum model.
ScalingOutcome run_scaling_protocol(const ExperimentConfig& config);

/// results.csv, results.jsonl and meta.txt under the given directory.
void write_results(const std::vector<ResultRecord>& records, const ExperimentConfig& config,
                   const std::string& directory);

ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& config);

/// Dispatch on config.kind; csv_path feeds RealDataset only.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const std::string& csv_path = "");

}  // namespace qrff
