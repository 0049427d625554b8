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

#include <string>

#include "qrff/analysis.hpp"
#include "qrff/operators.hpp"
#include "qrff/rff.hpp"
#include "qrff/sampling.hpp"
#include "qrff/spectrum.hpp"
#include "qrff/vqc.hpp"

namespace qrff {

// JSON (de)serialization of the domain types. Hamiltonians read either
//   { "qubits": p, "pauli_terms": [ { "coeff": c, "ops": [[q, "X"], ...] }, ... ] }
// or
//   { "qubits": p, "matrix": [[re, im], ...] }   (row-major entries)
// Layouts accept explicit gate lists or the presets
//   { "preset": "pauli" | "exponential", "dims": d, "L": l, "base": b }.

std::string hamiltonian_to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const std::string& text);

std::string layout_to_json(const EncodingLayout& layout);
EncodingLayout layout_from_json(const std::string& text);

std::string sampling_config_to_json(const SamplingConfig& config);
SamplingConfig sampling_config_from_json(const std::string& text);

std::string circuit_to_json(const CircuitDescription& circuit);
CircuitDescription circuit_from_json(const std::string& text);

std::string random_instance_config_to_json(const RandomInstanceConfig& config);
RandomInstanceConfig random_instance_config_from_json(const std::string& text);

BoundInputs bound_inputs_from_json(const std::string& text);

/// Model files carry the sampled frequencies, the weight layout
/// (cos, sin per frequency), lambda0 and the training metadata.
std::string model_to_json(const RFFModel& model);
RFFModel model_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Spectrum CSV: `dim,frequency,redundancy` rows.
void write_spectrum_csv(const Spectrum& spectrum, const std::string& path);

/// Sample CSV: one row per sample, d columns.
void write_sample_csv(const FrequencySample& sample, const std::string& path);
FrequencySample read_sample_csv(const std::string& path);

/// Predictions CSV: `x...,y_pred` rows.
void write_predictions_csv(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& predictions,
                           const std::string& path);

/// Empirical spectrum CSV: `frequency,magnitude` (d=1) or
/// `frequency_1,frequency_2,magnitude` (d=2).
void write_empirical_spectrum_csv(const EmpiricalSpectrum& spectrum, const std::string& path);

/// Deterministic shortest-ish float formatting used by every CSV writer.
std::string format_double(double value);

}  // namespace qrff
