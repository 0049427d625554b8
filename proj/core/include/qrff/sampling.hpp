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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrff/rng.hpp"
#include "qrff/spectrum.hpp"

namespace qrff {

enum class SamplingStrategy { Distinct, Tree, Grid };

std::string strategy_name(SamplingStrategy strategy);
SamplingStrategy strategy_from_name(const std::string& name);

struct SamplingConfig {
    SamplingStrategy strategy = SamplingStrategy::Distinct;
    int num_samples = 1;   // D
    std::uint64_t seed = 0;

    /// Distinct only. Unset resolves to "without replacement" when the
    /// canonical half is enumerable, "with replacement" otherwise.
    std::optional<bool> replacement;

    /// Tree only: emit every pairwise path difference, C(D,2) of them,
    /// instead of D disjoint-pair differences.
    bool all_pairs = false;

    /// Grid only.
    double omega_max = 0.0;
    double step = 0.0;

    void validate() const;
};

/// An ordered list of sampled d-dimensional frequency vectors plus the
/// provenance needed to reproduce the draw.
struct FrequencySample {
    Eigen::MatrixXd frequencies;  // D x d, one row per sample
    SamplingStrategy strategy = SamplingStrategy::Distinct;
    std::uint64_t seed = 0;
    std::string rng_algorithm = Rng::kAlgorithm;

    int size() const { return static_cast<int>(frequencies.rows()); }
    int dims() const { return static_cast<int>(frequencies.cols()); }
};

/**
 * Uniform draws over the distinct frequencies, ignoring redundancy.
 *
 * With replacement each vector is assembled one dimension at a time from
 * that dimension's distinct values, so the full Cartesian spectrum is
 * never materialized. Without replacement the population is the canonical
 * positive half; draws are a prefix of one seeded permutation, so samples
 * at growing D nest and their spans only grow.
 */
FrequencySample sample_distinct(const Spectrum& spectrum, const SamplingConfig& config,
                                std::uint64_t cap = kDefaultEnumerationCap);

/**
 * Redundancy-weighted draws: per dimension, each sample takes two
 * root-to-leaf eigenvalue paths (one index per gate, uniform with
 * multiplicity) and emits their difference. Disjoint pairing keeps the
 * D emitted frequencies i.i.d.; all_pairs instead emits every difference
 * of D paths, which reuses paths but correlates the samples.
 */
FrequencySample sample_tree(const EncodingLayout& layout, const SamplingConfig& config);

/// Uniform draws (with replacement) from the regular grid
/// {0, s, 2s, ...} with ceil(omega_max / s) nodes per dimension.
FrequencySample sample_grid(const SamplingConfig& config, int dims);

/// Every distinct frequency of the full symmetric spectrum exactly once;
/// D equals the spectrum size.
FrequencySample exhaustive_sample(const Spectrum& spectrum,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Seeded-permutation prefix over an explicit population (used by the
/// protocols that sample custom frequency sets without replacement).
FrequencySample sample_prefix_without_replacement(const std::vector<Eigen::VectorXd>& population,
                                                  int num_samples, std::uint64_t seed);

/// Largest frequency learnable from num_points samples spanning x_range,
/// by the Shannon criterion: pi * M / range.
double default_omega_max(int num_points, double x_range);

/// Grid node positions for one dimension.
std::vector<double> grid_nodes(double omega_max, double step);

}  // namespace qrff
