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
#include <vector>

#include <Eigen/Dense>

#include "qrff/operators.hpp"

namespace qrff {

/// Absolute tolerance under which two frequencies are merged.
inline constexpr double kDefaultDedupTol = 1e-9;
/// Refuse enumerations whose intermediate size would exceed this.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/**
 * The encoding gates of a model, grouped by input dimension. Gate l of
 * dimension k injects x_k as exp(-i * scaling * x_k * H); only the scaled
 * eigenvalues of H matter for the frequency spectrum.
 */
struct EncodingLayout {
    std::vector<std::vector<HamiltonianSpec>> gates;  // [dimension][gate]
    std::vector<std::vector<double>> scalings;        // same shape, default 1

    int dims() const { return static_cast<int>(gates.size()); }
    void validate() const;

    /// L single-qubit Pauli-Z generators (eigenvalues +-1/2) per dimension.
    static EncodingLayout pauli(int dims, int gates_per_dim);
    /// Same generators scaled by base^l for gate l, so that frequency
    /// combinations fill a maximal integer range without collisions.
    static EncodingLayout exponential(int dims, int gates_per_dim, double base = 3.0);
};

/// One frequency of a per-dimension spectrum together with the number of
/// eigenvalue index pairs (i, j) that produce it.
struct FrequencyEntry {
    double frequency = 0.0;
    double redundancy = 0.0;  // pair counts grow combinatorially; double holds them
};

/// Sorted, symmetric list of the distinct frequencies of one dimension.
struct DimensionSpectrum {
    std::vector<FrequencyEntry> entries;  // ascending, symmetric about 0

    std::size_t distinct() const { return entries.size(); }
    double redundancy_sum() const;
    double max_frequency() const;
    bool contains(double frequency, double tol) const;
};

/**
 * The full model spectrum as per-dimension factors. The Cartesian product
 * across dimensions is never materialized here; enumeration helpers below
 * materialize it only under an explicit cap.
 */
struct Spectrum {
    std::vector<DimensionSpectrum> dimensions;
    double dedup_tol = kDefaultDedupTol;

    int dims() const { return static_cast<int>(dimensions.size()); }
};

struct SpectrumCounts {
    std::vector<std::size_t> distinct_per_dim;
    double total_distinct = 0.0;   // product over dimensions; may be astronomically large
    double positive_count = 0.0;   // (total - 1)/2 + 1 for a symmetric spectrum
};

/**
 * All values Lambda_i = sum_l scaling_l * lambda_l^{i_l} over eigenvalue
 * multi-indices, collapsed to (value, multiplicity) pairs under tol.
 *
 * Built by convolving one gate at a time, so highly degenerate spectra
 * (e.g. many identical Pauli gates, whose multiplicities are binomial
 * profiles) stay polynomial instead of 2^L. Throws SpectrumTooLarge when
 * an intermediate distinct-value count would exceed the cap.
 */
std::vector<FrequencyEntry> lambda_sums(const std::vector<Eigen::VectorXd>& eigenvalue_lists,
                                        const std::vector<double>& scalings,
                                        double tol = kDefaultDedupTol,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// All pairwise differences Lambda_i - Lambda_j of one dimension, with
/// pair-count redundancies; symmetric about 0 and containing 0.
DimensionSpectrum build_dimension_spectrum(const EncodingLayout& layout, int dimension,
                                           double tol = kDefaultDedupTol,
                                           std::uint64_t cap = kDefaultEnumerationCap);

Spectrum build_spectrum(const EncodingLayout& layout, double tol = kDefaultDedupTol,
                        std::uint64_t cap = kDefaultEnumerationCap);

/// Distinct counts without materializing the cross-dimension product.
SpectrumCounts spectrum_size(const Spectrum& spectrum);
SpectrumCounts spectrum_size(const EncodingLayout& layout);

/// A d-dimensional frequency vector paired with its redundancy.
struct WeightedFrequency {
    Eigen::VectorXd frequency;
    double redundancy = 0.0;
};

/**
 * One representative per {w, -w} pair plus the zero vector, in
 * lexicographic order. The canonical pick keeps the vector whose first
 * nonzero component is positive. Throws SpectrumTooLarge past the cap.
 */
std::vector<WeightedFrequency> positive_half(const Spectrum& spectrum,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Every distinct frequency vector of the full symmetric spectrum, in
/// lexicographic order.
std::vector<WeightedFrequency> enumerate_full(const Spectrum& spectrum,
                                              std::uint64_t cap = kDefaultEnumerationCap);

/// Mean of w^T w under the uniform distribution over the distinct
/// frequencies of the full symmetric spectrum. Factorizes over dimensions.
double variance_sigma_p(const Spectrum& spectrum);

/// Closed form of the same quantity for L Pauli gates on each of d
/// dimensions: d * L(L+1) / 3.
double sigma_p_pauli(int gates_per_dim, int dims);

/// Largest frequency of one dimension, from eigenvalue ranges alone.
double max_frequency(const EncodingLayout& layout, int dimension);

}  // namespace qrff
