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

#include "qrff/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qrff {

namespace {

// Sort raw (value, multiplicity) pairs and merge runs whose neighbor gap
// is <= tol. Representatives are multiplicity-weighted means, which keeps
// symmetric inputs symmetric.
std::vector<FrequencyEntry> merge_close(std::vector<FrequencyEntry> raw, double tol) {
    std::sort(raw.begin(), raw.end(),
              [](const FrequencyEntry& a, const FrequencyEntry& b) { return a.frequency < b.frequency; });
    std::vector<FrequencyEntry> merged;
    std::size_t i = 0;
    while (i < raw.size()) {
        double weight = raw[i].redundancy;
        double weighted = raw[i].frequency * raw[i].redundancy;
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].frequency - raw[j - 1].frequency <= tol) {
            weight += raw[j].redundancy;
            weighted += raw[j].frequency * raw[j].redundancy;
            ++j;
        }
        merged.push_back(FrequencyEntry{weighted / weight, weight});
        i = j;
    }
    return merged;
}

}  // namespace

void EncodingLayout::validate() const {
    if (gates.empty()) throw InvalidSpec("encoding layout has no dimensions");
    if (!scalings.empty() && scalings.size() != gates.size()) {
        throw InvalidSpec("scaling list shape does not match gate list");
    }
    for (std::size_t d = 0; d < gates.size(); ++d) {
        if (gates[d].empty()) {
            throw InvalidSpec("dimension " + std::to_string(d) + " has no encoding gate");
        }
        for (const HamiltonianSpec& gate : gates[d]) gate.validate();
        if (!scalings.empty()) {
            if (scalings[d].size() != gates[d].size()) {
                throw InvalidSpec("scaling list shape does not match gate list");
            }
            for (double s : scalings[d]) {
                if (!std::isfinite(s) || s == 0.0) {
                    throw InvalidSpec("scaling factors must be finite and nonzero");
                }
            }
        }
    }
}

EncodingLayout EncodingLayout::pauli(int dims, int gates_per_dim) {
    EncodingLayout layout;
    layout.gates.assign(dims, std::vector<HamiltonianSpec>(
                                  gates_per_dim, HamiltonianSpec::single_pauli(PauliAxis::Z)));
    layout.scalings.assign(dims, std::vector<double>(gates_per_dim, 1.0));
    return layout;
}

EncodingLayout EncodingLayout::exponential(int dims, int gates_per_dim, double base) {
    EncodingLayout layout = pauli(dims, gates_per_dim);
    for (int d = 0; d < dims; ++d) {
        for (int l = 0; l < gates_per_dim; ++l) {
            layout.scalings[d][l] = std::pow(base, l);
        }
    }
    return layout;
}

double DimensionSpectrum::redundancy_sum() const {
    double sum = 0.0;
    for (const FrequencyEntry& e : entries) sum += e.redundancy;
    return sum;
}

double DimensionSpectrum::max_frequency() const {
    double best = 0.0;
    for (const FrequencyEntry& e : entries) best = std::max(best, std::abs(e.frequency));
    return best;
}

bool DimensionSpectrum::contains(double frequency, double tol) const {
    for (const FrequencyEntry& e : entries) {
        if (std::abs(e.frequency - frequency) <= tol) return true;
    }
    return false;
}

std::vector<FrequencyEntry> lambda_sums(const std::vector<Eigen::VectorXd>& eigenvalue_lists,
                                        const std::vector<double>& scalings, double tol,
                                        std::uint64_t cap) {
    if (eigenvalue_lists.empty()) throw InvalidSpec("lambda_sums needs at least one gate");
    if (!scalings.empty() && scalings.size() != eigenvalue_lists.size()) {
        throw InvalidSpec("scaling list shape does not match eigenvalue lists");
    }
    std::vector<FrequencyEntry> sums{FrequencyEntry{0.0, 1.0}};
    for (std::size_t l = 0; l < eigenvalue_lists.size(); ++l) {
        const Eigen::VectorXd& eig = eigenvalue_lists[l];
        if (eig.size() == 0) throw InvalidSpec("gate eigenvalue list is empty");
        const double scale = scalings.empty() ? 1.0 : scalings[l];
        const std::uint64_t next_size =
            static_cast<std::uint64_t>(sums.size()) * static_cast<std::uint64_t>(eig.size());
        if (next_size > cap) {
            throw SpectrumTooLarge("eigenvalue sum enumeration exceeds cap of " +
                                   std::to_string(cap));
        }
        std::vector<FrequencyEntry> next;
        next.reserve(next_size);
        for (const FrequencyEntry& s : sums) {
            for (Eigen::Index k = 0; k < eig.size(); ++k) {
                next.push_back(FrequencyEntry{s.frequency + scale * eig(k), s.redundancy});
            }
        }
        sums = merge_close(std::move(next), tol);
    }
    return sums;
}

DimensionSpectrum build_dimension_spectrum(const EncodingLayout& layout, int dimension, double tol,
                                           std::uint64_t cap) {
    layout.validate();
    if (dimension < 0 || dimension >= layout.dims()) {
        throw InvalidSpec("dimension index out of range");
    }
    std::vector<Eigen::VectorXd> eigenvalue_lists;
    for (const HamiltonianSpec& gate : layout.gates[dimension]) {
        eigenvalue_lists.push_back(eigendecompose(build_matrix(gate)).eigenvalues);
    }
    const std::vector<double> scalings =
        layout.scalings.empty() ? std::vector<double>() : layout.scalings[dimension];
    const std::vector<FrequencyEntry> sums = lambda_sums(eigenvalue_lists, scalings, tol, cap);

    const std::uint64_t k = sums.size();
    if (k * k > cap) {
        throw SpectrumTooLarge("difference enumeration of " + std::to_string(k) +
                               " sum values exceeds cap");
    }

    // Collapse |Lambda_i - Lambda_j|, then mirror. The group holding the
    // exact zeros (i = j) keeps its full count; every other group was
    // counted once from each sign and is halved before mirroring.
    std::vector<FrequencyEntry> absolute;
    absolute.reserve(k * k);
    bool has_exact_zero = false;
    for (const FrequencyEntry& a : sums) {
        for (const FrequencyEntry& b : sums) {
            const double diff = a.frequency - b.frequency;
            absolute.push_back(FrequencyEntry{std::abs(diff), a.redundancy * b.redundancy});
        }
    }
    std::vector<FrequencyEntry> groups = merge_close(std::move(absolute), tol);
    if (!groups.empty() && groups.front().frequency <= tol) has_exact_zero = true;

    DimensionSpectrum spectrum;
    std::vector<FrequencyEntry> positive;
    for (std::size_t g = has_exact_zero ? 1 : 0; g < groups.size(); ++g) {
        positive.push_back(FrequencyEntry{groups[g].frequency, groups[g].redundancy / 2.0});
    }
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
        spectrum.entries.push_back(FrequencyEntry{-it->frequency, it->redundancy});
    }
    if (has_exact_zero) {
        spectrum.entries.push_back(FrequencyEntry{0.0, groups.front().redundancy});
    }
    spectrum.entries.insert(spectrum.entries.end(), positive.begin(), positive.end());
    return spectrum;
}

Spectrum build_spectrum(const EncodingLayout& layout, double tol, std::uint64_t cap) {
    Spectrum spectrum;
    spectrum.dedup_tol = tol;
    for (int d = 0; d < layout.dims(); ++d) {
        spectrum.dimensions.push_back(build_dimension_spectrum(layout, d, tol, cap));
    }
    return spectrum;
}

SpectrumCounts spectrum_size(const Spectrum& spectrum) {
    SpectrumCounts counts;
    counts.total_distinct = 1.0;
    for (const DimensionSpectrum& dim : spectrum.dimensions) {
        counts.distinct_per_dim.push_back(dim.distinct());
        counts.total_distinct *= static_cast<double>(dim.distinct());
    }
    counts.positive_count = (counts.total_distinct - 1.0) / 2.0 + 1.0;
    return counts;
}

SpectrumCounts spectrum_size(const EncodingLayout& layout) {
    return spectrum_size(build_spectrum(layout));
}

namespace {

void enumerate_recursive(const Spectrum& spectrum, bool canonical_half, std::size_t dim,
                         Eigen::VectorXd& current, double redundancy, bool all_zero_so_far,
                         std::vector<WeightedFrequency>& out) {
    if (dim == spectrum.dimensions.size()) {
        out.push_back(WeightedFrequency{current, redundancy});
        return;
    }
    for (const FrequencyEntry& e : spectrum.dimensions[dim].entries) {
        const bool is_zero = std::abs(e.frequency) <= spectrum.dedup_tol;
        if (canonical_half && all_zero_so_far && !is_zero && e.frequency < 0.0) continue;
        current(static_cast<Eigen::Index>(dim)) = is_zero ? 0.0 : e.frequency;
        enumerate_recursive(spectrum, canonical_half, dim + 1, current,
                            redundancy * e.redundancy, all_zero_so_far && is_zero, out);
    }
}

std::vector<WeightedFrequency> enumerate_impl(const Spectrum& spectrum, bool canonical_half,
                                              std::uint64_t cap) {
    const SpectrumCounts counts = spectrum_size(spectrum);
    const double size = canonical_half ? counts.positive_count : counts.total_distinct;
    if (size > static_cast<double>(cap)) {
        throw SpectrumTooLarge("spectrum enumeration of ~" + std::to_string(size) +
                               " vectors exceeds cap");
    }
    std::vector<WeightedFrequency> out;
    out.reserve(static_cast<std::size_t>(size));
    Eigen::VectorXd current(spectrum.dims());
    enumerate_recursive(spectrum, canonical_half, 0, current, 1.0, true, out);
    return out;
}

}  // namespace

std::vector<WeightedFrequency> positive_half(const Spectrum& spectrum, std::uint64_t cap) {
    return enumerate_impl(spectrum, true, cap);
}

std::vector<WeightedFrequency> enumerate_full(const Spectrum& spectrum, std::uint64_t cap) {
    return enumerate_impl(spectrum, false, cap);
}

double variance_sigma_p(const Spectrum& spectrum) {
    // Under the uniform product law, E[w^T w] = sum_k E[w_k^2].
    double total = 0.0;
    for (const DimensionSpectrum& dim : spectrum.dimensions) {
        if (dim.entries.empty()) continue;
        double sum_sq = 0.0;
        for (const FrequencyEntry& e : dim.entries) sum_sq += e.frequency * e.frequency;
        total += sum_sq / static_cast<double>(dim.entries.size());
    }
    return total;
}

double sigma_p_pauli(int gates_per_dim, int dims) {
    const double l = gates_per_dim;
    return dims * l * (l + 1.0) / 3.0;
}

double max_frequency(const EncodingLayout& layout, int dimension) {
    layout.validate();
    if (dimension < 0 || dimension >= layout.dims()) {
        throw InvalidSpec("dimension index out of range");
    }
    double total = 0.0;
    for (std::size_t l = 0; l < layout.gates[dimension].size(); ++l) {
        const Eigen::VectorXd ev =
            eigendecompose(build_matrix(layout.gates[dimension][l])).eigenvalues;
        const double scale =
            layout.scalings.empty() ? 1.0 : std::abs(layout.scalings[dimension][l]);
        total += scale * (ev(ev.size() - 1) - ev(0));
    }
    return total;
}

}  // namespace qrff
