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

#include "qrff/sampling.hpp"

#include <cmath>
#include <numeric>

namespace qrff {

std::string strategy_name(SamplingStrategy strategy) {
    switch (strategy) {
        case SamplingStrategy::Distinct: return "distinct";
        case SamplingStrategy::Tree: return "tree";
        case SamplingStrategy::Grid: return "grid";
    }
    throw InvalidSpec("unknown sampling strategy");
}

SamplingStrategy strategy_from_name(const std::string& name) {
    if (name == "distinct") return SamplingStrategy::Distinct;
    if (name == "tree") return SamplingStrategy::Tree;
    if (name == "grid") return SamplingStrategy::Grid;
    throw InvalidSpec("unknown sampling strategy '" + name + "'");
}

void SamplingConfig::validate() const {
    if (num_samples < 1) throw InvalidSpec("need at least one sample");
    if (strategy == SamplingStrategy::Grid) {
        if (!(omega_max > 0.0) || !(step > 0.0)) {
            throw InvalidSpec("grid sampling needs omega_max > 0 and step > 0");
        }
        if (step > omega_max) throw InvalidSpec("grid step must not exceed omega_max");
    }
}

FrequencySample sample_distinct(const Spectrum& spectrum, const SamplingConfig& config,
                                std::uint64_t cap) {
    config.validate();
    const int d = spectrum.dims();
    const SpectrumCounts counts = spectrum_size(spectrum);
    const bool enumerable = counts.positive_count <= static_cast<double>(cap);
    const bool with_replacement = config.replacement.value_or(!enumerable);

    FrequencySample sample;
    sample.strategy = SamplingStrategy::Distinct;
    sample.seed = config.seed;
    Rng rng(config.seed);

    if (with_replacement) {
        sample.frequencies.resize(config.num_samples, d);
        for (int i = 0; i < config.num_samples; ++i) {
            for (int k = 0; k < d; ++k) {
                const auto& entries = spectrum.dimensions[k].entries;
                sample.frequencies(i, k) =
                    entries[rng.uniform_index(entries.size())].frequency;
            }
        }
        return sample;
    }

    if (!enumerable) {
        throw SpectrumTooLarge("sampling without replacement needs an enumerable positive half");
    }
    std::vector<WeightedFrequency> half = positive_half(spectrum, cap);
    if (static_cast<std::size_t>(config.num_samples) > half.size()) {
        throw InsufficientPopulation("asked for " + std::to_string(config.num_samples) +
                                     " distinct frequencies out of " +
                                     std::to_string(half.size()));
    }
    std::vector<Eigen::VectorXd> population;
    population.reserve(half.size());
    for (const WeightedFrequency& w : half) population.push_back(w.frequency);
    FrequencySample prefix =
        sample_prefix_without_replacement(population, config.num_samples, config.seed);
    prefix.strategy = SamplingStrategy::Distinct;
    return prefix;
}

FrequencySample sample_prefix_without_replacement(const std::vector<Eigen::VectorXd>& population,
                                                  int num_samples, std::uint64_t seed) {
    if (population.empty()) throw InsufficientPopulation("empty population");
    if (static_cast<std::size_t>(num_samples) > population.size()) {
        throw InsufficientPopulation("asked for " + std::to_string(num_samples) +
                                     " samples out of " + std::to_string(population.size()));
    }
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    FrequencySample sample;
    sample.seed = seed;
    sample.frequencies.resize(num_samples, population.front().size());
    for (int i = 0; i < num_samples; ++i) {
        sample.frequencies.row(i) = population[order[i]].transpose();
    }
    return sample;
}

namespace {

struct DimensionTree {
    std::vector<Eigen::VectorXd> eigenvalues;  // per gate, scaled
};

DimensionTree make_tree(const EncodingLayout& layout, int dimension) {
    DimensionTree tree;
    for (std::size_t l = 0; l < layout.gates[dimension].size(); ++l) {
        Eigen::VectorXd ev =
            eigendecompose(build_matrix(layout.gates[dimension][l])).eigenvalues;
        if (!layout.scalings.empty()) ev *= layout.scalings[dimension][l];
        tree.eigenvalues.push_back(std::move(ev));
    }
    return tree;
}

double draw_path(const DimensionTree& tree, Rng& rng) {
    double sum = 0.0;
    for (const Eigen::VectorXd& ev : tree.eigenvalues) {
        sum += ev(static_cast<Eigen::Index>(rng.uniform_index(ev.size())));
    }
    return sum;
}

}  // namespace

FrequencySample sample_tree(const EncodingLayout& layout, const SamplingConfig& config) {
    config.validate();
    layout.validate();
    const int d = layout.dims();

    FrequencySample sample;
    sample.strategy = SamplingStrategy::Tree;
    sample.seed = config.seed;
    Rng rng(config.seed);

    if (config.all_pairs) {
        // D paths per dimension, every difference Lambda_i - Lambda_j, i < j.
        const int paths = config.num_samples;
        const long count = static_cast<long>(paths) * (paths - 1) / 2;
        if (count < 1) throw InvalidSpec("all_pairs needs at least two paths");
        sample.frequencies.resize(count, d);
        for (int k = 0; k < d; ++k) {
            Rng dim_rng = rng.derive(static_cast<std::uint64_t>(k));
            const DimensionTree tree = make_tree(layout, k);
            std::vector<double> lambdas(paths);
            for (int i = 0; i < paths; ++i) lambdas[i] = draw_path(tree, dim_rng);
            long row = 0;
            for (int i = 0; i < paths; ++i) {
                for (int j = i + 1; j < paths; ++j) {
                    sample.frequencies(row++, k) = lambdas[i] - lambdas[j];
                }
            }
        }
        return sample;
    }

    // 2D paths per dimension, paired disjointly: the D differences are
    // i.i.d. from the redundancy-weighted law.
    sample.frequencies.resize(config.num_samples, d);
    for (int k = 0; k < d; ++k) {
        Rng dim_rng = rng.derive(static_cast<std::uint64_t>(k));
        const DimensionTree tree = make_tree(layout, k);
        for (int i = 0; i < config.num_samples; ++i) {
            const double a = draw_path(tree, dim_rng);
            const double b = draw_path(tree, dim_rng);
            sample.frequencies(i, k) = a - b;
        }
    }
    return sample;
}

std::vector<double> grid_nodes(double omega_max, double step) {
    const int count = std::max(1, static_cast<int>(std::ceil(omega_max / step)));
    std::vector<double> nodes(count);
    for (int j = 0; j < count; ++j) nodes[j] = j * step;
    return nodes;
}

FrequencySample sample_grid(const SamplingConfig& config, int dims) {
    config.validate();
    if (config.strategy != SamplingStrategy::Grid) {
        throw InvalidSpec("sample_grid called with a non-grid config");
    }
    const std::vector<double> nodes = grid_nodes(config.omega_max, config.step);

    FrequencySample sample;
    sample.strategy = SamplingStrategy::Grid;
    sample.seed = config.seed;
    sample.frequencies.resize(config.num_samples, dims);
    Rng rng(config.seed);
    for (int i = 0; i < config.num_samples; ++i) {
        for (int k = 0; k < dims; ++k) {
            sample.frequencies(i, k) = nodes[rng.uniform_index(nodes.size())];
        }
    }
    return sample;
}

FrequencySample exhaustive_sample(const Spectrum& spectrum, std::uint64_t cap) {
    const std::vector<WeightedFrequency> all = enumerate_full(spectrum, cap);
    FrequencySample sample;
    sample.strategy = SamplingStrategy::Distinct;
    sample.seed = 0;
    sample.rng_algorithm = "exhaustive";
    sample.frequencies.resize(static_cast<long>(all.size()), spectrum.dims());
    for (std::size_t i = 0; i < all.size(); ++i) {
        sample.frequencies.row(static_cast<long>(i)) = all[i].frequency.transpose();
    }
    return sample;
}

double default_omega_max(int num_points, double x_range) {
    if (num_points < 2) throw InvalidSpec("need at least two training points");
    if (!(x_range > 0.0)) throw InvalidSpec("x_range must be positive");
    return M_PI * num_points / x_range;
}

}  // namespace qrff
