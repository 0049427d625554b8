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

#include "qrff/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "qrff/config.hpp"
#include "qrff/parallel.hpp"
#include "qrff/rng.hpp"

namespace qrff {

using nlohmann::json;

namespace {

// independent seed streams derived from each experiment seed
constexpr std::uint64_t kCircuitStream = 1;
constexpr std::uint64_t kSamplingStream = 10;  // + strategy index
constexpr std::uint64_t kSolverStream = 20;
constexpr std::uint64_t kDataStream = 30;
constexpr std::uint64_t kLabelStream = 40;

std::uint64_t derived_seed(std::uint64_t base, std::uint64_t stream) {
    return Rng(base).derive(stream).seed();
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<int> sweep_sizes(const ExperimentConfig& config, double positive_count) {
    std::vector<int> sizes;
    if (!config.fractions.empty()) {
        for (double f : config.fractions) {
            sizes.push_back(std::max(1, static_cast<int>(std::llround(f * positive_count))));
        }
    } else if (!config.sample_counts.empty()) {
        sizes = config.sample_counts;
    } else {
        sizes.push_back(std::max(1, static_cast<int>(positive_count)));
    }
    for (int d : sizes) {
        if (d < 1) throw InvalidSpec("sample sweep contains a non-positive size");
    }
    return sizes;
}

RFFModel fit_with_solver(const FeatureMap& map, const Dataset& data, const SolverConfig& solver,
                         std::uint64_t seed) {
    if (solver.method == "closed_form") {
        return fit_closed_form(map, data, solver.lambda0);
    }
    if (solver.method == "adam") {
        SgdOptions options = solver.sgd;
        options.seed = seed;
        return fit_sgd(map, data, solver.lambda0, options);
    }
    throw InvalidSpec("unknown solver method '" + solver.method + "'");
}

FrequencySample draw_sample(SamplingStrategy strategy, int num_samples, std::uint64_t seed,
                            const Spectrum& spectrum, const EncodingLayout& layout,
                            double grid_omega_max, double grid_step) {
    SamplingConfig sampling;
    sampling.strategy = strategy;
    sampling.num_samples = num_samples;
    sampling.seed = seed;
    switch (strategy) {
        case SamplingStrategy::Distinct:
            return sample_distinct(spectrum, sampling);
        case SamplingStrategy::Tree:
            return sample_tree(layout, sampling);
        case SamplingStrategy::Grid:
            sampling.omega_max = grid_omega_max;
            sampling.step = grid_step;
            return sample_grid(sampling, spectrum.dims());
    }
    throw InvalidSpec("unknown sampling strategy");
}

std::string sample_metadata(const FrequencySample& sample) {
    json out{{"strategy", strategy_name(sample.strategy)},
             {"seed", sample.seed},
             {"rng", sample.rng_algorithm},
             {"D", sample.size()}};
    return out.dump();
}

std::string solver_metadata(const SolverConfig& solver, std::uint64_t seed) {
    json out{{"method", solver.method}, {"lambda0", solver.lambda0}};
    if (solver.method == "adam") {
        out["learning_rate"] = solver.sgd.learning_rate;
        out["epochs"] = solver.sgd.epochs;
        out["batch_size"] = solver.sgd.batch_size;
        out["seed"] = seed;
    }
    return out.dump();
}

// lattice points shifted half a step, as a deterministic test set
Dataset shifted_lattice(const CompiledCircuit& circuit, const ParameterVector& params,
                        const std::vector<double>& x_max, const std::vector<int>& points) {
    const int d = static_cast<int>(x_max.size());
    long total = 1;
    for (int n : points) total *= n;
    Dataset data;
    data.inputs.resize(total, d);
    data.targets.resize(total);
    std::vector<int> index(static_cast<std::size_t>(d), 0);
    for (long row = 0; row < total; ++row) {
        for (int k = 0; k < d; ++k) {
            data.inputs(row, k) =
                x_max[k] * (index[static_cast<std::size_t>(k)] + 0.5) / points[static_cast<std::size_t>(k)];
        }
        data.targets(row) = circuit.evaluate(params, data.inputs.row(row).transpose());
        for (int k = d - 1; k >= 0; --k) {
            if (++index[static_cast<std::size_t>(k)] < points[static_cast<std::size_t>(k)]) break;
            index[static_cast<std::size_t>(k)] = 0;
        }
    }
    return data;
}

struct GridDefaults {
    double omega_max = 0.0;
    double step = 0.0;
};

GridDefaults grid_defaults(const ExperimentConfig& config, double x_range, int points_per_dim) {
    GridDefaults defaults;
    defaults.step = config.grid_step > 0.0 ? config.grid_step : 2.0 * M_PI / x_range;
    defaults.omega_max = config.grid_omega_max > 0.0 ? config.grid_omega_max
                                                     : default_omega_max(points_per_dim, x_range);
    return defaults;
}

}  // namespace

std::string experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::MimicVQC: return "mimic";
        case ExperimentKind::SparseTarget: return "sparse_target";
        case ExperimentKind::RealDataset: return "real_dataset";
        case ExperimentKind::ScalingProtocol: return "scaling";
    }
    throw InvalidSpec("unknown experiment kind");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "mimic") return ExperimentKind::MimicVQC;
    if (name == "sparse_target") return ExperimentKind::SparseTarget;
    if (name == "real_dataset") return ExperimentKind::RealDataset;
    if (name == "scaling") return ExperimentKind::ScalingProtocol;
    throw InvalidSpec("unknown experiment kind '" + name + "'");
}

std::string result_record_to_json(const ResultRecord& record, bool include_wall_time) {
    json out;
    out["experiment_id"] = record.experiment_id;
    out["strategy"] = record.strategy;
    out["D"] = record.num_samples;
    out["fraction_of_omega_plus"] = record.fraction;
    out["train_mse"] = record.train_mse;
    out["test_metric"] = record.test_metric;
    out["test_metric_kind"] = record.test_metric_kind;
    out["diverged"] = record.diverged;
    if (include_wall_time) out["wall_time_s"] = record.wall_time_s;
    out["seed"] = record.seed;
    json metadata = json::object();
    for (const auto& [key, value] : record.metadata) metadata[key] = value;
    out["metadata"] = metadata;
    return out.dump();
}

std::vector<ResultRecord> run_mimic(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw InvalidSpec("need at least one seed");
    const std::string id =
        config.experiment_id.empty() ? experiment_kind_name(config.kind) : config.experiment_id;

    std::vector<std::vector<ResultRecord>> per_seed(config.seeds.size());
    parallel_for(config.seeds.size(), config.threads, [&](std::size_t s) {
        const std::uint64_t seed = config.seeds[s];
        RandomInstanceConfig gen = config.instance;
        gen.seed = derived_seed(seed, kCircuitStream);
        auto [circuit, theta] = random_instance(gen);
        const CompiledCircuit compiled(std::move(circuit));
        const EncodingLayout layout = compiled.description().encoding_layout();
        const Spectrum spectrum = build_spectrum(layout);
        const SpectrumCounts counts = spectrum_size(spectrum);

        const int d = compiled.input_dims();
        std::vector<double> x_max = config.x_max;
        if (x_max.empty()) x_max.assign(static_cast<std::size_t>(d), 2.0 * M_PI);
        std::vector<int> points(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            points[static_cast<std::size_t>(k)] =
                std::max(min_grid_points(x_max[static_cast<std::size_t>(k)], max_frequency(layout, k)),
                         config.num_points);
        }
        const Dataset train = sample_grid_dataset(compiled, theta, x_max, points);
        const Dataset test = shifted_lattice(compiled, theta, x_max, points);
        const GridDefaults grid = grid_defaults(config, x_max[0], points[0]);

        const std::vector<int> sizes = sweep_sizes(config, counts.positive_count);
        for (std::size_t si = 0; si < config.strategies.size(); ++si) {
            const SamplingStrategy strategy = config.strategies[si];
            const std::uint64_t sampling_seed = derived_seed(seed, kSamplingStream + si);
            for (int num_samples : sizes) {
                Stopwatch watch;
                ResultRecord record;
                record.experiment_id = id;
                record.strategy = strategy_name(strategy);
                record.num_samples = num_samples;
                record.fraction = num_samples / counts.positive_count;
                record.seed = seed;
                try {
                    const FrequencySample sample =
                        draw_sample(strategy, num_samples, sampling_seed, spectrum, layout,
                                    grid.omega_max, grid.step);
                    const FeatureMap map{sample};
                    const std::uint64_t solver_seed = derived_seed(seed, kSolverStream);
                    const RFFModel model = fit_with_solver(map, train, config.solver, solver_seed);
                    record.train_mse = model.train_mse(train);
                    record.test_metric =
                        mean_squared_error(model.predict_rows(test.inputs), test.targets);
                    record.metadata["sampling"] = sample_metadata(sample);
                    record.metadata["solver"] = solver_metadata(config.solver, solver_seed);
                } catch (const DivergedTraining&) {
                    record.diverged = true;
                }
                record.metadata["omega_plus"] = format_double(counts.positive_count);
                record.metadata["grid_points"] = std::to_string(points[0]);
                record.wall_time_s = watch.seconds();
                per_seed[s].push_back(std::move(record));
            }
        }
    });

    std::vector<ResultRecord> records;
    for (const std::vector<ResultRecord>& chunk : per_seed) {
        records.insert(records.end(), chunk.begin(), chunk.end());
    }
    return records;
}

std::vector<ResultRecord> run_sparse_target(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw InvalidSpec("need at least one seed");
    if (config.instance.dims != 1) throw InvalidSpec("the sparse-target protocol is 1-dimensional");
    const std::string id =
        config.experiment_id.empty() ? experiment_kind_name(config.kind) : config.experiment_id;

    TrigSeries target;
    target.frequencies.resize(static_cast<long>(config.target_frequencies.size()), 1);
    target.cos_coeffs = Eigen::VectorXd::Ones(target.frequencies.rows());
    target.sin_coeffs = Eigen::VectorXd::Ones(target.frequencies.rows());
    double target_max = 0.0;
    for (std::size_t i = 0; i < config.target_frequencies.size(); ++i) {
        target.frequencies(static_cast<long>(i), 0) = config.target_frequencies[i];
        target_max = std::max(target_max, std::abs(config.target_frequencies[i]));
    }

    // one circuit per seed; reused for the Fourier average and training
    std::vector<CompiledCircuit> circuits;
    std::vector<ParameterVector> thetas;
    for (const std::uint64_t seed : config.seeds) {
        RandomInstanceConfig gen = config.instance;
        gen.seed = derived_seed(seed, kCircuitStream);
        auto [circuit, theta] = random_instance(gen);
        circuits.emplace_back(std::move(circuit));
        thetas.push_back(std::move(theta));
    }
    const EncodingLayout layout = circuits.front().description().encoding_layout();
    const Spectrum spectrum = build_spectrum(layout);
    const SpectrumCounts counts = spectrum_size(spectrum);

    const double x_range = config.x_max.empty() ? 2.0 * M_PI : config.x_max[0];
    const double needed = std::max(max_frequency(layout, 0), target_max);
    // the transform wants twice the Shannon minimum
    int points = std::max({min_grid_points(x_range, needed), config.num_points,
                           static_cast<int>(std::ceil(2.0 * needed * x_range / M_PI))});
    if (points % 2 != 0) ++points;

    Dataset train_set;
    train_set.inputs.resize(points, 1);
    for (int j = 0; j < points; ++j) train_set.inputs(j, 0) = x_range * j / points;
    train_set.targets = target.evaluate_rows(train_set.inputs);
    Dataset test_set;
    test_set.inputs.resize(points, 1);
    for (int j = 0; j < points; ++j) test_set.inputs(j, 0) = x_range * (j + 0.5) / points;
    test_set.targets = target.evaluate_rows(test_set.inputs);

    // empirical cutoff of the architecture, averaged over the seed circuits
    const SeededEvaluator evaluator = [&](const Eigen::VectorXd& x, std::uint64_t seed) {
        for (std::size_t i = 0; i < config.seeds.size(); ++i) {
            if (config.seeds[i] == seed) return circuits[i].evaluate(thetas[i], x);
        }
        throw InvalidSpec("unknown evaluator seed");
    };
    const EmpiricalSpectrum empirical =
        empirical_fourier(evaluator, x_range, points, 1, config.seeds, needed);
    const double cutoff = omega_effective(empirical);

    const GridDefaults grid = grid_defaults(config, x_range, points);
    const std::vector<int> sizes = sweep_sizes(config, counts.positive_count);

    std::vector<std::vector<ResultRecord>> per_seed(config.seeds.size());
    parallel_for(config.seeds.size(), config.threads, [&](std::size_t s) {
        const std::uint64_t seed = config.seeds[s];
        if (config.train_vqc) {
            Stopwatch watch;
            ResultRecord record;
            record.experiment_id = id;
            record.strategy = "vqc";
            record.seed = seed;
            record.num_samples = 0;
            try {
                VqcTrainOptions options = config.vqc_train;
                options.seed = derived_seed(seed, kSolverStream + 1);
                const VqcTrainResult trained = train(circuits[s], thetas[s], train_set, options);
                record.train_mse = trained.best_loss;
                Eigen::VectorXd predictions(test_set.inputs.rows());
                for (Eigen::Index i = 0; i < test_set.inputs.rows(); ++i) {
                    predictions(i) =
                        circuits[s].evaluate(trained.params, test_set.inputs.row(i).transpose());
                }
                record.test_metric = mean_squared_error(predictions, test_set.targets);
            } catch (const DivergedTraining&) {
                record.diverged = true;
            }
            record.metadata["omega_effective"] = format_double(cutoff);
            record.wall_time_s = watch.seconds();
            per_seed[s].push_back(std::move(record));
        }
        for (std::size_t si = 0; si < config.strategies.size(); ++si) {
            const SamplingStrategy strategy = config.strategies[si];
            const std::uint64_t sampling_seed = derived_seed(seed, kSamplingStream + si);
            for (int num_samples : sizes) {
                Stopwatch watch;
                ResultRecord record;
                record.experiment_id = id;
                record.strategy = strategy_name(strategy);
                record.num_samples = num_samples;
                record.fraction = num_samples / counts.positive_count;
                record.seed = seed;
                try {
                    const FrequencySample sample =
                        draw_sample(strategy, num_samples, sampling_seed, spectrum, layout,
                                    grid.omega_max, grid.step);
                    const FeatureMap map{sample};
                    const std::uint64_t solver_seed = derived_seed(seed, kSolverStream);
                    const RFFModel model = fit_with_solver(map, train_set, config.solver, solver_seed);
                    record.train_mse = model.train_mse(train_set);
                    record.test_metric =
                        mean_squared_error(model.predict_rows(test_set.inputs), test_set.targets);
                    record.metadata["sampling"] = sample_metadata(sample);
                    record.metadata["solver"] = solver_metadata(config.solver, solver_seed);
                } catch (const DivergedTraining&) {
                    record.diverged = true;
                }
                record.metadata["omega_effective"] = format_double(cutoff);
                record.metadata["omega_plus"] = format_double(counts.positive_count);
                record.wall_time_s = watch.seconds();
                per_seed[s].push_back(std::move(record));
            }
        }
    });

    std::vector<ResultRecord> records;
    for (const std::vector<ResultRecord>& chunk : per_seed) {
        records.insert(records.end(), chunk.begin(), chunk.end());
    }
    return records;
}

std::vector<ResultRecord> run_real_dataset(const ExperimentConfig& config,
                                           const std::string& csv_path) {
    if (config.seeds.empty()) throw InvalidSpec("need at least one seed");
    const std::string id =
        config.experiment_id.empty() ? experiment_kind_name(config.kind) : config.experiment_id;
    const bool classify = config.task == "classification";

    const Dataset raw = load_csv(csv_path);
    Eigen::VectorXd targets = raw.targets;
    if (classify) {
        std::set<double> labels(raw.targets.begin(), raw.targets.end());
        if (labels.size() != 2) {
            throw InvalidSpec("classification needs exactly two distinct target values");
        }
        const double low = *labels.begin();
        for (Eigen::Index i = 0; i < targets.size(); ++i) {
            targets(i) = raw.targets(i) == low ? -1.0 : 1.0;
        }
    }

    const PcaModel pca = pca_fit(raw.inputs, config.pca_dims);
    Dataset data;
    data.inputs = rescale_to_interval(pca_transform(pca, raw.inputs), config.rescale_lo,
                                      config.rescale_hi);
    data.targets = targets;
    const auto [train_set, test_set] =
        train_test_split(data, config.train_fraction, derived_seed(config.seeds[0], kDataStream));

    RandomInstanceConfig gen_base = config.instance;
    gen_base.dims = config.pca_dims;
    const EncodingLayout layout =
        [&] {
            RandomInstanceConfig probe = gen_base;
            probe.seed = derived_seed(config.seeds[0], kCircuitStream);
            return CompiledCircuit(random_instance(probe).first).description().encoding_layout();
        }();
    const Spectrum spectrum = build_spectrum(layout);
    const SpectrumCounts counts = spectrum_size(spectrum);
    const double x_range = config.rescale_hi - config.rescale_lo;
    const GridDefaults grid = grid_defaults(config, x_range, train_set.size());
    const std::vector<int> sizes = sweep_sizes(config, counts.positive_count);

    auto evaluate_metric = [&](const Eigen::VectorXd& predictions, const Eigen::VectorXd& truth) {
        return classify ? sign_accuracy(predictions, truth)
                        : mean_squared_error(predictions, truth);
    };

    std::vector<std::vector<ResultRecord>> per_seed(config.seeds.size());
    parallel_for(config.seeds.size(), config.threads, [&](std::size_t s) {
        const std::uint64_t seed = config.seeds[s];
        RandomInstanceConfig gen = gen_base;
        gen.seed = derived_seed(seed, kCircuitStream);
        auto [circuit, theta] = random_instance(gen);
        const CompiledCircuit compiled(std::move(circuit));

        if (config.train_vqc) {
            Stopwatch watch;
            ResultRecord record;
            record.experiment_id = id;
            record.strategy = "vqc";
            record.seed = seed;
            try {
                VqcTrainOptions options = config.vqc_train;
                options.seed = derived_seed(seed, kSolverStream + 1);
                const VqcTrainResult trained = train(compiled, theta, train_set, options);
                record.train_mse = trained.best_loss;
                Eigen::VectorXd predictions(test_set.inputs.rows());
                for (Eigen::Index i = 0; i < test_set.inputs.rows(); ++i) {
                    predictions(i) =
                        compiled.evaluate(trained.params, test_set.inputs.row(i).transpose());
                }
                record.test_metric = evaluate_metric(predictions, test_set.targets);
                record.test_metric_kind = classify ? "accuracy" : "mse";
            } catch (const DivergedTraining&) {
                record.diverged = true;
            }
            record.wall_time_s = watch.seconds();
            per_seed[s].push_back(std::move(record));
        }

        for (std::size_t si = 0; si < config.strategies.size(); ++si) {
            const SamplingStrategy strategy = config.strategies[si];
            const std::uint64_t sampling_seed = derived_seed(seed, kSamplingStream + si);
            for (int num_samples : sizes) {
                Stopwatch watch;
                ResultRecord record;
                record.experiment_id = id;
                record.strategy = strategy_name(strategy);
                record.num_samples = num_samples;
                record.fraction = num_samples / counts.positive_count;
                record.seed = seed;
                record.test_metric_kind = classify ? "accuracy" : "mse";
                try {
                    const FrequencySample sample =
                        draw_sample(strategy, num_samples, sampling_seed, spectrum, layout,
                                    grid.omega_max, grid.step);
                    const FeatureMap map{sample};
                    const std::uint64_t solver_seed = derived_seed(seed, kSolverStream);
                    const RFFModel model =
                        fit_with_solver(map, train_set, config.solver, solver_seed);
                    record.train_mse = model.train_mse(train_set);
                    record.test_metric =
                        evaluate_metric(model.predict_rows(test_set.inputs), test_set.targets);
                    record.metadata["sampling"] = sample_metadata(sample);
                    record.metadata["solver"] = solver_metadata(config.solver, solver_seed);
                } catch (const DivergedTraining&) {
                    record.diverged = true;
                }
                record.metadata["omega_plus"] = format_double(counts.positive_count);
                record.metadata["pca_dims"] = std::to_string(config.pca_dims);
                record.wall_time_s = watch.seconds();
                per_seed[s].push_back(std::move(record));
            }
        }
    });

    std::vector<ResultRecord> records;
    for (const std::vector<ResultRecord>& chunk : per_seed) {
        records.insert(records.end(), chunk.begin(), chunk.end());
    }
    return records;
}

ScalingOutcome run_scaling_protocol(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw InvalidSpec("need at least one seed");
    const std::string id =
        config.experiment_id.empty() ? experiment_kind_name(config.kind) : config.experiment_id;
    const int d = config.lattice_dims;
    const int nodes = config.lattice_gates + 1;  // [0, L]
    long lattice_size = 1;
    for (int k = 0; k < d; ++k) lattice_size *= nodes;
    if (lattice_size > static_cast<long>(kDefaultEnumerationCap)) {
        throw SpectrumTooLarge("lattice too large to enumerate");
    }

    std::vector<Eigen::VectorXd> lattice;
    lattice.reserve(static_cast<std::size_t>(lattice_size));
    std::vector<int> index(static_cast<std::size_t>(d), 0);
    for (long i = 0; i < lattice_size; ++i) {
        Eigen::VectorXd w(d);
        for (int k = 0; k < d; ++k) w(k) = index[static_cast<std::size_t>(k)];
        lattice.push_back(w);
        for (int k = d - 1; k >= 0; --k) {
            if (++index[static_cast<std::size_t>(k)] < nodes) break;
            index[static_cast<std::size_t>(k)] = 0;
        }
    }

    // D sweep {1, k|O|/10 : k = 1..10}, deduplicated and ending at |O|
    std::vector<int> sizes{1};
    for (int k = 1; k <= 10; ++k) {
        const int size = std::max(1, static_cast<int>(std::llround(lattice_size * k / 10.0)));
        if (size != sizes.back()) sizes.push_back(size);
    }
    sizes.back() = static_cast<int>(lattice_size);

    const int total_points = config.num_points > 0 ? config.num_points : 3000;

    ScalingOutcome outcome;
    outcome.selected_samples.resize(config.seeds.size());
    outcome.selected_fractions.resize(config.seeds.size());
    std::vector<std::vector<ResultRecord>> per_seed(config.seeds.size());

    parallel_for(config.seeds.size(), config.threads, [&](std::size_t s) {
        const std::uint64_t seed = config.seeds[s];

        Rng data_rng(derived_seed(seed, kDataStream));
        Dataset data;
        data.inputs.resize(total_points, d);
        for (int i = 0; i < total_points; ++i) {
            for (int k = 0; k < d; ++k) data.inputs(i, k) = data_rng.uniform_double();
        }

        Rng label_rng(derived_seed(seed, kLabelStream));
        TrigSeries planted;
        planted.frequencies.resize(lattice_size, d);
        planted.cos_coeffs.resize(lattice_size);
        planted.sin_coeffs.resize(lattice_size);
        const double scale = 1.0 / std::sqrt(static_cast<double>(lattice_size));
        for (long i = 0; i < lattice_size; ++i) {
            planted.frequencies.row(i) = lattice[static_cast<std::size_t>(i)].transpose();
            planted.cos_coeffs(i) = label_rng.uniform_double(0.0, scale);
            planted.sin_coeffs(i) = label_rng.uniform_double(0.0, scale);
        }
        data.targets = planted.evaluate_rows(data.inputs);

        const auto [train_set, test_set] =
            train_test_split(data, 0.9, derived_seed(seed, kDataStream + 1));

        const std::uint64_t sampling_seed = derived_seed(seed, kSamplingStream);
        const std::uint64_t solver_seed = derived_seed(seed, kSolverStream);

        std::vector<Eigen::VectorXd> test_outputs(sizes.size());
        std::vector<ResultRecord> records(sizes.size());
        for (std::size_t di = 0; di < sizes.size(); ++di) {
            Stopwatch watch;
            ResultRecord record;
            record.experiment_id = id;
            record.strategy = "distinct";
            record.num_samples = sizes[di];
            record.fraction = sizes[di] / static_cast<double>(lattice_size);
            record.seed = seed;
            record.test_metric_kind = "mae_vs_full";
            try {
                const FrequencySample sample =
                    sample_prefix_without_replacement(lattice, sizes[di], sampling_seed);
                const FeatureMap map{sample};
                const RFFModel model = fit_with_solver(map, train_set, config.solver, solver_seed);
                record.train_mse = model.train_mse(train_set);
                test_outputs[di] = model.predict_rows(test_set.inputs);
                record.metadata["sampling"] = sample_metadata(sample);
                record.metadata["solver"] = solver_metadata(config.solver, solver_seed);
            } catch (const DivergedTraining&) {
                record.diverged = true;
            }
            record.metadata["population"] = "lattice_omega";
            record.metadata["lattice_size"] = std::to_string(lattice_size);
            record.wall_time_s = watch.seconds();
            records[di] = std::move(record);
        }

        // mean absolute error of every model against the full-spectrum one
        const Eigen::VectorXd& full = test_outputs.back();
        int selected = static_cast<int>(lattice_size);
        bool found = false;
        for (std::size_t di = 0; di < sizes.size(); ++di) {
            if (records[di].diverged || full.size() == 0) continue;
            const double mae = mean_absolute_error(test_outputs[di], full);
            records[di].test_metric = mae;
            if (!found && mae < config.epsilon) {
                selected = sizes[di];
                found = true;
            }
        }
        outcome.selected_samples[s] = selected;
        outcome.selected_fractions[s] = selected / static_cast<double>(lattice_size);
        per_seed[s] = std::move(records);
    });

    for (std::size_t s = 0; s < per_seed.size(); ++s) {
        for (ResultRecord& record : per_seed[s]) {
            record.metadata["selected_D"] = std::to_string(outcome.selected_samples[s]);
            outcome.records.push_back(std::move(record));
        }
    }
    double mean = 0.0;
    for (double f : outcome.selected_fractions) mean += f;
    outcome.mean_selected_fraction = mean / outcome.selected_fractions.size();
    return outcome;
}

void write_results(const std::vector<ResultRecord>& records, const ExperimentConfig& config,
                   const std::string& directory) {
    std::filesystem::create_directories(directory);

    std::ofstream csv(directory + "/results.csv");
    if (!csv) throw Error("cannot write results.csv");
    csv << "experiment_id,strategy,D,fraction_of_omega_plus,train_mse,test_metric,"
           "test_metric_kind,diverged,seed\n";
    for (const ResultRecord& record : records) {
        csv << record.experiment_id << "," << record.strategy << "," << record.num_samples << ","
            << format_double(record.fraction) << "," << format_double(record.train_mse) << ","
            << format_double(record.test_metric) << "," << record.test_metric_kind << ","
            << (record.diverged ? 1 : 0) << "," << record.seed << "\n";
    }

    std::ofstream jsonl(directory + "/results.jsonl");
    if (!jsonl) throw Error("cannot write results.jsonl");
    for (const ResultRecord& record : records) {
        jsonl << result_record_to_json(record, false) << "\n";
    }

    std::ofstream meta(directory + "/meta.txt");
    if (!meta) throw Error("cannot write meta.txt");
    meta << "experiment=" << experiment_kind_name(config.kind) << "\n";
    meta << "rng=" << Rng::kAlgorithm << "\n";
    meta << "seeds=";
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
        meta << (i ? "," : "") << config.seeds[i];
    }
    meta << "\n";
    meta << "qrff_version=0.1.0\n";
    meta << "eigen_version=" << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
         << EIGEN_MINOR_VERSION << "\n";
    meta << "config=" << experiment_config_to_json(config) << "\n";
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const std::string& csv_path) {
    switch (config.kind) {
        case ExperimentKind::MimicVQC: return run_mimic(config);
        case ExperimentKind::SparseTarget: return run_sparse_target(config);
        case ExperimentKind::RealDataset:
            if (csv_path.empty()) throw InvalidSpec("real-dataset experiment needs a CSV path");
            return run_real_dataset(config, csv_path);
        case ExperimentKind::ScalingProtocol: return run_scaling_protocol(config).records;
    }
    throw InvalidSpec("unknown experiment kind");
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) throw ParseError("invalid JSON experiment config");

    ExperimentConfig config;
    config.kind = experiment_kind_from_name(value.at("kind").get<std::string>());
    config.experiment_id = value.value("id", std::string());
    if (value.contains("instance")) {
        config.instance = random_instance_config_from_json(value.at("instance").dump());
    }
    if (value.contains("strategies")) {
        config.strategies.clear();
        for (const json& name : value.at("strategies")) {
            config.strategies.push_back(strategy_from_name(name.get<std::string>()));
        }
    }
    if (value.contains("fractions")) {
        config.fractions = value.at("fractions").get<std::vector<double>>();
    }
    if (value.contains("sample_counts")) {
        config.sample_counts = value.at("sample_counts").get<std::vector<int>>();
    }
    if (value.contains("solver")) {
        const json& solver = value.at("solver");
        config.solver.method = solver.value("method", std::string("closed_form"));
        config.solver.lambda0 = solver.value("lambda0", 1e-8);
        if (solver.contains("adam")) {
            const json& adam = solver.at("adam");
            config.solver.sgd.learning_rate = adam.value("learning_rate", 1e-3);
            config.solver.sgd.epochs = adam.value("epochs", 100);
            config.solver.sgd.batch_size = adam.value("batch_size", 32);
        }
    }
    if (value.contains("seeds")) {
        config.seeds = value.at("seeds").get<std::vector<std::uint64_t>>();
    }
    config.output_dir = value.value("output_dir", std::string());
    config.threads = value.value("threads", 1);
    if (value.contains("x_max")) config.x_max = value.at("x_max").get<std::vector<double>>();
    config.num_points = value.value("num_points", 0);
    config.grid_omega_max = value.value("grid_omega_max", 0.0);
    config.grid_step = value.value("grid_step", 0.0);
    if (value.contains("target_frequencies")) {
        config.target_frequencies = value.at("target_frequencies").get<std::vector<double>>();
    }
    config.train_vqc = value.value("train_vqc", false);
    if (value.contains("vqc_train")) {
        const json& train = value.at("vqc_train");
        config.vqc_train.learning_rate = train.value("learning_rate", 1e-3);
        config.vqc_train.epochs = train.value("epochs", 200);
        config.vqc_train.fd_step = train.value("fd_step", 1e-4);
    }
    config.pca_dims = value.value("pca_dims", 5);
    if (value.contains("rescale")) {
        config.rescale_lo = value.at("rescale").at(0).get<double>();
        config.rescale_hi = value.at("rescale").at(1).get<double>();
    }
    config.task = value.value("task", std::string("regression"));
    config.train_fraction = value.value("train_fraction", 0.9);
    if (value.contains("lattice")) {
        config.lattice_gates = value.at("lattice").value("L", 9);
        config.lattice_dims = value.at("lattice").value("dims", 3);
    }
    config.epsilon = value.value("epsilon", 0.5);
    return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
    json out;
    out["kind"] = experiment_kind_name(config.kind);
    if (!config.experiment_id.empty()) out["id"] = config.experiment_id;
    out["instance"] = json::parse(random_instance_config_to_json(config.instance));
    json strategies = json::array();
    for (SamplingStrategy strategy : config.strategies) {
        strategies.push_back(strategy_name(strategy));
    }
    out["strategies"] = strategies;
    if (!config.fractions.empty()) out["fractions"] = config.fractions;
    if (!config.sample_counts.empty()) out["sample_counts"] = config.sample_counts;
    out["solver"] = {{"method", config.solver.method},
                     {"lambda0", config.solver.lambda0},
                     {"adam",
                      {{"learning_rate", config.solver.sgd.learning_rate},
                       {"epochs", config.solver.sgd.epochs},
                       {"batch_size", config.solver.sgd.batch_size}}}};
    out["seeds"] = config.seeds;
    if (!config.output_dir.empty()) out["output_dir"] = config.output_dir;
    out["threads"] = config.threads;
    if (!config.x_max.empty()) out["x_max"] = config.x_max;
    out["num_points"] = config.num_points;
    out["grid_omega_max"] = config.grid_omega_max;
    out["grid_step"] = config.grid_step;
    out["target_frequencies"] = config.target_frequencies;
    out["train_vqc"] = config.train_vqc;
    out["vqc_train"] = {{"learning_rate", config.vqc_train.learning_rate},
                        {"epochs", config.vqc_train.epochs},
                        {"fd_step", config.vqc_train.fd_step}};
    out["pca_dims"] = config.pca_dims;
    out["rescale"] = {config.rescale_lo, config.rescale_hi};
    out["task"] = config.task;
    out["train_fraction"] = config.train_fraction;
    out["lattice"] = {{"L", config.lattice_gates}, {"dims", config.lattice_dims}};
    out["epsilon"] = config.epsilon;
    return out.dump();
}

}  // namespace qrff
