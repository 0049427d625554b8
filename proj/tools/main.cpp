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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrff/analysis.hpp"
#include "qrff/config.hpp"
#include "qrff/experiments.hpp"
#include "qrff/rff.hpp"
#include "qrff/sampling.hpp"
#include "qrff/spectrum.hpp"
#include "qrff/vqc.hpp"

namespace {

using nlohmann::json;
using namespace qrff;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    int threads = 1;
    std::string emit;
};

json load_config(const GlobalOptions& options) {
    if (options.config_path.empty()) throw ParseError("--config is required");
    json value = json::parse(read_text_file(options.config_path), nullptr, false);
    if (value.is_discarded()) throw ParseError("'" + options.config_path + "' is not valid JSON");
    return value;
}

std::string out_path(const GlobalOptions& options, const std::string& name) {
    if (options.out_dir.empty()) return name;
    std::filesystem::create_directories(options.out_dir);
    return options.out_dir + "/" + name;
}

int run_spectrum(const GlobalOptions& options) {
    const json config = load_config(options);
    const EncodingLayout layout = layout_from_json(config.dump());
    const Spectrum spectrum = build_spectrum(layout);
    const SpectrumCounts counts = spectrum_size(spectrum);

    std::cout << "dims=" << layout.dims() << "\n";
    for (int d = 0; d < layout.dims(); ++d) {
        std::vector<Eigen::VectorXd> eigs;
        for (const HamiltonianSpec& gate : layout.gates[d]) {
            eigs.push_back(eigendecompose(build_matrix(gate)).eigenvalues);
        }
        const std::vector<double> scalings =
            layout.scalings.empty() ? std::vector<double>() : layout.scalings[d];
        const std::vector<FrequencyEntry> sums = lambda_sums(eigs, scalings, spectrum.dedup_tol);
        int degenerate = 0;
        for (const FrequencyEntry& s : sums) {
            if (s.redundancy > 1.5) ++degenerate;
        }
        const std::vector<Packet> packets = detect_packets(spectrum.dimensions[d]);
        std::cout << "dim " << d << ": distinct=" << spectrum.dimensions[d].distinct()
                  << " max_frequency=" << format_double(spectrum.dimensions[d].max_frequency())
                  << " lambda_values=" << sums.size() << " lambda_degenerate=" << degenerate
                  << " packets=" << packets.size() << "\n";
    }
    std::cout << "|omega|=" << format_double(counts.total_distinct) << "\n";
    std::cout << "|omega_plus|=" << format_double(counts.positive_count) << "\n";
    std::cout << "sigma_p=" << format_double(variance_sigma_p(spectrum)) << "\n";

    if (!options.out_dir.empty()) {
        write_spectrum_csv(spectrum, out_path(options, "spectrum.csv"));
    }
    return 0;
}

int run_sample(const GlobalOptions& options) {
    const json config = load_config(options);
    SamplingConfig sampling = sampling_config_from_json(config.at("sampling").dump());
    if (options.seed) sampling.seed = *options.seed;

    FrequencySample sample;
    if (sampling.strategy == SamplingStrategy::Grid) {
        const int dims = config.value("dims", 1);
        sample = sample_grid(sampling, dims);
    } else {
        const EncodingLayout layout = layout_from_json(config.at("layout").dump());
        if (sampling.strategy == SamplingStrategy::Distinct) {
            sample = sample_distinct(build_spectrum(layout), sampling);
        } else {
            sample = sample_tree(layout, sampling);
        }
    }
    const std::string path = out_path(options, "sample.csv");
    write_sample_csv(sample, path);
    std::cout << "wrote " << sample.size() << " samples to " << path << "\n";
    return 0;
}

int run_fit(const GlobalOptions& options) {
    const json config = load_config(options);
    const Dataset data = load_csv(config.at("data").get<std::string>());

    FrequencySample sample;
    if (config.contains("frequencies_csv")) {
        sample = read_sample_csv(config.at("frequencies_csv").get<std::string>());
    } else {
        SamplingConfig sampling = sampling_config_from_json(config.at("sampling").dump());
        if (options.seed) sampling.seed = *options.seed;
        if (sampling.strategy == SamplingStrategy::Grid) {
            sample = sample_grid(sampling, data.dims());
        } else {
            const EncodingLayout layout = layout_from_json(config.at("layout").dump());
            sample = sampling.strategy == SamplingStrategy::Distinct
                         ? sample_distinct(build_spectrum(layout), sampling)
                         : sample_tree(layout, sampling);
        }
    }
    if (sample.dims() != data.dims()) {
        throw ShapeError("frequency dimension does not match the dataset");
    }

    const FeatureMap map{sample};
    const double lambda0 = config.value("lambda0", 1e-8);
    RFFModel model;
    if (config.value("solver", std::string("closed_form")) == "adam") {
        SgdOptions sgd;
        sgd.learning_rate = config.value("learning_rate", 1e-3);
        sgd.epochs = config.value("epochs", 100);
        sgd.batch_size = config.value("batch_size", 32);
        sgd.seed = options.seed.value_or(config.value("solver_seed", 0ULL));
        model = fit_sgd(map, data, lambda0, sgd);
    } else {
        model = fit_closed_form(map, data, lambda0);
    }

    write_text_file(out_path(options, "model.json"), model_to_json(model));
    write_predictions_csv(data.inputs, model.predict_rows(data.inputs),
                          out_path(options, "predictions.csv"));
    std::cout << "train_mse=" << format_double(model.train_mse(data)) << "\n";
    return 0;
}

std::pair<CircuitDescription, ParameterVector> circuit_from_config(const json& config,
                                                                   std::optional<std::uint64_t> seed) {
    if (config.contains("instance")) {
        RandomInstanceConfig gen = random_instance_config_from_json(config.at("instance").dump());
        if (seed) gen.seed = *seed;
        return random_instance(gen);
    }
    CircuitDescription circuit = circuit_from_json(config.at("circuit").dump());
    ParameterVector theta = ParameterVector::Zero(circuit.num_params);
    if (config.contains("theta")) {
        const std::vector<double> values = config.at("theta").get<std::vector<double>>();
        if (static_cast<int>(values.size()) != circuit.num_params) {
            throw ShapeError("theta length does not match the circuit parameter count");
        }
        for (std::size_t i = 0; i < values.size(); ++i) theta(static_cast<long>(i)) = values[i];
    }
    return {std::move(circuit), std::move(theta)};
}

int run_simulate(const GlobalOptions& options) {
    const json config = load_config(options);
    auto [circuit, theta] = circuit_from_config(config, options.seed);
    const CompiledCircuit compiled(std::move(circuit));

    std::vector<double> x_max =
        config.value("x_max", std::vector<double>(compiled.input_dims(), 2.0 * M_PI));
    std::vector<int> points;
    if (config.contains("points")) {
        points = config.at("points").get<std::vector<int>>();
    } else {
        const EncodingLayout layout = compiled.description().encoding_layout();
        for (int k = 0; k < compiled.input_dims(); ++k) {
            points.push_back(min_grid_points(x_max[k], max_frequency(layout, k)));
        }
    }
    const Dataset data =
        sample_grid_dataset(compiled, theta, x_max, points, config.value("force", false));
    const std::string path = out_path(options, "dataset.csv");
    write_csv(data, path);
    std::cout << "wrote " << data.size() << " rows to " << path << "\n";
    return 0;
}

int run_train_vqc(const GlobalOptions& options) {
    const json config = load_config(options);
    auto [circuit, theta] = circuit_from_config(config, options.seed);
    const CompiledCircuit compiled(std::move(circuit));
    const Dataset data = load_csv(config.at("data").get<std::string>());

    VqcTrainOptions train_options;
    if (config.contains("train")) {
        const json& t = config.at("train");
        train_options.learning_rate = t.value("learning_rate", 1e-3);
        train_options.epochs = t.value("epochs", 200);
        train_options.fd_step = t.value("fd_step", 1e-4);
    }
    const VqcTrainResult result = train(compiled, theta, data, train_options);

    json out;
    out["theta"] = std::vector<double>(result.params.data(),
                                       result.params.data() + result.params.size());
    out["best_loss"] = result.best_loss;
    out["final_loss"] = result.final_loss;
    write_text_file(out_path(options, "trained.json"), out.dump(2));
    std::cout << "best_loss=" << format_double(result.best_loss) << "\n";
    return 0;
}

int run_fourier(const GlobalOptions& options) {
    const json config = load_config(options);
    RandomInstanceConfig gen = random_instance_config_from_json(config.at("instance").dump());
    std::vector<std::uint64_t> seeds =
        config.value("seeds", std::vector<std::uint64_t>{options.seed.value_or(0)});

    std::vector<CompiledCircuit> circuits;
    std::vector<ParameterVector> thetas;
    for (std::uint64_t seed : seeds) {
        RandomInstanceConfig instance = gen;
        instance.seed = seed;
        auto [circuit, theta] = random_instance(instance);
        circuits.emplace_back(std::move(circuit));
        thetas.push_back(std::move(theta));
    }
    const SeededEvaluator evaluator = [&](const Eigen::VectorXd& x, std::uint64_t seed) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (seeds[i] == seed) return circuits[i].evaluate(thetas[i], x);
        }
        throw InvalidSpec("unknown evaluator seed");
    };

    const double x_max = config.value("x_max", 2.0 * M_PI);
    const int grid_points = config.value("grid_points", 256);
    const int dims = config.value("dims", gen.dims);
    const EmpiricalSpectrum spectrum =
        empirical_fourier(evaluator, x_max, grid_points, dims, seeds,
                          config.value("max_expected_frequency", 0.0));
    const std::string path = out_path(options, "fourier.csv");
    write_empirical_spectrum_csv(spectrum, path);
    std::cout << "omega_effective=" << format_double(omega_effective(spectrum)) << "\n";
    std::cout << "wrote " << spectrum.frequencies.size() << " modes to " << path << "\n";
    return 0;
}

int run_bound(const GlobalOptions& options) {
    const json config = load_config(options);
    const BoundInputs inputs = bound_inputs_from_json(config.at("inputs").dump());
    const std::vector<std::string> calculators =
        config.value("calculators",
                     std::vector<std::string>{"kernel", "samples", "pauli", "grid"});

    json inputs_echo = json::parse(config.at("inputs").dump());
    for (const std::string& name : calculators) {
        json record;
        record["inputs"] = inputs_echo;
        record["calculator"] = name;
        if (name == "kernel") {
            const double d = config.value("D", 1.0);
            const double raw = bound_rff_kernel(inputs, d);
            record["D"] = d;
            record["failure_probability"] = std::min(1.0, std::max(0.0, raw));
            record["failure_probability_raw"] = raw;
        } else if (name == "samples") {
            record["D_bound"] = bound_samples(inputs);
        } else if (name == "pauli") {
            record["D_bound"] = bound_samples_pauli(inputs);
            record["constants_note"] =
                "prediction-error bound with sigma_p = d L(L+1)/3 substituted; the "
                "multiplicative constants are the explicit prediction-bound prefactors";
        } else if (name == "grid") {
            record["D_bound"] = bound_samples_grid(inputs);
            record["constants_note"] =
                "prediction-error bound at epsilon - sC with the grid population "
                "omega_max/s inside the log";
        } else {
            throw InvalidSpec("unknown bound calculator '" + name + "'");
        }
        std::cout << record.dump() << "\n";
    }
    return 0;
}

int run_experiment_command(const GlobalOptions& options, const std::string& csv_path) {
    ExperimentConfig config =
        experiment_config_from_json(load_config(options).dump());
    if (options.seed) config.seeds = {*options.seed};
    if (options.threads > 1) config.threads = options.threads;
    if (!options.out_dir.empty()) config.output_dir = options.out_dir;

    const std::vector<ResultRecord> records = run_experiment(config, csv_path);
    if (!config.output_dir.empty()) {
        write_results(records, config, config.output_dir);
        std::cerr << "wrote " << records.size() << " records to " << config.output_dir << "\n";
    }
    if (options.emit == "jsonl") {
        for (const ResultRecord& record : records) {
            std::cout << result_record_to_json(record, true) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency spectra of Hamiltonian-encoded circuits and their "
                 "random-Fourier-feature approximations"};
    app.require_subcommand(1);

    GlobalOptions options;
    app.add_option("--config", options.config_path, "JSON configuration file")
        ->configurable(false);
    std::uint64_t seed_value = 0;
    CLI::Option* seed_option = app.add_option("--seed", seed_value, "override the config seed");
    app.add_option("--out", options.out_dir, "output directory");
    app.add_option("--threads", options.threads, "worker threads for experiments");
    app.add_option("--emit", options.emit, "also emit records on stdout ('jsonl')");

    CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "frequency spectrum of a layout");
    CLI::App* cmd_sample = app.add_subcommand("sample", "draw frequency samples");
    CLI::App* cmd_fit = app.add_subcommand("fit", "fit a feature model to a dataset");
    CLI::App* cmd_simulate = app.add_subcommand("simulate", "evaluate a circuit on a grid");
    CLI::App* cmd_train = app.add_subcommand("train-vqc", "train circuit parameters");
    CLI::App* cmd_fourier = app.add_subcommand("fourier", "empirical Fourier analysis");
    CLI::App* cmd_bound = app.add_subcommand("bound", "sample-complexity calculators");
    CLI::App* cmd_experiment = app.add_subcommand("experiment", "run an experiment protocol");
    std::string csv_path;
    cmd_experiment->add_option("--data", csv_path, "dataset CSV (real-dataset experiments)");
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (seed_option->count() > 0) options.seed = seed_value;

    try {
        if (cmd_spectrum->parsed()) return run_spectrum(options);
        if (cmd_sample->parsed()) return run_sample(options);
        if (cmd_fit->parsed()) return run_fit(options);
        if (cmd_simulate->parsed()) return run_simulate(options);
        if (cmd_train->parsed()) return run_train_vqc(options);
        if (cmd_fourier->parsed()) return run_fourier(options);
        if (cmd_bound->parsed()) return run_bound(options);
        if (cmd_experiment->parsed()) return run_experiment_command(options, csv_path);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidSpec& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NotHermitian& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ShapeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
