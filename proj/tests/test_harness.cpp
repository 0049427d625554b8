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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "qrff/config.hpp"
#include "qrff/dataset.hpp"
#include "qrff/experiments.hpp"
#include "test_util.hpp"

using namespace qrff;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "qrff_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

// covariance eigenvector oracle: power iteration with deflation
Eigen::MatrixXd power_iteration_components(const Eigen::MatrixXd& covariance, int count) {
    Eigen::MatrixXd remaining = covariance;
    Eigen::MatrixXd components(covariance.rows(), count);
    Rng rng(1);
    for (int c = 0; c < count; ++c) {
        Eigen::VectorXd v(covariance.rows());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform_double(-1.0, 1.0);
        v.normalize();
        for (int iter = 0; iter < 4000; ++iter) {
            v = remaining * v;
            v.normalize();
        }
        components.col(c) = v;
        const double eigenvalue = v.dot(remaining * v);
        remaining -= eigenvalue * v * v.transpose();
    }
    return components;
}

}  // namespace

TEST_CASE("hamiltonian configs round trip") {
    SUBCASE("pauli sum form") {
        const std::string text = R"({"qubits":1,"pauli_terms":[{"coeff":0.5,"ops":[[0,"Z"]]}]})";
        const HamiltonianSpec spec = hamiltonian_from_json(text);
        const ComplexMatrix m = build_matrix(spec);
        CHECK(m(0, 0).real() == doctest::Approx(0.5));
        CHECK(m(1, 1).real() == doctest::Approx(-0.5));
        const HamiltonianSpec again = hamiltonian_from_json(hamiltonian_to_json(spec));
        CHECK((build_matrix(again) - m).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("explicit matrix form") {
        Rng rng(3);
        const ComplexMatrix m = testutil::random_hermitian(4, rng);
        const HamiltonianSpec spec = HamiltonianSpec::explicit_matrix(2, m);
        const HamiltonianSpec again = hamiltonian_from_json(hamiltonian_to_json(spec));
        CHECK((again.matrix() - m).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("bad configs raise ParseError") {
        CHECK_THROWS_AS(hamiltonian_from_json("not json"), ParseError);
        CHECK_THROWS_AS(hamiltonian_from_json(R"({"qubits":1})"), ParseError);
        CHECK_THROWS_AS(hamiltonian_from_json(R"({"qubits":1,"matrix":[[1,0],[0,0],[0,0]]})"),
                        ParseError);
    }
}

TEST_CASE("layout presets and circuit configs round trip") {
    const EncodingLayout layout = layout_from_json(R"({"preset":"pauli","dims":2,"L":3})");
    CHECK(layout.dims() == 2);
    CHECK(layout.gates[0].size() == 3);
    const EncodingLayout again = layout_from_json(layout_to_json(layout));
    CHECK(again.dims() == 2);

    RandomInstanceConfig gen;
    gen.num_qubits = 3;
    gen.gates_per_dim = 2;
    gen.seed = 11;
    auto [circuit, theta] = random_instance(gen);
    const CircuitDescription parsed = circuit_from_json(circuit_to_json(circuit));
    CHECK(parsed.num_params == circuit.num_params);
    CHECK(parsed.blocks.size() == circuit.blocks.size());
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.8);
    CHECK(evaluate(parsed, theta, x) == doctest::Approx(evaluate(circuit, theta, x)).epsilon(1e-12));
}

TEST_CASE("model files preserve predictions") {
    const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(1, 4));
    SamplingConfig sampling;
    sampling.num_samples = 5;
    sampling.seed = 2;
    sampling.replacement = false;
    const FeatureMap map{sample_distinct(spectrum, sampling)};
    Dataset data;
    data.inputs.resize(16, 1);
    data.targets.resize(16);
    for (int i = 0; i < 16; ++i) {
        data.inputs(i, 0) = 2.0 * M_PI * i / 16;
        data.targets(i) = std::cos(2.0 * data.inputs(i, 0)) - 0.5;
    }
    const RFFModel model = fit_closed_form(map, data, 1e-8);
    const RFFModel loaded = model_from_json(model_to_json(model));
    for (int i = 0; i < data.size(); ++i) {
        CHECK(loaded.predict(data.inputs.row(i).transpose()) ==
              doctest::Approx(model.predict(data.inputs.row(i).transpose())).epsilon(1e-12));
    }
}

TEST_CASE("csv ingestion") {
    const std::filesystem::path dir = temp_dir("csv");
    SUBCASE("round trip") {
        Dataset data;
        data.inputs.resize(3, 2);
        data.inputs << 1.0, 2.0, 3.0, 4.0, 5.0, 6.5;
        data.targets.resize(3);
        data.targets << -1.0, 0.25, 9.0;
        write_csv(data, (dir / "data.csv").string());
        const Dataset loaded = load_csv((dir / "data.csv").string());
        CHECK(loaded.inputs == data.inputs);
        CHECK(loaded.targets == data.targets);
    }
    SUBCASE("bad numbers carry row and column context") {
        std::ofstream file(dir / "bad.csv");
        file << "a,b,y\n1,2,3\n4,oops,6\n";
        file.close();
        try {
            load_csv((dir / "bad.csv").string());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string message = e.what();
            CHECK(message.find("row 3") != std::string::npos);
            CHECK(message.find("column 2") != std::string::npos);
        }
    }
    SUBCASE("ragged rows and missing files fail") {
        std::ofstream file(dir / "ragged.csv");
        file << "a,b,y\n1,2,3\n4,5\n";
        file.close();
        CHECK_THROWS_AS(load_csv((dir / "ragged.csv").string()), ParseError);
        CHECK_THROWS_AS(load_csv((dir / "missing.csv").string()), ParseError);
    }
}

TEST_CASE("pca matches a power-iteration oracle and handles degenerate columns") {
    // two strong directions plus noise in five columns, one of them constant
    Rng rng(17);
    const int rows = 400;
    Eigen::MatrixXd features(rows, 5);
    for (int i = 0; i < rows; ++i) {
        const double a = rng.uniform_double(-3.0, 3.0);
        const double b = rng.uniform_double(-1.0, 1.0);
        features(i, 0) = 2.0 * a + 0.01 * rng.uniform_double(-1, 1);
        features(i, 1) = -a + b + 0.01 * rng.uniform_double(-1, 1);
        features(i, 2) = 0.5 * b + 0.01 * rng.uniform_double(-1, 1);
        features(i, 3) = a - 2.0 * b + 0.01 * rng.uniform_double(-1, 1);
        features(i, 4) = 7.0;  // constant, dropped with a warning
    }
    const PcaModel model = pca_fit(features, 2);
    CHECK(model.kept_columns == std::vector<int>{0, 1, 2, 3});

    Eigen::MatrixXd standardized(rows, 4);
    for (int k = 0; k < 4; ++k) {
        standardized.col(k) = (features.col(k).array() - model.mean(k)) / model.scale(k);
    }
    const Eigen::MatrixXd covariance = standardized.transpose() * standardized / rows;
    const Eigen::MatrixXd oracle = power_iteration_components(covariance, 2);
    for (int c = 0; c < 2; ++c) {
        const double align = std::abs(oracle.col(c).dot(model.components.col(c)));
        CHECK(align == doctest::Approx(1.0).epsilon(1e-6));  // equal up to sign
    }

    SUBCASE("rescaling hits the endpoints exactly") {
        const Eigen::MatrixXd projected = pca_transform(model, features);
        const Eigen::MatrixXd rescaled = rescale_to_interval(projected, -M_PI, M_PI);
        for (int c = 0; c < rescaled.cols(); ++c) {
            CHECK(rescaled.col(c).minCoeff() == doctest::Approx(-M_PI));
            CHECK(rescaled.col(c).maxCoeff() == doctest::Approx(M_PI));
        }
    }
}

TEST_CASE("train/test split is deterministic and disjoint") {
    Dataset data;
    data.inputs.resize(20, 1);
    data.targets.resize(20);
    for (int i = 0; i < 20; ++i) {
        data.inputs(i, 0) = i;
        data.targets(i) = i;
    }
    const auto [train_a, test_a] = train_test_split(data, 0.9, 7);
    const auto [train_b, test_b] = train_test_split(data, 0.9, 7);
    CHECK(train_a.inputs == train_b.inputs);
    CHECK(test_a.inputs == test_b.inputs);
    CHECK(train_a.size() == 18);
    CHECK(test_a.size() == 2);
    std::set<long> seen;
    for (int i = 0; i < train_a.size(); ++i) seen.insert(std::lround(train_a.targets(i)));
    for (int i = 0; i < test_a.size(); ++i) seen.insert(std::lround(test_a.targets(i)));
    CHECK(seen.size() == 20);
}

TEST_CASE("mimicry experiment on a small circuit") {
    ExperimentConfig config;
    config.kind = ExperimentKind::MimicVQC;
    config.instance.num_qubits = 3;
    config.instance.gates_per_dim = 5;
    config.seeds = {1, 2, 3};
    config.fractions = {0.3, 0.6, 1.0};
    config.solver.lambda0 = 1e-12;
    const std::vector<ResultRecord> records = run_mimic(config);
    REQUIRE(records.size() == 3 * 3 * 3);  // seeds x strategies x fractions

    SUBCASE("the full distinct draw spans the model exactly") {
        for (const ResultRecord& record : records) {
            if (record.strategy == "distinct" && record.fraction == 1.0) {
                CHECK(record.train_mse < 1e-8);
            }
        }
    }
    SUBCASE("distinct training error is non-increasing in D on the seed mean") {
        std::map<int, double> mean_by_d;
        std::map<int, int> count_by_d;
        for (const ResultRecord& record : records) {
            if (record.strategy != "distinct") continue;
            mean_by_d[record.num_samples] += record.train_mse;
            count_by_d[record.num_samples] += 1;
        }
        double previous = std::numeric_limits<double>::infinity();
        for (const auto& [d, total] : mean_by_d) {
            const double mean = total / count_by_d[d];
            CHECK(mean <= previous + 1e-9);
            previous = mean;
        }
    }
    SUBCASE("records carry reproduction metadata") {
        for (const ResultRecord& record : records) {
            CHECK(record.metadata.count("sampling") == 1);
            CHECK(record.metadata.count("solver") == 1);
        }
    }
}

TEST_CASE("sparse-target experiment separates strategies") {
    ExperimentConfig config;
    config.kind = ExperimentKind::SparseTarget;
    config.instance.num_qubits = 3;
    config.instance.gates_per_dim = 10;
    config.target_frequencies = {2.0, 4.0};
    config.seeds = {1, 2};
    config.fractions = {1.0};
    config.solver.lambda0 = 1e-12;
    const std::vector<ResultRecord> records = run_sparse_target(config);
    for (const ResultRecord& record : records) {
        if (record.strategy == "distinct") {
            CHECK(record.train_mse < 1e-6);  // targets lie inside the sampled span
        }
        CHECK(record.metadata.count("omega_effective") == 1);
    }
}

TEST_CASE("real-dataset experiment runs end to end on synthetic data") {
    const std::filesystem::path dir = temp_dir("real");
    Rng rng(5);
    {
        std::ofstream file(dir / "data.csv");
        file << "f1,f2,f3,label\n";
        for (int i = 0; i < 120; ++i) {
            const double a = rng.uniform_double(-1.0, 1.0);
            const double b = rng.uniform_double(-1.0, 1.0);
            const double label = a > 0 ? 1.0 : 0.0;
            file << a << "," << (0.7 * a + 0.1 * b) << "," << b << "," << label << "\n";
        }
    }
    ExperimentConfig config;
    config.kind = ExperimentKind::RealDataset;
    config.instance.num_qubits = 3;
    config.instance.gates_per_dim = 2;
    config.pca_dims = 2;
    config.task = "classification";
    config.seeds = {4};
    config.fractions = {1.0};
    config.solver.lambda0 = 1e-6;
    config.grid_omega_max = 3.0;  // cover the actual two-gate spectrum
    config.grid_step = 1.0;
    const std::vector<ResultRecord> records = run_real_dataset(config, (dir / "data.csv").string());
    REQUIRE(!records.empty());
    for (const ResultRecord& record : records) {
        CHECK(record.test_metric_kind == "accuracy");
        CHECK(record.test_metric > 0.5);  // separable data must beat coin flipping
    }
}

TEST_CASE("real-dataset regression reports mean squared errors") {
    const std::filesystem::path dir = temp_dir("real_regression");
    Rng rng(6);
    {
        std::ofstream file(dir / "data.csv");
        file << "f1,f2,y\n";
        for (int i = 0; i < 150; ++i) {
            const double a = rng.uniform_double(-1.0, 1.0);
            const double b = rng.uniform_double(-1.0, 1.0);
            file << a << "," << b << "," << std::sin(a) + 0.3 * b << "\n";
        }
    }
    ExperimentConfig config;
    config.kind = ExperimentKind::RealDataset;
    config.instance.num_qubits = 3;
    config.instance.gates_per_dim = 2;
    config.pca_dims = 2;
    config.seeds = {1};
    config.fractions = {1.0};
    config.strategies = {SamplingStrategy::Distinct};
    config.solver.lambda0 = 1e-6;
    const std::vector<ResultRecord> records = run_real_dataset(config, (dir / "data.csv").string());
    REQUIRE(!records.empty());
    for (const ResultRecord& record : records) {
        CHECK(record.test_metric_kind == "mse");
        CHECK(record.train_mse < 0.1);  // a smooth target over two components
    }
}

TEST_CASE("sample csv round trips") {
    const std::filesystem::path dir = temp_dir("sample_csv");
    SamplingConfig config;
    config.strategy = SamplingStrategy::Grid;
    config.num_samples = 12;
    config.seed = 3;
    config.omega_max = 4.0;
    config.step = 0.5;
    const FrequencySample sample = sample_grid(config, 2);
    write_sample_csv(sample, (dir / "sample.csv").string());
    const FrequencySample loaded = read_sample_csv((dir / "sample.csv").string());
    CHECK(loaded.frequencies == sample.frequencies);
}

TEST_CASE("scaling protocol selects a model per seed") {
    ExperimentConfig config;
    config.kind = ExperimentKind::ScalingProtocol;
    config.lattice_gates = 3;  // lattice {0..3}^1
    config.lattice_dims = 1;
    config.num_points = 300;
    config.epsilon = 0.5;
    config.seeds = {1, 2};
    config.solver.method = "closed_form";
    config.solver.lambda0 = 1e-6;

    const ScalingOutcome outcome = run_scaling_protocol(config);
    REQUIRE(outcome.selected_fractions.size() == 2);
    for (double fraction : outcome.selected_fractions) {
        CHECK(fraction <= 1.0);
        CHECK(fraction > 0.0);
    }

    SUBCASE("a huge threshold selects a single sample") {
        ExperimentConfig loose = config;
        loose.epsilon = 1e6;
        const ScalingOutcome easy = run_scaling_protocol(loose);
        for (int selected : easy.selected_samples) CHECK(selected == 1);
    }
    SUBCASE("a zero threshold falls back to the full spectrum") {
        ExperimentConfig strict = config;
        strict.epsilon = 0.0;
        const ScalingOutcome hard = run_scaling_protocol(strict);
        for (int selected : hard.selected_samples) CHECK(selected == 4);
    }
}

TEST_CASE("experiment configs round trip and results serialize deterministically") {
    ExperimentConfig config;
    config.kind = ExperimentKind::MimicVQC;
    config.instance.num_qubits = 3;
    config.instance.gates_per_dim = 4;
    config.seeds = {9, 10};
    config.fractions = {0.5, 1.0};
    config.solver.lambda0 = 1e-10;

    const ExperimentConfig parsed = experiment_config_from_json(experiment_config_to_json(config));
    CHECK(parsed.kind == config.kind);
    CHECK(parsed.seeds == config.seeds);
    CHECK(parsed.fractions == config.fractions);

    const std::vector<ResultRecord> first = run_mimic(config);
    const std::vector<ResultRecord> second = run_mimic(parsed);
    const std::filesystem::path dir_a = temp_dir("results_a");
    const std::filesystem::path dir_b = temp_dir("results_b");
    write_results(first, config, dir_a.string());
    write_results(second, parsed, dir_b.string());
    for (const char* name : {"results.csv", "results.jsonl", "meta.txt"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    SUBCASE("more worker threads do not change the records") {
        ExperimentConfig threaded = config;
        threaded.threads = 4;
        const std::vector<ResultRecord> parallel = run_mimic(threaded);
        const std::filesystem::path dir_c = temp_dir("results_c");
        write_results(parallel, threaded, dir_c.string());
        CHECK(slurp(dir_a / "results.csv") == slurp(dir_c / "results.csv"));
        CHECK(slurp(dir_a / "results.jsonl") == slurp(dir_c / "results.jsonl"));
    }
}

#ifdef QRFF_CLI_PATH
TEST_CASE("command line interface") {
    const std::string cli = QRFF_CLI_PATH;
    const std::filesystem::path dir = temp_dir("cli");

    SUBCASE("spectrum reports the positive count") {
        write_text_file((dir / "layout.json").string(), R"({"preset":"pauli","dims":4,"L":5})");
        const std::string command =
            cli + " spectrum --config " + (dir / "layout.json").string() + " > " +
            (dir / "out.txt").string();
        REQUIRE(std::system(command.c_str()) == 0);
        const std::string output = slurp(dir / "out.txt");
        CHECK(output.find("|omega_plus|=7321") != std::string::npos);
    }
    SUBCASE("missing config exits with the config-error code") {
        const std::string command =
            cli + " spectrum --config " + (dir / "nope.json").string() + " 2> /dev/null";
        const int status = std::system(command.c_str());
        CHECK(WEXITSTATUS(status) == 1);
    }
    SUBCASE("identical seeds give byte-identical sample files") {
        write_text_file((dir / "sample.json").string(),
                        R"({"layout":{"preset":"pauli","dims":1,"L":6},)"
                        R"("sampling":{"strategy":"tree","D":32,"seed":77}})");
        for (const char* run : {"run1", "run2"}) {
            const std::string command = cli + " sample --config " + (dir / "sample.json").string() +
                                        " --out " + (dir / run).string() + " > /dev/null";
            REQUIRE(std::system(command.c_str()) == 0);
        }
        CHECK(slurp(dir / "run1" / "sample.csv") == slurp(dir / "run2" / "sample.csv"));
    }
    SUBCASE("step too coarse is a numerical failure") {
        write_text_file((dir / "bound.json").string(),
                        R"({"inputs":{"dims":1,"lambda0":0.1,"epsilon":0.1,"delta":0.05,)"
                        R"("omega_max":10,"step":0.5,"f_inf":1.0,"domain_diameter":1.0},)"
                        R"("calculators":["grid"]})");
        const std::string command = cli + " bound --config " + (dir / "bound.json").string() +
                                    " 2> /dev/null";
        const int status = std::system(command.c_str());
        CHECK(WEXITSTATUS(status) == 2);
    }
}
#endif
