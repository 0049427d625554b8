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

#include "qrff/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qrff {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) throw ParseError("invalid JSON");
    return value;
}

json hamiltonian_to_value(const HamiltonianSpec& spec) {
    json out;
    out["qubits"] = spec.num_qubits;
    if (spec.is_pauli_sum()) {
        json terms = json::array();
        for (const PauliTerm& term : spec.terms()) {
            json ops = json::array();
            for (const PauliFactor& f : term.factors) {
                ops.push_back({f.qubit, std::string(1, pauli_axis_name(f.axis))});
            }
            terms.push_back({{"coeff", term.coefficient}, {"ops", ops}});
        }
        out["pauli_terms"] = terms;
    } else {
        json entries = json::array();
        const ComplexMatrix& m = spec.matrix();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                entries.push_back({m(r, c).real(), m(r, c).imag()});
            }
        }
        out["matrix"] = entries;
    }
    return out;
}

HamiltonianSpec hamiltonian_from_value(const json& value) {
    if (!value.is_object()) throw ParseError("Hamiltonian must be a JSON object");
    if (value.contains("pauli_terms")) {
        const int qubits = value.at("qubits").get<int>();
        std::vector<PauliTerm> terms;
        for (const json& term : value.at("pauli_terms")) {
            PauliTerm out;
            out.coefficient = term.at("coeff").get<double>();
            for (const json& op : term.at("ops")) {
                const std::string axis = op.at(1).get<std::string>();
                if (axis.size() != 1) throw ParseError("Pauli axis must be X, Y or Z");
                out.factors.push_back(PauliFactor{op.at(0).get<int>(),
                                                  pauli_axis_from_name(axis[0])});
            }
            terms.push_back(std::move(out));
        }
        return HamiltonianSpec::pauli_sum(qubits, std::move(terms));
    }
    if (value.contains("matrix")) {
        const json& entries = value.at("matrix");
        long dim = 0;
        int qubits = 0;
        if (value.contains("qubits")) {
            qubits = value.at("qubits").get<int>();
            dim = 1L << qubits;
        } else {
            while ((1L << (2 * (qubits + 1))) <= static_cast<long>(entries.size())) ++qubits;
            dim = 1L << qubits;
        }
        if (static_cast<long>(entries.size()) != dim * dim) {
            throw ParseError("matrix entry count is not (2^p)^2");
        }
        ComplexMatrix m(dim, dim);
        long index = 0;
        for (const json& entry : entries) {
            m(index / dim, index % dim) = Complex(entry.at(0).get<double>(),
                                                  entry.at(1).get<double>());
            ++index;
        }
        return HamiltonianSpec::explicit_matrix(qubits, std::move(m));
    }
    throw ParseError("Hamiltonian needs either pauli_terms or matrix");
}

json layout_to_value(const EncodingLayout& layout) {
    json dims = json::array();
    for (int d = 0; d < layout.dims(); ++d) {
        json gates = json::array();
        for (std::size_t l = 0; l < layout.gates[d].size(); ++l) {
            json gate = hamiltonian_to_value(layout.gates[d][l]);
            gate["scaling"] = layout.scalings.empty() ? 1.0 : layout.scalings[d][l];
            gates.push_back(gate);
        }
        dims.push_back({{"gates", gates}});
    }
    return json{{"encoding", dims}};
}

EncodingLayout layout_from_value(const json& value) {
    if (value.contains("preset")) {
        const std::string preset = value.at("preset").get<std::string>();
        const int dims = value.value("dims", 1);
        const int gates = value.at("L").get<int>();
        if (preset == "pauli") return EncodingLayout::pauli(dims, gates);
        if (preset == "exponential") {
            return EncodingLayout::exponential(dims, gates, value.value("base", 3.0));
        }
        throw ParseError("unknown layout preset '" + preset + "'");
    }
    EncodingLayout layout;
    for (const json& dim : value.at("encoding")) {
        std::vector<HamiltonianSpec> gates;
        std::vector<double> scalings;
        for (const json& gate : dim.at("gates")) {
            gates.push_back(hamiltonian_from_value(gate));
            scalings.push_back(gate.value("scaling", 1.0));
        }
        layout.gates.push_back(std::move(gates));
        layout.scalings.push_back(std::move(scalings));
    }
    layout.validate();
    return layout;
}

json sampling_to_value(const SamplingConfig& config) {
    json out;
    out["strategy"] = strategy_name(config.strategy);
    out["D"] = config.num_samples;
    out["seed"] = config.seed;
    if (config.replacement.has_value()) out["replacement"] = *config.replacement;
    if (config.all_pairs) out["all_pairs"] = true;
    if (config.strategy == SamplingStrategy::Grid) {
        out["omega_max"] = config.omega_max;
        out["step"] = config.step;
    }
    return out;
}

SamplingConfig sampling_from_value(const json& value) {
    SamplingConfig config;
    config.strategy = strategy_from_name(value.at("strategy").get<std::string>());
    config.num_samples = value.at("D").get<int>();
    config.seed = value.value("seed", 0ULL);
    if (value.contains("replacement")) config.replacement = value.at("replacement").get<bool>();
    config.all_pairs = value.value("all_pairs", false);
    config.omega_max = value.value("omega_max", 0.0);
    config.step = value.value("step", 0.0);
    config.validate();
    return config;
}

json circuit_to_value(const CircuitDescription& circuit) {
    json blocks = json::array();
    for (const CircuitBlock& block : circuit.blocks) {
        if (std::holds_alternative<EncodingBlock>(block)) {
            const auto& enc = std::get<EncodingBlock>(block);
            json out;
            out["type"] = "encoding";
            out["dim"] = enc.dim_index;
            out["targets"] = enc.targets;
            out["scaling"] = enc.scaling;
            out["hamiltonian"] = hamiltonian_to_value(enc.hamiltonian);
            blocks.push_back(out);
        } else {
            const auto& ansatz = std::get<AnsatzBlock>(block);
            json rotations = json::array();
            for (const RotationGate& rot : ansatz.rotations) {
                rotations.push_back({{"axis", std::string(1, pauli_axis_name(rot.axis))},
                                     {"qubit", rot.qubit},
                                     {"param", rot.param_index}});
            }
            blocks.push_back({{"type", "ansatz"},
                              {"rotations", rotations},
                              {"cnot_ladder", ansatz.cnot_ladder},
                              {"repetitions", ansatz.repetitions}});
        }
    }
    return json{{"qubits", circuit.num_qubits},
                {"dims", circuit.input_dims},
                {"params", circuit.num_params},
                {"blocks", blocks},
                {"observable", hamiltonian_to_value(circuit.observable)}};
}

CircuitDescription circuit_from_value(const json& value) {
    CircuitDescription circuit;
    circuit.num_qubits = value.at("qubits").get<int>();
    circuit.input_dims = value.at("dims").get<int>();
    circuit.num_params = value.at("params").get<int>();
    if (value.contains("observable")) {
        circuit.observable = hamiltonian_from_value(value.at("observable"));
    } else {
        circuit.observable = HamiltonianSpec::pauli_sum(
            circuit.num_qubits, {PauliTerm{1.0, {PauliFactor{0, PauliAxis::Z}}}});
    }
    for (const json& block : value.at("blocks")) {
        const std::string type = block.at("type").get<std::string>();
        if (type == "encoding") {
            EncodingBlock enc;
            enc.dim_index = block.at("dim").get<int>();
            enc.targets = block.at("targets").get<std::vector<int>>();
            enc.scaling = block.value("scaling", 1.0);
            enc.hamiltonian = hamiltonian_from_value(block.at("hamiltonian"));
            circuit.blocks.push_back(enc);
        } else if (type == "ansatz") {
            AnsatzBlock ansatz;
            ansatz.cnot_ladder = block.value("cnot_ladder", true);
            ansatz.repetitions = block.value("repetitions", 1);
            for (const json& rot : block.at("rotations")) {
                const std::string axis = rot.at("axis").get<std::string>();
                if (axis.size() != 1) throw ParseError("rotation axis must be X, Y or Z");
                ansatz.rotations.push_back(RotationGate{pauli_axis_from_name(axis[0]),
                                                        rot.at("qubit").get<int>(),
                                                        rot.at("param").get<int>()});
            }
            circuit.blocks.push_back(ansatz);
        } else {
            throw ParseError("unknown block type '" + type + "'");
        }
    }
    circuit.validate();
    return circuit;
}

json instance_config_to_value(const RandomInstanceConfig& config) {
    json pool = json::array();
    for (const PoolEntry& entry : config.pool) {
        json item = hamiltonian_to_value(entry.hamiltonian);
        item["scaling"] = entry.scaling;
        pool.push_back(item);
    }
    return json{{"qubits", config.num_qubits}, {"dims", config.dims},
                {"L", config.gates_per_dim},  {"pool", pool},
                {"cycle_pool", config.cycle_pool},
                {"ansatz_repetitions", config.ansatz_repetitions},
                {"seed", config.seed}};
}

RandomInstanceConfig instance_config_from_value(const json& value) {
    RandomInstanceConfig config;
    config.num_qubits = value.value("qubits", 5);
    config.dims = value.value("dims", 1);
    config.gates_per_dim = value.at("L").get<int>();
    config.cycle_pool = value.value("cycle_pool", false);
    config.ansatz_repetitions = value.value("ansatz_repetitions", 1);
    config.seed = value.value("seed", 0ULL);
    if (value.contains("pool")) {
        for (const json& item : value.at("pool")) {
            config.pool.push_back(PoolEntry{hamiltonian_from_value(item),
                                            item.value("scaling", 1.0)});
        }
    }
    return config;
}

}  // namespace

std::string hamiltonian_to_json(const HamiltonianSpec& spec) {
    return hamiltonian_to_value(spec).dump(2);
}

HamiltonianSpec hamiltonian_from_json(const std::string& text) {
    return hamiltonian_from_value(parse(text));
}

std::string layout_to_json(const EncodingLayout& layout) { return layout_to_value(layout).dump(2); }

EncodingLayout layout_from_json(const std::string& text) { return layout_from_value(parse(text)); }

std::string sampling_config_to_json(const SamplingConfig& config) {
    return sampling_to_value(config).dump(2);
}

SamplingConfig sampling_config_from_json(const std::string& text) {
    return sampling_from_value(parse(text));
}

std::string circuit_to_json(const CircuitDescription& circuit) {
    return circuit_to_value(circuit).dump(2);
}

CircuitDescription circuit_from_json(const std::string& text) {
    return circuit_from_value(parse(text));
}

std::string random_instance_config_to_json(const RandomInstanceConfig& config) {
    return instance_config_to_value(config).dump(2);
}

RandomInstanceConfig random_instance_config_from_json(const std::string& text) {
    return instance_config_from_value(parse(text));
}

BoundInputs bound_inputs_from_json(const std::string& text) {
    const json value = parse(text);
    BoundInputs inputs;
    inputs.dims = value.value("dims", 1);
    inputs.lambda0 = value.value("lambda0", 1e-6);
    inputs.epsilon = value.value("epsilon", 0.05);
    inputs.delta = value.value("delta", 0.01);
    inputs.sigma_y = value.value("sigma_y", 1.0);
    inputs.domain_diameter = value.value("domain_diameter", 1.0);
    inputs.sigma_p = value.value("sigma_p", 1.0);
    inputs.gates_per_dim = value.value("L", 1.0);
    inputs.omega_max = value.value("omega_max", 1.0);
    inputs.step = value.value("step", 0.1);
    inputs.f_inf = value.value("f_inf", 1.0);
    return inputs;
}

std::string model_to_json(const RFFModel& model) {
    json frequencies = json::array();
    for (int i = 0; i < model.map.num_frequencies(); ++i) {
        json row = json::array();
        for (int k = 0; k < model.map.dims(); ++k) row.push_back(model.map.sample.frequencies(i, k));
        frequencies.push_back(row);
    }
    json weights = json::array();
    for (Eigen::Index i = 0; i < model.weights.size(); ++i) weights.push_back(model.weights(i));
    json metadata{{"solver", model.info.solver},
                  {"lambda_effective", model.info.lambda_effective},
                  {"jitter", model.info.jitter},
                  {"epochs", model.info.epochs},
                  {"seed", model.info.seed},
                  {"final_loss", model.info.final_loss},
                  {"strategy", strategy_name(model.map.sample.strategy)},
                  {"sample_seed", model.map.sample.seed},
                  {"rng", model.map.sample.rng_algorithm}};
    return json{{"frequencies", frequencies},
                {"weights", weights},
                {"lambda0", model.lambda0},
                {"metadata", metadata}}
        .dump(2);
}

RFFModel model_from_json(const std::string& text) {
    const json value = parse(text);
    RFFModel model;
    const json& frequencies = value.at("frequencies");
    if (frequencies.empty()) throw ParseError("model has no frequencies");
    const int d = static_cast<int>(frequencies.front().size());
    model.map.sample.frequencies.resize(static_cast<long>(frequencies.size()), d);
    long row = 0;
    for (const json& freq : frequencies) {
        if (static_cast<int>(freq.size()) != d) throw ParseError("ragged frequency rows");
        for (int k = 0; k < d; ++k) model.map.sample.frequencies(row, k) = freq.at(k).get<double>();
        ++row;
    }
    const json& weights = value.at("weights");
    if (static_cast<long>(weights.size()) != 2 * row) {
        throw ParseError("model needs exactly 2D weights");
    }
    model.weights.resize(2 * row);
    for (long i = 0; i < 2 * row; ++i) model.weights(i) = weights.at(i).get<double>();
    model.lambda0 = value.value("lambda0", 0.0);
    if (value.contains("metadata")) {
        const json& metadata = value.at("metadata");
        model.info.solver = metadata.value("solver", "");
        model.info.lambda_effective = metadata.value("lambda_effective", 0.0);
        model.info.jitter = metadata.value("jitter", 0.0);
        model.info.epochs = metadata.value("epochs", 0);
        model.info.seed = metadata.value("seed", 0ULL);
        model.info.final_loss = metadata.value("final_loss", 0.0);
        if (metadata.contains("strategy")) {
            model.map.sample.strategy = strategy_from_name(metadata.at("strategy"));
        }
        model.map.sample.seed = metadata.value("sample_seed", 0ULL);
        model.map.sample.rng_algorithm = metadata.value("rng", std::string(Rng::kAlgorithm));
    }
    model.info.lambda0 = model.lambda0;
    return model;
}

std::string read_text_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    file << content;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_spectrum_csv(const Spectrum& spectrum, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    file << "dim,frequency,redundancy\n";
    for (int d = 0; d < spectrum.dims(); ++d) {
        for (const FrequencyEntry& entry : spectrum.dimensions[d].entries) {
            file << d << "," << format_double(entry.frequency) << ","
                 << format_double(entry.redundancy) << "\n";
        }
    }
}

void write_sample_csv(const FrequencySample& sample, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    for (int k = 0; k < sample.dims(); ++k) {
        file << "omega_" << (k + 1) << (k + 1 == sample.dims() ? "\n" : ",");
    }
    for (int i = 0; i < sample.size(); ++i) {
        for (int k = 0; k < sample.dims(); ++k) {
            file << format_double(sample.frequencies(i, k))
                 << (k + 1 == sample.dims() ? "\n" : ",");
        }
    }
}

FrequencySample read_sample_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(file, line)) throw ParseError("'" + path + "' is empty");
    std::vector<std::vector<double>> rows;
    std::size_t row_number = 1;
    while (std::getline(file, line)) {
        ++row_number;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream stream(line);
        std::string field;
        while (std::getline(stream, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ParseError("row " + std::to_string(row_number) + ": bad number '" + field +
                                 "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("row " + std::to_string(row_number) + ": ragged row");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("'" + path + "' has no samples");
    FrequencySample sample;
    sample.frequencies.resize(static_cast<long>(rows.size()),
                              static_cast<long>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < rows[i].size(); ++k) {
            sample.frequencies(static_cast<long>(i), static_cast<long>(k)) = rows[i][k];
        }
    }
    return sample;
}

void write_predictions_csv(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& predictions,
                           const std::string& path) {
    if (inputs.rows() != predictions.size()) throw ShapeError("prediction count mismatch");
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    for (Eigen::Index k = 0; k < inputs.cols(); ++k) file << "x" << (k + 1) << ",";
    file << "y_pred\n";
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
        for (Eigen::Index k = 0; k < inputs.cols(); ++k) {
            file << format_double(inputs(i, k)) << ",";
        }
        file << format_double(predictions(i)) << "\n";
    }
}

void write_empirical_spectrum_csv(const EmpiricalSpectrum& spectrum, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    if (spectrum.dims == 1) {
        file << "frequency,magnitude\n";
    } else {
        file << "frequency_1,frequency_2,magnitude\n";
    }
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
        for (int k = 0; k < spectrum.dims; ++k) {
            file << format_double(spectrum.frequencies[i](k)) << ",";
        }
        file << format_double(spectrum.magnitudes[i]) << "\n";
    }
}

}  // namespace qrff
