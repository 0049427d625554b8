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

#include "qrff/vqc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "qrff/rff.hpp"
#include "qrff/rng.hpp"

namespace qrff {

void CircuitDescription::validate() const {
    if (num_qubits < 1 || num_qubits > kDefaultMaxQubits) {
        throw InvalidSpec("qubit count out of range");
    }
    if (input_dims < 1) throw InvalidSpec("need at least one input dimension");
    std::vector<bool> used(static_cast<std::size_t>(std::max(0, num_params)), false);
    for (const CircuitBlock& block : blocks) {
        if (std::holds_alternative<EncodingBlock>(block)) {
            const auto& enc = std::get<EncodingBlock>(block);
            if (enc.dim_index < 0 || enc.dim_index >= input_dims) {
                throw InvalidSpec("encoding block addresses input dimension " +
                                  std::to_string(enc.dim_index));
            }
            enc.hamiltonian.validate();
            if (static_cast<int>(enc.targets.size()) != enc.hamiltonian.num_qubits) {
                throw InvalidSpec("encoding target count does not match its Hamiltonian");
            }
            std::set<int> seen;
            for (int t : enc.targets) {
                if (t < 0 || t >= num_qubits) throw InvalidSpec("encoding target outside register");
                if (!seen.insert(t).second) throw InvalidSpec("duplicate encoding target");
            }
            if (!std::isfinite(enc.scaling) || enc.scaling == 0.0) {
                throw InvalidSpec("encoding scaling must be finite and nonzero");
            }
        } else {
            const auto& ansatz = std::get<AnsatzBlock>(block);
            if (ansatz.repetitions < 1) throw InvalidSpec("ansatz repetitions must be >= 1");
            for (const RotationGate& rot : ansatz.rotations) {
                if (rot.qubit < 0 || rot.qubit >= num_qubits) {
                    throw InvalidSpec("rotation qubit outside register");
                }
                if (rot.param_index < 0 || rot.param_index >= num_params) {
                    throw InvalidSpec("rotation parameter index outside parameter vector");
                }
                used[static_cast<std::size_t>(rot.param_index)] = true;
            }
        }
    }
    for (int j = 0; j < num_params; ++j) {
        if (!used[static_cast<std::size_t>(j)]) {
            throw InvalidSpec("parameter " + std::to_string(j) + " is never used");
        }
    }
    observable.validate();
    if (observable.num_qubits != num_qubits) {
        throw InvalidSpec("observable must act on the full register");
    }
}

EncodingLayout CircuitDescription::encoding_layout() const {
    EncodingLayout layout;
    layout.gates.resize(input_dims);
    layout.scalings.resize(input_dims);
    for (const CircuitBlock& block : blocks) {
        if (!std::holds_alternative<EncodingBlock>(block)) continue;
        const auto& enc = std::get<EncodingBlock>(block);
        layout.gates[enc.dim_index].push_back(enc.hamiltonian);
        layout.scalings[enc.dim_index].push_back(enc.scaling);
    }
    return layout;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kDefaultMaxQubits) {
        throw InvalidSpec("qubit count out of range");
    }
    amps_ = ComplexVector::Zero(1L << num_qubits);
    amps_(0) = 1.0;
}

void StateVector::apply_gate(const ComplexMatrix& gate, const std::vector<int>& targets) {
    const int p = static_cast<int>(targets.size());
    const long gate_dim = 1L << p;
    if (gate.rows() != gate_dim || gate.cols() != gate_dim) {
        throw ShapeError("gate dimension does not match target count");
    }
    long target_mask = 0;
    for (int t : targets) {
        if (t < 0 || t >= num_qubits_) throw InvalidSpec("gate target outside register");
        target_mask |= 1L << t;
    }

    std::vector<long> offsets(static_cast<std::size_t>(gate_dim));
    for (long a = 0; a < gate_dim; ++a) {
        long offset = 0;
        for (int k = 0; k < p; ++k) {
            if (a & (1L << k)) offset |= 1L << targets[k];
        }
        offsets[static_cast<std::size_t>(a)] = offset;
    }

    ComplexVector scratch(gate_dim);
    const long dim = amps_.size();
    for (long base = 0; base < dim; ++base) {
        if (base & target_mask) continue;
        for (long a = 0; a < gate_dim; ++a) {
            scratch(a) = amps_(base | offsets[static_cast<std::size_t>(a)]);
        }
        const ComplexVector transformed = gate * scratch;
        for (long a = 0; a < gate_dim; ++a) {
            amps_(base | offsets[static_cast<std::size_t>(a)]) = transformed(a);
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    if (control == target) throw InvalidSpec("CNOT control equals target");
    const long cbit = 1L << control;
    const long tbit = 1L << target;
    const long dim = amps_.size();
    for (long i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps_(i), amps_(i | tbit));
        }
    }
}

ComplexMatrix rotation_matrix(PauliAxis axis, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex i(0.0, 1.0);
    ComplexMatrix m(2, 2);
    switch (axis) {
        case PauliAxis::X: m << c, -i * s, -i * s, c; break;
        case PauliAxis::Y: m << c, -s, s, c; break;
        case PauliAxis::Z: m << std::exp(-i * (theta / 2.0)), 0.0, 0.0, std::exp(i * (theta / 2.0));
            break;
    }
    return m;
}

CompiledCircuit::CompiledCircuit(CircuitDescription description)
    : description_(std::move(description)) {
    description_.validate();
    for (const CircuitBlock& block : description_.blocks) {
        if (std::holds_alternative<EncodingBlock>(block)) {
            const auto& enc = std::get<EncodingBlock>(block);
            encoding_eigs_.push_back(eigendecompose(build_matrix(enc.hamiltonian)));
        }
    }
    observable_is_pauli_ = description_.observable.is_pauli_sum();
    if (!observable_is_pauli_) observable_matrix_ = description_.observable.matrix();
}

namespace {

// O|psi> for a Pauli-sum observable, built term by term with 2x2 gates.
ComplexVector apply_pauli_sum(const StateVector& state, const std::vector<PauliTerm>& terms) {
    ComplexVector out = ComplexVector::Zero(state.amplitudes().size());
    for (const PauliTerm& term : terms) {
        StateVector scratch = state;
        for (const PauliFactor& factor : term.factors) {
            scratch.apply_gate(pauli_matrix(factor.axis), {factor.qubit});
        }
        out += term.coefficient * scratch.amplitudes();
    }
    return out;
}

}  // namespace

double CompiledCircuit::evaluate(const ParameterVector& params, const Eigen::VectorXd& x) const {
    if (params.size() != description_.num_params) throw ShapeError("parameter count mismatch");
    if (x.size() != description_.input_dims) throw ShapeError("input dimension mismatch");

    StateVector state(description_.num_qubits);
    std::size_t eig_index = 0;
    for (const CircuitBlock& block : description_.blocks) {
        if (std::holds_alternative<EncodingBlock>(block)) {
            const auto& enc = std::get<EncodingBlock>(block);
            const ComplexMatrix gate =
                evolution(encoding_eigs_[eig_index++], enc.scaling * x(enc.dim_index));
            state.apply_gate(gate, enc.targets);
        } else {
            const auto& ansatz = std::get<AnsatzBlock>(block);
            for (int rep = 0; rep < ansatz.repetitions; ++rep) {
                for (const RotationGate& rot : ansatz.rotations) {
                    state.apply_gate(rotation_matrix(rot.axis, params(rot.param_index)),
                                     {rot.qubit});
                }
                if (ansatz.cnot_ladder) {
                    for (int q = 0; q + 1 < description_.num_qubits; ++q) {
                        state.apply_cnot(q, q + 1);
                    }
                }
            }
        }
    }

    ComplexVector transformed;
    if (observable_is_pauli_) {
        transformed = apply_pauli_sum(state, description_.observable.terms());
    } else {
        transformed = observable_matrix_ * state.amplitudes();
    }
    const Complex expectation = state.amplitudes().dot(transformed);
    if (std::abs(expectation.imag()) > 1e-10) {
        throw Error("expectation has imaginary residue above 1e-10");
    }
    return expectation.real();
}

double evaluate(const CircuitDescription& circuit, const ParameterVector& params,
                const Eigen::VectorXd& x) {
    return CompiledCircuit(circuit).evaluate(params, x);
}

std::pair<CircuitDescription, ParameterVector> random_instance(const RandomInstanceConfig& config) {
    std::vector<PoolEntry> pool = config.pool;
    if (pool.empty()) pool.push_back(PoolEntry{HamiltonianSpec::single_pauli(PauliAxis::Z), 1.0});
    for (const PoolEntry& entry : pool) {
        entry.hamiltonian.validate();
        if (entry.hamiltonian.num_qubits > config.num_qubits) {
            throw InvalidSpec("pool Hamiltonian wider than the register");
        }
    }
    if (config.gates_per_dim < 1) throw InvalidSpec("need at least one encoding gate");

    Rng rng(config.seed);
    Rng structure_rng = rng.derive(1);

    CircuitDescription circuit;
    circuit.num_qubits = config.num_qubits;
    circuit.input_dims = config.dims;
    circuit.observable = HamiltonianSpec::pauli_sum(
        config.num_qubits, {PauliTerm{1.0, {PauliFactor{0, PauliAxis::Z}}}});

    static constexpr PauliAxis kAxes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    int next_param = 0;
    std::vector<int> qubits(static_cast<std::size_t>(config.num_qubits));
    std::iota(qubits.begin(), qubits.end(), 0);

    // a leading trainable layer; without it the first encoding acts on a
    // computational-basis state and diagonal generators reduce to a
    // global phase
    auto push_ansatz = [&](Rng& source) {
        AnsatzBlock ansatz;
        ansatz.cnot_ladder = true;
        ansatz.repetitions = 1;
        for (int q = 0; q < config.num_qubits; ++q) {
            ansatz.rotations.push_back(
                RotationGate{kAxes[source.uniform_index(3)], q, next_param++});
        }
        circuit.blocks.push_back(ansatz);
    };
    push_ansatz(structure_rng);

    for (int l = 0; l < config.gates_per_dim; ++l) {
        for (int dim = 0; dim < config.dims; ++dim) {
            const std::size_t pool_index =
                config.cycle_pool ? static_cast<std::size_t>(l) % pool.size()
                                  : structure_rng.uniform_index(pool.size());
            const PoolEntry& entry = pool[pool_index];

            EncodingBlock enc;
            enc.dim_index = dim;
            enc.hamiltonian = entry.hamiltonian;
            enc.scaling = entry.scaling;
            // random distinct target qubits, kept sorted
            std::vector<int> shuffled = qubits;
            structure_rng.shuffle(shuffled);
            enc.targets.assign(shuffled.begin(),
                               shuffled.begin() + entry.hamiltonian.num_qubits);
            std::sort(enc.targets.begin(), enc.targets.end());
            circuit.blocks.push_back(enc);

            for (int rep = 0; rep < config.ansatz_repetitions; ++rep) {
                push_ansatz(structure_rng);
            }
        }
    }
    circuit.num_params = next_param;
    circuit.validate();

    Rng param_rng = rng.derive(2);
    ParameterVector params(next_param);
    for (int j = 0; j < next_param; ++j) params(j) = param_rng.uniform_double(0.0, 2.0 * M_PI);
    return {std::move(circuit), std::move(params)};
}

double circuit_mse(const CompiledCircuit& circuit, const ParameterVector& params,
                   const Dataset& data) {
    double loss = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        const double diff =
            circuit.evaluate(params, data.inputs.row(i).transpose()) - data.targets(i);
        loss += diff * diff;
    }
    return loss / data.size();
}

Eigen::VectorXd fd_gradient(const CompiledCircuit& circuit, const ParameterVector& params,
                            const Dataset& data, double step) {
    Eigen::VectorXd gradient(params.size());
    ParameterVector probe = params;
    for (Eigen::Index j = 0; j < params.size(); ++j) {
        probe(j) = params(j) + step;
        const double up = circuit_mse(circuit, probe, data);
        probe(j) = params(j) - step;
        const double down = circuit_mse(circuit, probe, data);
        probe(j) = params(j);
        gradient(j) = (up - down) / (2.0 * step);
    }
    return gradient;
}

VqcTrainResult train(const CompiledCircuit& circuit, const ParameterVector& initial,
                     const Dataset& data, const VqcTrainOptions& options) {
    data.validate();
    if (data.dims() != circuit.input_dims()) throw ShapeError("dataset dimension mismatch");

    VqcTrainResult result;
    result.params = initial;
    ParameterVector params = initial;
    result.best_loss = circuit_mse(circuit, params, data);
    result.final_loss = result.best_loss;
    if (circuit.num_params() == 0) return result;

    AdamOptimizer adam(circuit.num_params(), options.learning_rate);
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        const Eigen::VectorXd gradient = fd_gradient(circuit, params, data, options.fd_step);
        adam.step(params, gradient);
        const double loss = circuit_mse(circuit, params, data);
        if (!std::isfinite(loss)) throw DivergedTraining("non-finite circuit training loss");
        if (loss < result.best_loss) {
            result.best_loss = loss;
            result.params = params;
        }
        result.final_loss = loss;
    }
    return result;
}

int min_grid_points(double x_max, double omega_max) {
    if (!(x_max > 0.0)) throw InvalidSpec("x_max must be positive");
    return static_cast<int>(std::floor(x_max * omega_max / M_PI)) + 1;
}

Dataset sample_grid_dataset(const CompiledCircuit& circuit, const ParameterVector& params,
                            const std::vector<double>& x_max,
                            const std::vector<int>& points_per_dim, bool force) {
    const int d = circuit.input_dims();
    if (static_cast<int>(x_max.size()) != d || static_cast<int>(points_per_dim.size()) != d) {
        throw ShapeError("x_max / points_per_dim must have one entry per input dimension");
    }
    const EncodingLayout layout = circuit.description().encoding_layout();
    long total = 1;
    for (int k = 0; k < d; ++k) {
        if (points_per_dim[k] < 1) throw InvalidSpec("need at least one grid point per dimension");
        if (!force) {
            const int needed = min_grid_points(x_max[k], max_frequency(layout, k));
            if (points_per_dim[k] < needed) {
                throw ShannonViolation("dimension " + std::to_string(k) + " needs at least " +
                                       std::to_string(needed) + " points to resolve its spectrum");
            }
        }
        total *= points_per_dim[k];
    }

    Dataset data;
    data.inputs.resize(total, d);
    data.targets.resize(total);
    std::vector<int> index(static_cast<std::size_t>(d), 0);
    for (long row = 0; row < total; ++row) {
        for (int k = 0; k < d; ++k) {
            data.inputs(row, k) = x_max[k] * index[static_cast<std::size_t>(k)] /
                                  static_cast<double>(points_per_dim[static_cast<std::size_t>(k)]);
        }
        data.targets(row) = circuit.evaluate(params, data.inputs.row(row).transpose());
        // lexicographic: last dimension fastest
        for (int k = d - 1; k >= 0; --k) {
            if (++index[static_cast<std::size_t>(k)] < points_per_dim[static_cast<std::size_t>(k)]) break;
            index[static_cast<std::size_t>(k)] = 0;
        }
    }
    return data;
}

}  // namespace qrff
