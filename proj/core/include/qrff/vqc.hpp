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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qrff/dataset.hpp"
#include "qrff/operators.hpp"
#include "qrff/spectrum.hpp"

namespace qrff {

/// Injects one input component: exp(-i * scaling * x_dim * H) on targets.
struct EncodingBlock {
    int dim_index = 0;
    HamiltonianSpec hamiltonian;
    std::vector<int> targets;
    double scaling = 1.0;
};

struct RotationGate {
    PauliAxis axis = PauliAxis::Y;
    int qubit = 0;
    int param_index = 0;
};

/// One trainable layer: single-qubit rotations exp(-i theta sigma / 2),
/// optionally followed by a CNOT ladder CNOT(q, q+1), q = 0..n-2; the
/// whole block repeats `repetitions` times (parameters shared).
struct AnsatzBlock {
    std::vector<RotationGate> rotations;
    bool cnot_ladder = true;
    int repetitions = 1;
};

using CircuitBlock = std::variant<EncodingBlock, AnsatzBlock>;

struct CircuitDescription {
    int num_qubits = 1;
    int input_dims = 1;
    int num_params = 0;
    std::vector<CircuitBlock> blocks;
    HamiltonianSpec observable;  // defaults to Z on qubit 0

    void validate() const;
    /// Per-dimension encoding Hamiltonians and scalings, in block order.
    EncodingLayout encoding_layout() const;
};

using ParameterVector = Eigen::VectorXd;

/// Dense statevector on up to kDefaultMaxQubits qubits, little-endian.
class StateVector {
  public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const ComplexVector& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

    /// Apply a 2^p x 2^p gate to the target qubits in place; bit k of the
    /// gate index addresses targets[k]. Gate-local, no 2^n matrices.
    void apply_gate(const ComplexMatrix& gate, const std::vector<int>& targets);
    void apply_cnot(int control, int target);

  private:
    int num_qubits_;
    ComplexVector amps_;
};

/// Rotation matrix exp(-i theta sigma/2) about a Pauli axis.
ComplexMatrix rotation_matrix(PauliAxis axis, double theta);

/**
 * A circuit with the per-block eigendecompositions precomputed, so
 * repeated evaluations only pay for gate applications.
 */
class CompiledCircuit {
  public:
    explicit CompiledCircuit(CircuitDescription description);

    const CircuitDescription& description() const { return description_; }
    int num_qubits() const { return description_.num_qubits; }
    int input_dims() const { return description_.input_dims; }
    int num_params() const { return description_.num_params; }

    /// <0| U^dag O U |0>; the imaginary residue must stay below 1e-10.
    double evaluate(const ParameterVector& params, const Eigen::VectorXd& x) const;

  private:
    CircuitDescription description_;
    std::vector<EigenDecomposition> encoding_eigs_;  // one per encoding block, in order
    bool observable_is_pauli_ = true;
    ComplexMatrix observable_matrix_;                // dense form when not a Pauli sum
};

double evaluate(const CircuitDescription& circuit, const ParameterVector& params,
                const Eigen::VectorXd& x);

/// One pool entry for random instances: a Hamiltonian plus the fixed
/// scaling its encoding gates use.
struct PoolEntry {
    HamiltonianSpec hamiltonian;
    double scaling = 1.0;
};

struct RandomInstanceConfig {
    int num_qubits = 5;
    int dims = 1;
    int gates_per_dim = 1;           // L
    std::vector<PoolEntry> pool;     // defaults to a single Pauli-Z generator
    bool cycle_pool = false;         // gate l uses pool[l % size] instead of a random draw
    int ansatz_repetitions = 1;      // fresh trainable blocks after each encoding gate
    std::uint64_t seed = 0;
};

/// Random circuit in the usual alternating shape: each encoding gate, on
/// randomly chosen target qubits, is followed by trainable rotation
/// layers with a CNOT ladder. Parameters initialize uniform on [0, 2pi).
std::pair<CircuitDescription, ParameterVector> random_instance(const RandomInstanceConfig& config);

struct VqcTrainOptions {
    double learning_rate = 1e-3;  // Adam
    int epochs = 200;
    double fd_step = 1e-4;        // central-difference step, radians
    std::uint64_t seed = 0;
};

struct VqcTrainResult {
    ParameterVector params;  // best-loss parameters encountered
    double best_loss = 0.0;
    double final_loss = 0.0;
};

/// Full-batch MSE loss of a circuit on a dataset.
double circuit_mse(const CompiledCircuit& circuit, const ParameterVector& params,
                   const Dataset& data);

/// Central finite-difference gradient of circuit_mse.
Eigen::VectorXd fd_gradient(const CompiledCircuit& circuit, const ParameterVector& params,
                            const Dataset& data, double step);

/// Adam on the MSE with finite-difference gradients.
VqcTrainResult train(const CompiledCircuit& circuit, const ParameterVector& initial,
                     const Dataset& data, const VqcTrainOptions& options);

/// Smallest admissible grid size for one dimension under the Shannon
/// criterion n > x_max * omega_max / pi.
int min_grid_points(double x_max, double omega_max);

/**
 * Evaluate the circuit on the uniform half-open lattice
 * { (j/n) * x_max : j = 0..n-1 } per dimension, rows in lexicographic
 * order (first dimension slowest). Raises ShannonViolation when a
 * dimension has fewer points than its spectrum requires, unless forced.
 */
Dataset sample_grid_dataset(const CompiledCircuit& circuit, const ParameterVector& params,
                            const std::vector<double>& x_max,
                            const std::vector<int>& points_per_dim, bool force = false);

}  // namespace qrff
