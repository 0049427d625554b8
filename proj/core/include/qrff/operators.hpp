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

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qrff/errors.hpp"

namespace qrff {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Qubit ordering is little-endian throughout: qubit 0 is the
/// least-significant bit of a basis-state index.
enum class PauliAxis { X, Y, Z };

char pauli_axis_name(PauliAxis axis);
PauliAxis pauli_axis_from_name(char name);

struct PauliFactor {
    int qubit = 0;
    PauliAxis axis = PauliAxis::Z;
};

/// One weighted Pauli string, e.g. 0.5 * Z0 or 7 * X0 X1.
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<PauliFactor> factors;  // at most one factor per qubit
};

/// Hermiticity tolerance for explicit matrices (max entrywise |H - H^dag|).
inline constexpr double kHermitianTol = 1e-10;
/// Reconstruction tolerance for eigendecompositions.
inline constexpr double kReconstructTol = 1e-9;
/// Dense matrices only; 2^p x 2^p must stay tractable.
inline constexpr int kDefaultMaxQubits = 10;

/**
 * A Hermitian operator on p qubits, given either as a weighted sum of
 * Pauli strings or as an explicit dense matrix.
 */
struct HamiltonianSpec {
    int num_qubits = 1;
    std::variant<std::vector<PauliTerm>, ComplexMatrix> form;

    static HamiltonianSpec pauli_sum(int num_qubits, std::vector<PauliTerm> terms);
    static HamiltonianSpec explicit_matrix(int num_qubits, ComplexMatrix matrix);
    /// Single Pauli on one qubit with the given coefficient (0.5 gives the
    /// usual rotation-gate generator with eigenvalues +-1/2).
    static HamiltonianSpec single_pauli(PauliAxis axis, double coefficient = 0.5);

    bool is_pauli_sum() const { return form.index() == 0; }
    const std::vector<PauliTerm>& terms() const { return std::get<0>(form); }
    const ComplexMatrix& matrix() const { return std::get<1>(form); }
    long dim() const { return 1L << num_qubits; }

    /// Throws InvalidSpec / NotHermitian when an invariant is violated.
    void validate(int max_qubits = kDefaultMaxQubits) const;
};

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    ComplexMatrix eigenvectors;    // unitary, columns match eigenvalues
};

/// The 2x2 matrix of a Pauli axis.
ComplexMatrix pauli_matrix(PauliAxis axis);

/// Dense 2^p x 2^p matrix of a spec; Pauli sums are expanded with identity
/// on untouched qubits, little-endian tensor order.
ComplexMatrix build_matrix(const HamiltonianSpec& spec);

/// Hermitian eigendecomposition. The eigenvector choice inside degenerate
/// subspaces is whatever the underlying solver produces; only the
/// reconstruction V diag(lambda) V^dag is contractual.
EigenDecomposition eigendecompose(const ComplexMatrix& hermitian);

/// exp(-i x H) from a precomputed eigendecomposition of H.
ComplexMatrix evolution(const EigenDecomposition& eig, double x);

/// Embed a gate on p qubits into an n-qubit space. Bit k of the gate's
/// index addresses targets[k]; all other qubits are untouched.
ComplexMatrix embed(const ComplexMatrix& gate, const std::vector<int>& targets, int total_qubits);

/// Kronecker product, with the first argument in the most significant slot.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qrff
