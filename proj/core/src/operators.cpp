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

#include "qrff/operators.hpp"

#include <cmath>
#include <set>
#include <string>

namespace qrff {

namespace {

double max_abs_deviation_from_hermitian(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

char pauli_axis_name(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    throw InvalidSpec("unknown Pauli axis");
}

PauliAxis pauli_axis_from_name(char name) {
    switch (name) {
        case 'X': case 'x': return PauliAxis::X;
        case 'Y': case 'y': return PauliAxis::Y;
        case 'Z': case 'z': return PauliAxis::Z;
    }
    throw InvalidSpec(std::string("unknown Pauli axis '") + name + "'");
}

HamiltonianSpec HamiltonianSpec::pauli_sum(int num_qubits, std::vector<PauliTerm> terms) {
    HamiltonianSpec spec;
    spec.num_qubits = num_qubits;
    spec.form = std::move(terms);
    spec.validate();
    return spec;
}

HamiltonianSpec HamiltonianSpec::explicit_matrix(int num_qubits, ComplexMatrix matrix) {
    HamiltonianSpec spec;
    spec.num_qubits = num_qubits;
    spec.form = std::move(matrix);
    spec.validate();
    return spec;
}

HamiltonianSpec HamiltonianSpec::single_pauli(PauliAxis axis, double coefficient) {
    return pauli_sum(1, {PauliTerm{coefficient, {PauliFactor{0, axis}}}});
}

void HamiltonianSpec::validate(int max_qubits) const {
    if (num_qubits < 1) throw InvalidSpec("Hamiltonian needs at least one qubit");
    if (num_qubits > max_qubits) {
        throw InvalidSpec("Hamiltonian on " + std::to_string(num_qubits) +
                          " qubits exceeds the dense limit of " + std::to_string(max_qubits));
    }
    if (is_pauli_sum()) {
        for (const PauliTerm& term : terms()) {
            if (!std::isfinite(term.coefficient)) {
                throw InvalidSpec("Pauli term coefficient is not finite");
            }
            std::set<int> seen;
            for (const PauliFactor& factor : term.factors) {
                if (factor.qubit < 0 || factor.qubit >= num_qubits) {
                    throw InvalidSpec("Pauli factor acts on qubit " + std::to_string(factor.qubit) +
                                      " outside a " + std::to_string(num_qubits) + "-qubit operator");
                }
                if (!seen.insert(factor.qubit).second) {
                    throw InvalidSpec("Pauli term has two factors on qubit " +
                                      std::to_string(factor.qubit));
                }
            }
        }
    } else {
        const ComplexMatrix& m = matrix();
        if (m.rows() != dim() || m.cols() != dim()) {
            throw InvalidSpec("explicit matrix has wrong shape for " +
                              std::to_string(num_qubits) + " qubits");
        }
        if (max_abs_deviation_from_hermitian(m) > kHermitianTol) {
            throw NotHermitian("explicit matrix deviates from Hermitian by more than 1e-10");
        }
    }
}

ComplexMatrix pauli_matrix(PauliAxis axis) {
    ComplexMatrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (axis) {
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, -i, i, 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix build_matrix(const HamiltonianSpec& spec) {
    spec.validate();
    if (!spec.is_pauli_sum()) return spec.matrix();

    const long dim = spec.dim();
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix identity = ComplexMatrix::Identity(2, 2);
    for (const PauliTerm& term : spec.terms()) {
        // Little-endian: qubit 0 ends up as the rightmost Kronecker factor.
        ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
        for (int q = 0; q < spec.num_qubits; ++q) {
            const ComplexMatrix* factor = &identity;
            ComplexMatrix pauli;
            for (const PauliFactor& f : term.factors) {
                if (f.qubit == q) {
                    pauli = pauli_matrix(f.axis);
                    factor = &pauli;
                    break;
                }
            }
            acc = kron(*factor, acc);
        }
        total += term.coefficient * acc;
    }
    return total;
}

EigenDecomposition eigendecompose(const ComplexMatrix& hermitian) {
    if (hermitian.rows() != hermitian.cols()) {
        throw ShapeError("eigendecompose requires a square matrix");
    }
    if (max_abs_deviation_from_hermitian(hermitian) > kHermitianTol) {
        throw NotHermitian("matrix deviates from Hermitian by more than 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed to converge");
    }
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix evolution(const EigenDecomposition& eig, double x) {
    const Eigen::Index n = eig.eigenvalues.size();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::exp(Complex(0.0, -x * eig.eigenvalues(k)));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix embed(const ComplexMatrix& gate, const std::vector<int>& targets, int total_qubits) {
    const int p = static_cast<int>(targets.size());
    const long gate_dim = 1L << p;
    if (gate.rows() != gate_dim || gate.cols() != gate_dim) {
        throw ShapeError("gate dimension does not match the number of targets");
    }
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= total_qubits) {
            throw InvalidSpec("embed target " + std::to_string(t) + " outside " +
                              std::to_string(total_qubits) + " qubits");
        }
        if (!seen.insert(t).second) throw InvalidSpec("duplicate embed target");
    }

    const long dim = 1L << total_qubits;
    long target_mask = 0;
    for (int t : targets) target_mask |= 1L << t;

    // spread: gate-index bit k lands on qubit targets[k]
    auto spread = [&](long sub) {
        long out = 0;
        for (int k = 0; k < p; ++k) {
            if (sub & (1L << k)) out |= 1L << targets[k];
        }
        return out;
    };

    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (long rest = 0; rest < dim; ++rest) {
        if (rest & target_mask) continue;
        for (long a = 0; a < gate_dim; ++a) {
            const long row = rest | spread(a);
            for (long b = 0; b < gate_dim; ++b) {
                out(row, rest | spread(b)) = gate(a, b);
            }
        }
    }
    return out;
}

}  // namespace qrff
