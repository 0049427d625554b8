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

#include "qrff/vqc.hpp"

#include <cmath>

#include "qrff/analysis.hpp"
#include "test_util.hpp"

using namespace qrff;

namespace {

HamiltonianSpec z_observable(int qubits) {
    return HamiltonianSpec::pauli_sum(qubits, {PauliTerm{1.0, {PauliFactor{0, PauliAxis::Z}}}});
}

CircuitDescription empty_circuit(int qubits) {
    CircuitDescription circuit;
    circuit.num_qubits = qubits;
    circuit.input_dims = 1;
    circuit.num_params = 0;
    circuit.observable = z_observable(qubits);
    return circuit;
}

Eigen::VectorXd scalar(double x) {
    Eigen::VectorXd v(1);
    v(0) = x;
    return v;
}

}  // namespace

TEST_CASE("a circuit with no gates measures the ground state") {
    const CompiledCircuit compiled(empty_circuit(3));
    CHECK(compiled.evaluate(ParameterVector(), scalar(0.7)) == doctest::Approx(1.0));
}

TEST_CASE("single-qubit analytic circuits") {
    SUBCASE("Z encoding followed by a Y rotation gives cos(theta), independent of x") {
        CircuitDescription circuit = empty_circuit(1);
        EncodingBlock enc;
        enc.dim_index = 0;
        enc.hamiltonian = HamiltonianSpec::single_pauli(PauliAxis::Z);
        enc.targets = {0};
        circuit.blocks.push_back(enc);
        AnsatzBlock ansatz;
        ansatz.rotations = {RotationGate{PauliAxis::Y, 0, 0}};
        ansatz.cnot_ladder = false;
        circuit.blocks.push_back(ansatz);
        circuit.num_params = 1;
        const CompiledCircuit compiled(std::move(circuit));

        for (double theta : {0.0, 0.4, 1.3, 2.9}) {
            ParameterVector params(1);
            params(0) = theta;
            for (double x : {0.0, 0.5, 3.0}) {
                CHECK(compiled.evaluate(params, scalar(x)) ==
                      doctest::Approx(std::cos(theta)).epsilon(1e-10));
            }
        }
    }
    SUBCASE("X encoding with no ansatz gives cos(x)") {
        CircuitDescription circuit = empty_circuit(1);
        EncodingBlock enc;
        enc.dim_index = 0;
        enc.hamiltonian = HamiltonianSpec::single_pauli(PauliAxis::X);
        enc.targets = {0};
        circuit.blocks.push_back(enc);
        const CompiledCircuit compiled(std::move(circuit));
        for (double x : {0.0, 0.3, 1.0, 2.2, 5.0}) {
            CHECK(compiled.evaluate(ParameterVector(), scalar(x)) ==
                  doctest::Approx(std::cos(x)).epsilon(1e-10));
        }
    }
}

TEST_CASE("expectations are bounded by the largest observable eigenvalue") {
    Rng rng(91);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomInstanceConfig config;
        config.num_qubits = 3;
        config.gates_per_dim = 2;
        config.seed = seed;
        auto [circuit, theta] = random_instance(config);
        const CompiledCircuit compiled(std::move(circuit));
        const double bound = 1.0;  // Z observable
        for (int probe = 0; probe < 5; ++probe) {
            const double value = compiled.evaluate(theta, scalar(rng.uniform_double(-4.0, 4.0)));
            CHECK(std::abs(value) <= bound + 1e-10);
        }
    }
}

TEST_CASE("observable scaling is linear") {
    RandomInstanceConfig config;
    config.num_qubits = 2;
    config.gates_per_dim = 2;
    config.seed = 5;
    auto [circuit, theta] = random_instance(config);
    CircuitDescription doubled = circuit;
    doubled.observable = HamiltonianSpec::pauli_sum(
        2, {PauliTerm{2.0, {PauliFactor{0, PauliAxis::Z}}}});
    const CompiledCircuit a(std::move(circuit));
    const CompiledCircuit b(std::move(doubled));
    for (double x : {0.1, 0.9, 2.4}) {
        CHECK(b.evaluate(theta, scalar(x)) ==
              doctest::Approx(2.0 * a.evaluate(theta, scalar(x))).epsilon(1e-12));
    }
}

TEST_CASE("random instances are deterministic and expose their layout") {
    RandomInstanceConfig config;
    config.num_qubits = 5;
    config.dims = 2;
    config.gates_per_dim = 3;
    config.seed = 123;
    auto [circuit_a, theta_a] = random_instance(config);
    auto [circuit_b, theta_b] = random_instance(config);
    CHECK(theta_a == theta_b);
    CHECK(circuit_a.blocks.size() == circuit_b.blocks.size());
    CHECK(circuit_a.num_params == circuit_b.num_params);

    SUBCASE("a Pauli pool with three gates spans the integers up to 3") {
        RandomInstanceConfig pauli = config;
        pauli.dims = 1;
        auto [circuit, theta] = random_instance(pauli);
        const DimensionSpectrum spectrum =
            build_dimension_spectrum(circuit.encoding_layout(), 0);
        REQUIRE(spectrum.distinct() == 7);  // integers -3..3
        for (int k = 0; k < 7; ++k) {
            CHECK(spectrum.entries[static_cast<std::size_t>(k)].frequency ==
                  doctest::Approx(static_cast<double>(k - 3)).epsilon(1e-9));
        }
    }
}

TEST_CASE("a cycled pool reproduces a fixed scaled layout") {
    // four scaled Pauli generators and one two-body Hamiltonian, cycled in order
    RandomInstanceConfig config;
    config.num_qubits = 5;
    config.dims = 1;
    config.gates_per_dim = 5;
    config.cycle_pool = true;
    config.seed = 9;
    const std::vector<double> scalings{26.4309, 34.4309, 22.4309, 0.4309};
    for (double s : scalings) {
        config.pool.push_back(PoolEntry{HamiltonianSpec::single_pauli(PauliAxis::Z), s});
    }
    using F = PauliFactor;
    config.pool.push_back(PoolEntry{
        HamiltonianSpec::pauli_sum(3, {PauliTerm{14.0, {F{0, PauliAxis::X}, F{1, PauliAxis::X}}},
                                       PauliTerm{0.21, {F{0, PauliAxis::X}, F{2, PauliAxis::X}}},
                                       PauliTerm{16.0, {F{1, PauliAxis::Y}, F{2, PauliAxis::Y}}},
                                       PauliTerm{16.0, {F{0, PauliAxis::Z}, F{2, PauliAxis::Z}}}}),
        1.0});

    auto [circuit, theta] = random_instance(config);
    const EncodingLayout layout = circuit.encoding_layout();
    REQUIRE(layout.gates[0].size() == 5);
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(layout.scalings[0][l] == doctest::Approx(scalings[l]));
        CHECK(layout.gates[0][l].num_qubits == 1);
    }
    CHECK(layout.gates[0][4].num_qubits == 3);
}

TEST_CASE("training") {
    SUBCASE("self-consistency: a perturbed start recovers the generating parameters") {
        RandomInstanceConfig config;
        config.num_qubits = 2;
        config.gates_per_dim = 1;
        config.seed = 21;
        auto [circuit, theta_star] = random_instance(config);
        const CompiledCircuit compiled(std::move(circuit));

        Dataset data;
        data.inputs.resize(12, 1);
        data.targets.resize(12);
        for (int i = 0; i < 12; ++i) {
            data.inputs(i, 0) = 2.0 * M_PI * i / 12;
            data.targets(i) = compiled.evaluate(theta_star, data.inputs.row(i).transpose());
        }
        ParameterVector start = theta_star;
        for (Eigen::Index j = 0; j < start.size(); ++j) start(j) += 0.01;

        VqcTrainOptions options;
        options.learning_rate = 5e-3;
        options.epochs = 300;
        const VqcTrainResult result = train(compiled, start, data, options);
        CHECK(result.best_loss < 1e-6);
    }
    SUBCASE("a circuit without parameters keeps a constant loss") {
        const CompiledCircuit compiled(empty_circuit(2));
        Dataset data;
        data.inputs.resize(4, 1);
        data.targets.resize(4);
        for (int i = 0; i < 4; ++i) {
            data.inputs(i, 0) = i;
            data.targets(i) = 0.5;
        }
        VqcTrainOptions options;
        options.epochs = 10;
        const VqcTrainResult result = train(compiled, ParameterVector(), data, options);
        CHECK(result.best_loss == doctest::Approx(0.25));
        CHECK(result.params.size() == 0);
    }
    SUBCASE("finite-difference gradients are step-halving consistent") {
        RandomInstanceConfig config;
        config.num_qubits = 2;
        config.gates_per_dim = 1;
        config.seed = 33;
        auto [circuit, theta] = random_instance(config);
        const CompiledCircuit compiled(std::move(circuit));
        Dataset data;
        data.inputs.resize(6, 1);
        data.targets.resize(6);
        for (int i = 0; i < 6; ++i) {
            data.inputs(i, 0) = i * 0.8;
            data.targets(i) = 0.1 * i;
        }
        const Eigen::VectorXd coarse = fd_gradient(compiled, theta, data, 1e-4);
        const Eigen::VectorXd fine = fd_gradient(compiled, theta, data, 5e-5);
        // central differences have O(h^2) error, so halving the step must
        // agree to much better than the gradient scale
        const double scale = std::max(1e-8, fine.cwiseAbs().maxCoeff());
        CHECK((coarse - fine).cwiseAbs().maxCoeff() / scale < 1e-5);
    }
}

TEST_CASE("grid datasets") {
    SUBCASE("the Shannon minimum for five Pauli gates on [0, 2pi) is 11 points") {
        CHECK(min_grid_points(2.0 * M_PI, 5.0) == 11);
        RandomInstanceConfig config;
        config.num_qubits = 3;
        config.gates_per_dim = 5;
        config.seed = 3;
        auto [circuit, theta] = random_instance(config);
        const CompiledCircuit compiled(std::move(circuit));
        CHECK_THROWS_AS(sample_grid_dataset(compiled, theta, {2.0 * M_PI}, {10}),
                        ShannonViolation);
        const Dataset forced = sample_grid_dataset(compiled, theta, {2.0 * M_PI}, {10}, true);
        CHECK(forced.size() == 10);
        const Dataset data = sample_grid_dataset(compiled, theta, {2.0 * M_PI}, {11});
        CHECK(data.size() == 11);
    }
    SUBCASE("a constant circuit produces constant targets") {
        const CompiledCircuit compiled(empty_circuit(2));
        const Dataset data =
            sample_grid_dataset(compiled, ParameterVector(), {2.0 * M_PI}, {8}, true);
        for (int i = 0; i < data.size(); ++i) CHECK(data.targets(i) == doctest::Approx(1.0));
    }
    SUBCASE("a 10 x 10 grid is lexicographic") {
        RandomInstanceConfig config;
        config.num_qubits = 2;
        config.dims = 2;
        config.gates_per_dim = 1;
        config.seed = 8;
        auto [circuit, theta] = random_instance(config);
        const CompiledCircuit compiled(std::move(circuit));
        const Dataset data =
            sample_grid_dataset(compiled, theta, {2.0 * M_PI, 2.0 * M_PI}, {10, 10}, true);
        REQUIRE(data.size() == 100);
        for (int row = 0; row < 100; ++row) {
            CHECK(data.inputs(row, 0) == doctest::Approx(2.0 * M_PI * (row / 10) / 10.0));
            CHECK(data.inputs(row, 1) == doctest::Approx(2.0 * M_PI * (row % 10) / 10.0));
        }
    }
}

TEST_CASE("statevector stays normalized under random circuits") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        RandomInstanceConfig config;
        config.num_qubits = 2 + static_cast<int>(rng.uniform_index(3));
        config.gates_per_dim = 1 + static_cast<int>(rng.uniform_index(3));
        config.seed = rng.next_u64();
        auto [circuit, theta] = random_instance(config);
        StateVector state(circuit.num_qubits);
        const CompiledCircuit compiled(std::move(circuit));
        // evaluate() already applies every block; its expectation being
        // finite and bounded implies the state stayed sane, but check the
        // norm directly through gate application as well
        const double value = compiled.evaluate(theta, scalar(rng.uniform_double(-2.0, 2.0)));
        CHECK(std::isfinite(value));
        state.apply_gate(rotation_matrix(PauliAxis::Y, 0.7), {0});
        state.apply_cnot(0, 1);
        CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("integer spectra make the model 2pi-periodic") {
    RandomInstanceConfig config;
    config.num_qubits = 4;
    config.gates_per_dim = 3;
    config.seed = 77;
    auto [circuit, theta] = random_instance(config);
    const CompiledCircuit compiled(std::move(circuit));
    for (double x : {0.2, 1.1, 2.7}) {
        CHECK(compiled.evaluate(theta, scalar(x)) ==
              doctest::Approx(compiled.evaluate(theta, scalar(x + 2.0 * M_PI))).epsilon(1e-10));
    }
}

TEST_CASE("model output stays inside the predicted spectrum") {
    RandomInstanceConfig config;
    config.num_qubits = 3;
    config.gates_per_dim = 3;
    config.seed = 101;
    auto [circuit, theta] = random_instance(config);
    const CompiledCircuit compiled(circuit);
    const Spectrum spectrum = build_spectrum(circuit.encoding_layout());

    const SeededEvaluator evaluator = [&](const Eigen::VectorXd& x, std::uint64_t) {
        return compiled.evaluate(theta, x);
    };
    const std::vector<std::uint64_t> seeds{0};
    const EmpiricalSpectrum empirical = empirical_fourier(evaluator, 2.0 * M_PI, 64, 1, seeds, 3.0);
    CHECK(dft_out_of_spectrum_ratio(empirical, spectrum, 1e-6) < 1e-8);
}

TEST_CASE("shape errors") {
    const CompiledCircuit compiled(empty_circuit(2));
    Eigen::VectorXd wrong(2);
    wrong << 0.0, 1.0;
    CHECK_THROWS_AS(compiled.evaluate(ParameterVector(), wrong), ShapeError);
    ParameterVector params(3);
    CHECK_THROWS_AS(compiled.evaluate(params, scalar(0.0)), ShapeError);
}
