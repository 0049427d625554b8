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

#include <benchmark/benchmark.h>

#include "qrff/rff.hpp"
#include "qrff/sampling.hpp"
#include "qrff/spectrum.hpp"
#include "qrff/vqc.hpp"

namespace {

using namespace qrff;

void BM_DimensionSpectrumPauli(benchmark::State& state) {
    const EncodingLayout layout = EncodingLayout::pauli(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_dimension_spectrum(layout, 0));
    }
}
BENCHMARK(BM_DimensionSpectrumPauli)->Arg(20)->Arg(100)->Arg(200);

void BM_CircuitEvaluate(benchmark::State& state) {
    RandomInstanceConfig config;
    config.num_qubits = static_cast<int>(state.range(0));
    config.gates_per_dim = 10;
    config.seed = 7;
    auto [circuit, theta] = random_instance(config);
    const CompiledCircuit compiled(std::move(circuit));
    Eigen::VectorXd x(1);
    x(0) = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compiled.evaluate(theta, x));
    }
}
BENCHMARK(BM_CircuitEvaluate)->Arg(5)->Arg(8)->Arg(10);

void BM_ClosedFormFit(benchmark::State& state) {
    const int num_frequencies = static_cast<int>(state.range(0));
    const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(1, 2 * num_frequencies));
    SamplingConfig sampling;
    sampling.num_samples = num_frequencies;
    sampling.seed = 3;
    const FeatureMap map{sample_distinct(spectrum, sampling)};

    Dataset data;
    const int m = 4 * num_frequencies;
    data.inputs.resize(m, 1);
    data.targets.resize(m);
    for (int i = 0; i < m; ++i) {
        data.inputs(i, 0) = 2.0 * M_PI * i / m;
        data.targets(i) = std::sin(3.0 * data.inputs(i, 0));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_closed_form(map, data, 1e-8));
    }
}
BENCHMARK(BM_ClosedFormFit)->Arg(32)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
