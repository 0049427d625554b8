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

#include "qrff/spectrum.hpp"

#include <cmath>
#include <set>

#include "test_util.hpp"

using namespace qrff;

namespace {

std::vector<Eigen::VectorXd> pauli_eigs(int count) {
    Eigen::VectorXd ev(2);
    ev << -0.5, 0.5;
    return std::vector<Eigen::VectorXd>(static_cast<std::size_t>(count), ev);
}

}  // namespace

TEST_CASE("lambda sums of a single Pauli gate are its eigenvalues") {
    const std::vector<FrequencyEntry> sums = lambda_sums(pauli_eigs(1), {1.0});
    REQUIRE(sums.size() == 2);
    CHECK(sums[0].frequency == doctest::Approx(-0.5));
    CHECK(sums[1].frequency == doctest::Approx(0.5));
    CHECK(sums[0].redundancy == doctest::Approx(1.0));
}

TEST_CASE("lambda sums of three Pauli gates carry binomial multiplicities") {
    const std::vector<FrequencyEntry> sums = lambda_sums(pauli_eigs(3), {1.0, 1.0, 1.0});
    REQUIRE(sums.size() == 4);
    const double expected_values[] = {-1.5, -0.5, 0.5, 1.5};
    const double expected_mult[] = {1.0, 3.0, 3.0, 1.0};
    for (int k = 0; k < 4; ++k) {
        CHECK(sums[k].frequency == doctest::Approx(expected_values[k]));
        CHECK(sums[k].redundancy == doctest::Approx(expected_mult[k]));
    }
}

TEST_CASE("scaled Pauli gates with factors (1, 3) spread to four distinct sums") {
    const std::vector<FrequencyEntry> sums = lambda_sums(pauli_eigs(2), {1.0, 3.0});
    REQUIRE(sums.size() == 4);
    const double expected[] = {-2.0, -1.0, 1.0, 2.0};
    for (int k = 0; k < 4; ++k) {
        CHECK(sums[k].frequency == doctest::Approx(expected[k]));
        CHECK(sums[k].redundancy == doctest::Approx(1.0));
    }
}

TEST_CASE("Pauli dimension spectra are the integers with central-binomial redundancy") {
    for (int gates : {1, 2, 5, 8, 12}) {
        const EncodingLayout layout = EncodingLayout::pauli(1, gates);
        const DimensionSpectrum spectrum = build_dimension_spectrum(layout, 0);
        REQUIRE(static_cast<int>(spectrum.distinct()) == 2 * gates + 1);

        // brute-force oracle over all index pairs
        const auto brute = testutil::brute_force_spectrum(
            pauli_eigs(gates), std::vector<double>(static_cast<std::size_t>(gates), 1.0), 1e-9);
        REQUIRE(brute.size() == spectrum.distinct());
        for (std::size_t k = 0; k < brute.size(); ++k) {
            CHECK(spectrum.entries[k].frequency ==
                  doctest::Approx(brute[k].first).epsilon(1e-9));
            CHECK(spectrum.entries[k].redundancy == doctest::Approx(brute[k].second));
        }

        // closed form: redundancy of integer k is C(2L, L+k)
        for (std::size_t k = 0; k < spectrum.entries.size(); ++k) {
            const double freq = spectrum.entries[k].frequency;
            const double expected =
                std::exp(testutil::log_binomial(2.0 * gates, gates + freq));
            CHECK(spectrum.entries[k].redundancy ==
                  doctest::Approx(expected).epsilon(1e-9));
        }
        CHECK(spectrum.redundancy_sum() == doctest::Approx(std::pow(4.0, gates)));
    }
}

TEST_CASE("two hundred Pauli gates stay polynomial and match the binomial profile") {
    const EncodingLayout layout = EncodingLayout::pauli(1, 200);
    const DimensionSpectrum spectrum = build_dimension_spectrum(layout, 0);
    REQUIRE(spectrum.distinct() == 401);
    // total pair count is 2^400
    CHECK(std::log2(spectrum.redundancy_sum()) == doctest::Approx(400.0).epsilon(1e-12));
    for (int k : {0, 1, 17, 100, 200}) {
        const FrequencyEntry& entry = spectrum.entries[static_cast<std::size_t>(200 + k)];
        CHECK(entry.frequency == doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
        const double expected = testutil::log_binomial(400.0, 200.0 + k);
        CHECK(std::log(entry.redundancy) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("exponential scaling produces the full integer range") {
    SUBCASE("two gates") {
        const EncodingLayout layout = EncodingLayout::exponential(1, 2);
        const DimensionSpectrum spectrum = build_dimension_spectrum(layout, 0);
        REQUIRE(spectrum.distinct() == 9);  // 3^2
        for (int k = 0; k < 9; ++k) {
            CHECK(spectrum.entries[static_cast<std::size_t>(k)].frequency ==
                  doctest::Approx(static_cast<double>(k - 4)).epsilon(1e-9));
        }
        CHECK(spectrum.redundancy_sum() == doctest::Approx(16.0));
    }
    SUBCASE("five gates") {
        const EncodingLayout layout = EncodingLayout::exponential(1, 5);
        const DimensionSpectrum spectrum = build_dimension_spectrum(layout, 0);
        CHECK(spectrum.distinct() == 243);  // 3^5
        CHECK(spectrum.max_frequency() == doctest::Approx(121.0).epsilon(1e-9));
    }
}

TEST_CASE("positive half keeps one representative per sign pair plus zero") {
    SUBCASE("one dimension") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(1, 5));
        const std::vector<WeightedFrequency> half = positive_half(spectrum);
        REQUIRE(half.size() == 6);  // 0..5
        for (int k = 0; k < 6; ++k) {
            CHECK(half[static_cast<std::size_t>(k)].frequency(0) ==
                  doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
        }
    }
    SUBCASE("four dimensions, five gates") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(4, 5));
        CHECK(positive_half(spectrum).size() == 7321);
    }
    SUBCASE("two dimensions with entries -1, 0, 1") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(2, 1));
        const std::vector<WeightedFrequency> half = positive_half(spectrum);
        REQUIRE(half.size() == 5);  // (9 - 1)/2 + 1
        std::set<std::pair<int, int>> seen;
        for (const WeightedFrequency& w : half) {
            seen.insert({static_cast<int>(std::lround(w.frequency(0))),
                         static_cast<int>(std::lround(w.frequency(1)))});
        }
        const std::set<std::pair<int, int>> expected{{0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};
        CHECK(seen == expected);
    }
}

TEST_CASE("spectrum sizes come from counts alone") {
    SUBCASE("large product is never materialized") {
        const SpectrumCounts counts = spectrum_size(EncodingLayout::pauli(16, 20));
        CHECK(counts.total_distinct == doctest::Approx(std::pow(41.0, 16.0)).epsilon(1e-12));
        CHECK(counts.positive_count ==
              doctest::Approx((std::pow(41.0, 16.0) - 1.0) / 2.0 + 1.0).epsilon(1e-12));
    }
    SUBCASE("single gate") {
        const SpectrumCounts counts = spectrum_size(EncodingLayout::pauli(1, 1));
        CHECK(counts.total_distinct == doctest::Approx(3.0));
        CHECK(counts.positive_count == doctest::Approx(2.0));
    }
}

TEST_CASE("sigma_p matches the Pauli closed form and direct enumeration") {
    SUBCASE("two gates, one dimension") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(1, 2));
        CHECK(variance_sigma_p(spectrum) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sigma_p_pauli(2, 1) == doctest::Approx(2.0));
    }
    SUBCASE("one gate, three dimensions") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(3, 1));
        CHECK(variance_sigma_p(spectrum) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sigma_p_pauli(1, 3) == doctest::Approx(2.0));
    }
    SUBCASE("zero-only spectrum") {
        Spectrum spectrum;
        spectrum.dimensions.push_back(DimensionSpectrum{{FrequencyEntry{0.0, 1.0}}});
        CHECK(variance_sigma_p(spectrum) == 0.0);
    }
    SUBCASE("closed form equals enumeration up to L = 12, d <= 3") {
        for (int d : {1, 2, 3}) {
            for (int gates : {1, 4, 12}) {
                const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(d, gates));
                CHECK(variance_sigma_p(spectrum) ==
                      doctest::Approx(sigma_p_pauli(gates, d)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("factorized form equals the Cartesian enumeration") {
        const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(2, 3));
        const std::vector<WeightedFrequency> all = enumerate_full(spectrum);
        double mean = 0.0;
        for (const WeightedFrequency& w : all) mean += w.frequency.squaredNorm();
        mean /= static_cast<double>(all.size());
        CHECK(variance_sigma_p(spectrum) == doctest::Approx(mean).epsilon(1e-12));
    }
}

TEST_CASE("scaling every factor by c scales frequencies and keeps redundancies") {
    EncodingLayout layout = EncodingLayout::exponential(1, 3);
    const DimensionSpectrum base = build_dimension_spectrum(layout, 0);
    const double c = 2.5;
    for (double& s : layout.scalings[0]) s *= c;
    const DimensionSpectrum scaled = build_dimension_spectrum(layout, 0);
    REQUIRE(scaled.distinct() == base.distinct());
    for (std::size_t k = 0; k < base.entries.size(); ++k) {
        CHECK(scaled.entries[k].frequency ==
              doctest::Approx(c * base.entries[k].frequency).epsilon(1e-9));
        CHECK(scaled.entries[k].redundancy == doctest::Approx(base.entries[k].redundancy));
    }
}

TEST_CASE("dimension spectra are symmetric, contain zero, and count all pairs") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int gates = 1 + static_cast<int>(rng.uniform_index(4));
        EncodingLayout layout;
        layout.gates.emplace_back();
        layout.scalings.emplace_back();
        double pair_count = 1.0;
        for (int l = 0; l < gates; ++l) {
            const int p = 1 + static_cast<int>(rng.uniform_index(2));
            layout.gates[0].push_back(HamiltonianSpec::explicit_matrix(
                p, testutil::random_hermitian(1 << p, rng)));
            layout.scalings[0].push_back(rng.uniform_double(0.5, 2.0));
            pair_count *= static_cast<double>(1 << p);
        }
        const DimensionSpectrum spectrum = build_dimension_spectrum(layout, 0);
        CHECK(spectrum.contains(0.0, 1e-9));
        CHECK(spectrum.redundancy_sum() == doctest::Approx(pair_count * pair_count));
        const std::size_t n = spectrum.entries.size();
        for (std::size_t k = 0; k < n; ++k) {
            const FrequencyEntry& left = spectrum.entries[k];
            const FrequencyEntry& right = spectrum.entries[n - 1 - k];
            CHECK(left.frequency == doctest::Approx(-right.frequency).epsilon(1e-9));
            CHECK(left.redundancy == doctest::Approx(right.redundancy));
        }
    }
}

TEST_CASE("enumeration caps raise SpectrumTooLarge") {
    const EncodingLayout layout = EncodingLayout::exponential(1, 10);  // 1024 sums
    CHECK_THROWS_AS(build_dimension_spectrum(layout, 0, kDefaultDedupTol, 1000),
                    SpectrumTooLarge);
    const Spectrum spectrum = build_spectrum(EncodingLayout::pauli(4, 5));
    CHECK_THROWS_AS(positive_half(spectrum, 100), SpectrumTooLarge);
}
