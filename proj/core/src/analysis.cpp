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

#include "qrff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace qrff {

namespace {

using Complex = std::complex<double>;

// in-place length-N DFT along one axis of a flattened d=1/d=2 array
std::vector<Complex> dft_1d(const std::vector<Complex>& values) {
    const std::size_t n = values.size();
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (std::size_t m = 0; m < n; ++m) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * M_PI * static_cast<double>(m * j % n) / n;
            acc += values[j] * Complex(std::cos(angle), std::sin(angle));
        }
        out[m] = acc / static_cast<double>(n);
    }
    return out;
}

int signed_mode(int m, int n) { return m < n / 2 ? m : m - n; }

}  // namespace

EmpiricalSpectrum empirical_fourier(const SeededEvaluator& evaluator, double x_max,
                                    int grid_points, int dims,
                                    std::span<const std::uint64_t> seeds,
                                    double max_expected_frequency) {
    if (dims != 1 && dims != 2) throw InvalidSpec("empirical Fourier supports d <= 2");
    if (grid_points < 2 || grid_points % 2 != 0) throw InvalidSpec("grid size must be even");
    if (!(x_max > 0.0)) throw InvalidSpec("x_max must be positive");
    if (seeds.empty()) throw InvalidSpec("need at least one seed");
    if (max_expected_frequency > 0.0 &&
        grid_points < 2.0 * max_expected_frequency * x_max / M_PI) {
        throw ShannonViolation("grid too small for the expected maximum frequency");
    }

    const int n = grid_points;
    const double step = x_max / n;
    const std::size_t total = dims == 1 ? static_cast<std::size_t>(n)
                                        : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

    std::vector<double> accumulated(total, 0.0);
    for (const std::uint64_t seed : seeds) {
        std::vector<Complex> samples(total);
        if (dims == 1) {
            Eigen::VectorXd x(1);
            for (int j = 0; j < n; ++j) {
                x(0) = j * step;
                samples[static_cast<std::size_t>(j)] = evaluator(x, seed);
            }
        } else {
            Eigen::VectorXd x(2);
            for (int j1 = 0; j1 < n; ++j1) {
                for (int j2 = 0; j2 < n; ++j2) {
                    x(0) = j1 * step;
                    x(1) = j2 * step;
                    samples[static_cast<std::size_t>(j1) * n + j2] = evaluator(x, seed);
                }
            }
        }
        std::vector<Complex> coeffs;
        if (dims == 1) {
            coeffs = dft_1d(samples);
        } else {
            // row-column decomposition of the 2-d transform
            coeffs.assign(total, Complex(0.0, 0.0));
            std::vector<Complex> line(static_cast<std::size_t>(n));
            for (int j1 = 0; j1 < n; ++j1) {
                for (int j2 = 0; j2 < n; ++j2) line[j2] = samples[static_cast<std::size_t>(j1) * n + j2];
                const std::vector<Complex> row = dft_1d(line);
                for (int m2 = 0; m2 < n; ++m2) coeffs[static_cast<std::size_t>(j1) * n + m2] = row[m2];
            }
            for (int m2 = 0; m2 < n; ++m2) {
                for (int j1 = 0; j1 < n; ++j1) line[j1] = coeffs[static_cast<std::size_t>(j1) * n + m2];
                const std::vector<Complex> col = dft_1d(line);
                for (int m1 = 0; m1 < n; ++m1) coeffs[static_cast<std::size_t>(m1) * n + m2] = col[m1];
            }
        }
        for (std::size_t i = 0; i < total; ++i) accumulated[i] += std::abs(coeffs[i]);
    }

    EmpiricalSpectrum out;
    out.dims = dims;
    out.averaging_count = static_cast<int>(seeds.size());
    const double base = 2.0 * M_PI / x_max;
    if (dims == 1) {
        for (int m = 0; m < n; ++m) {
            Eigen::VectorXd freq(1);
            freq(0) = base * signed_mode(m, n);
            out.frequencies.push_back(freq);
            out.magnitudes.push_back(accumulated[static_cast<std::size_t>(m)] / seeds.size());
        }
    } else {
        for (int m1 = 0; m1 < n; ++m1) {
            for (int m2 = 0; m2 < n; ++m2) {
                Eigen::VectorXd freq(2);
                freq(0) = base * signed_mode(m1, n);
                freq(1) = base * signed_mode(m2, n);
                out.frequencies.push_back(freq);
                out.magnitudes.push_back(accumulated[static_cast<std::size_t>(m1) * n + m2] /
                                         seeds.size());
            }
        }
    }
    return out;
}

double omega_effective(const EmpiricalSpectrum& spectrum, double relative_threshold) {
    double max_magnitude = 0.0;
    for (double m : spectrum.magnitudes) max_magnitude = std::max(max_magnitude, m);
    if (max_magnitude <= 0.0) return 0.0;
    double cutoff = 0.0;
    for (std::size_t i = 0; i < spectrum.magnitudes.size(); ++i) {
        if (spectrum.magnitudes[i] > relative_threshold * max_magnitude) {
            cutoff = std::max(cutoff, spectrum.frequencies[i].cwiseAbs().maxCoeff());
        }
    }
    return cutoff;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * (i + j) + 1.0;  // ties share the average rank
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (a[i] - mean_a) * (b[i] - mean_b);
        var_a += (a[i] - mean_a) * (a[i] - mean_a);
        var_b += (b[i] - mean_b) * (b[i] - mean_b);
    }
    if (var_a <= 0.0 || var_b <= 0.0) {
        throw InsufficientData("rank correlation undefined for constant inputs");
    }
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace

double redundancy_correlation(const EmpiricalSpectrum& empirical,
                              const DimensionSpectrum& theoretical, double match_tol) {
    if (empirical.dims != 1) throw InvalidSpec("redundancy correlation expects a 1-d spectrum");
    std::vector<double> redundancies, magnitudes;
    for (const FrequencyEntry& entry : theoretical.entries) {
        double best_distance = match_tol;
        double best_magnitude = 0.0;
        bool found = false;
        for (std::size_t i = 0; i < empirical.frequencies.size(); ++i) {
            const double distance = std::abs(empirical.frequencies[i](0) - entry.frequency);
            if (distance <= best_distance) {
                best_distance = distance;
                best_magnitude = empirical.magnitudes[i];
                found = true;
            }
        }
        if (found) {
            redundancies.push_back(entry.redundancy);
            magnitudes.push_back(best_magnitude);
        }
    }
    if (redundancies.size() < 3) {
        throw InsufficientData("fewer than three frequencies matched the empirical grid");
    }
    return pearson(average_ranks(redundancies), average_ranks(magnitudes));
}

double dft_out_of_spectrum_ratio(const EmpiricalSpectrum& empirical, const Spectrum& spectrum,
                                 double tol) {
    if (empirical.dims != spectrum.dims()) throw ShapeError("dimension mismatch");
    double max_in = 0.0, max_out = 0.0;
    for (std::size_t i = 0; i < empirical.frequencies.size(); ++i) {
        bool inside = true;
        for (int k = 0; k < spectrum.dims(); ++k) {
            if (!spectrum.dimensions[k].contains(empirical.frequencies[i](k), tol)) {
                inside = false;
                break;
            }
        }
        double& bucket = inside ? max_in : max_out;
        bucket = std::max(bucket, empirical.magnitudes[i]);
    }
    if (max_in <= 0.0) return std::numeric_limits<double>::infinity();
    return max_out / max_in;
}

double containment_residual_ratio(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& values,
                                  const std::vector<Eigen::VectorXd>& candidate_frequencies) {
    if (inputs.rows() != values.size()) throw ShapeError("inputs/values length mismatch");
    const long m = inputs.rows();
    long columns = 0;  // zero frequencies contribute a constant column only
    for (const Eigen::VectorXd& w : candidate_frequencies) {
        columns += w.isZero(0.0) ? 1 : 2;
    }
    Eigen::MatrixXd design(m, columns);
    long col = 0;
    for (const Eigen::VectorXd& w : candidate_frequencies) {
        const Eigen::VectorXd phase = inputs * w;
        design.col(col++) = phase.array().cos();
        if (!w.isZero(0.0)) design.col(col++) = phase.array().sin();
    }
    const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(values);
    const double residual = (design * coeffs - values).cwiseAbs().maxCoeff();
    const double scale = coeffs.cwiseAbs().maxCoeff();
    if (scale <= 0.0) return residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return residual / scale;
}

std::vector<Packet> detect_packets(const DimensionSpectrum& spectrum, double gap_threshold) {
    std::vector<Packet> packets;
    std::size_t i = 0;
    while (i < spectrum.entries.size()) {
        Packet packet;
        packet.low = spectrum.entries[i].frequency;
        packet.high = packet.low;
        packet.count = 1;
        packet.redundancy = spectrum.entries[i].redundancy;
        std::size_t j = i + 1;
        while (j < spectrum.entries.size() &&
               spectrum.entries[j].frequency - spectrum.entries[j - 1].frequency <= gap_threshold) {
            packet.high = spectrum.entries[j].frequency;
            packet.redundancy += spectrum.entries[j].redundancy;
            ++packet.count;
            ++j;
        }
        packets.push_back(packet);
        i = j;
    }
    return packets;
}

void BoundInputs::validate() const {
    if (!(epsilon > 0.0)) throw InvalidSpec("epsilon must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) throw InvalidSpec("delta must lie in (0, 1)");
    if (!(lambda0 > 0.0)) throw InvalidSpec("lambda0 must be positive");
    if (!(step > 0.0)) throw InvalidSpec("step must be positive");
}

double bound_rff_kernel(const BoundInputs& inputs, double num_samples) {
    inputs.validate();
    const double prefactor =
        66.0 * std::pow(inputs.sigma_p * inputs.domain_diameter / inputs.epsilon, 2.0);
    return prefactor * std::exp(-num_samples * inputs.epsilon * inputs.epsilon /
                                (4.0 * (inputs.dims + 2.0)));
}

namespace {

double theorem_bound(int dims, double lambda0, double sigma_y, double epsilon, double delta,
                     double log_population) {
    const double prefactor = (lambda0 + 1.0) * sigma_y / (lambda0 * lambda0 * epsilon);
    return dims * prefactor * prefactor *
           (log_population + std::log(prefactor) - std::log(delta));
}

}  // namespace

double bound_samples(const BoundInputs& inputs) {
    inputs.validate();
    return theorem_bound(inputs.dims, inputs.lambda0, inputs.sigma_y, inputs.epsilon, inputs.delta,
                         std::log(inputs.sigma_p * inputs.domain_diameter));
}

double bound_samples_pauli(const BoundInputs& inputs) {
    inputs.validate();
    const double sigma_p = sigma_p_pauli(static_cast<int>(inputs.gates_per_dim), inputs.dims);
    return theorem_bound(inputs.dims, inputs.lambda0, inputs.sigma_y, inputs.epsilon, inputs.delta,
                         std::log(sigma_p * inputs.domain_diameter));
}

double bound_samples_grid(const BoundInputs& inputs) {
    inputs.validate();
    const double c = inputs.domain_diameter * inputs.f_inf;
    if (!(inputs.step < inputs.epsilon / c)) {
        throw StepTooCoarse("grid step must satisfy s < epsilon / (|X| |f|_inf)");
    }
    const double shrunk = inputs.epsilon - inputs.step * c;
    // grid population w_max/s replaces the spectrum spread inside the log
    return theorem_bound(inputs.dims, inputs.lambda0, inputs.sigma_y, shrunk, inputs.delta,
                         std::log(inputs.omega_max / inputs.step * inputs.domain_diameter));
}

GridShiftResult grid_shift_construction(const TrigSeries& series, double grid_step,
                                        double domain_diameter) {
    if (!(grid_step > 0.0)) throw InvalidSpec("grid step must be positive");
    GridShiftResult result;
    result.shifted = series;
    double worst = 0.0;
    for (int k = 0; k < series.terms(); ++k) {
        Eigen::VectorXd shifted(series.dims());
        for (int c = 0; c < series.dims(); ++c) {
            const double w = series.frequencies(k, c);
            double node = std::round(w / grid_step) * grid_step;
            // half-way ties move toward zero
            if (std::abs(std::abs(w / grid_step - std::trunc(w / grid_step)) - 0.5) < 1e-12) {
                node = std::trunc(w / grid_step) * grid_step;
            }
            shifted(c) = node;
        }
        worst = std::max(worst,
                         (shifted - series.frequencies.row(k).transpose()).norm());
        result.shifted.frequencies.row(k) = shifted.transpose();
    }
    result.max_displacement = worst;
    result.certified_bound = worst * domain_diameter * series.coefficient_l1();
    return result;
}

}  // namespace qrff
