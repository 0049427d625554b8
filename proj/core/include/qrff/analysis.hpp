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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qrff/spectrum.hpp"
#include "qrff/trig_series.hpp"

namespace qrff {

/**
 * Magnitudes of the discrete Fourier coefficients of sampled model
 * outputs, averaged over model seeds. Mode m of a length-N transform over
 * [0, x_max) estimates |c_w| at w = 2 pi m / x_max; modes run from -N/2
 * to N/2 - 1 per dimension.
 */
struct EmpiricalSpectrum {
    int dims = 1;
    std::vector<Eigen::VectorXd> frequencies;  // one d-vector per retained mode
    std::vector<double> magnitudes;            // averaged |c|, same order
    int averaging_count = 1;
};

/// Model factory: x and a seed (fresh parameters per seed) to a value.
using SeededEvaluator = std::function<double(const Eigen::VectorXd&, std::uint64_t)>;

/**
 * DFT of evaluator samples on the uniform grid over [0, x_max)^d,
 * d <= 2, magnitudes averaged over the given seeds. grid_points must be
 * even, and at least 2 * w_max * x_max / pi when a largest expected
 * frequency is supplied (0 skips the check).
 */
EmpiricalSpectrum empirical_fourier(const SeededEvaluator& evaluator, double x_max,
                                    int grid_points, int dims,
                                    std::span<const std::uint64_t> seeds,
                                    double max_expected_frequency = 0.0);

/// Largest |frequency| whose averaged magnitude exceeds
/// relative_threshold times the maximum magnitude.
double omega_effective(const EmpiricalSpectrum& spectrum, double relative_threshold = 0.01);

/// Spearman rank correlation between per-frequency redundancy and the
/// averaged empirical magnitude at the nearest mode (within match_tol).
/// Fewer than three matched frequencies raises InsufficientData.
double redundancy_correlation(const EmpiricalSpectrum& empirical,
                              const DimensionSpectrum& theoretical, double match_tol);

/// Largest out-of-spectrum DFT magnitude relative to the largest
/// in-spectrum one. A mode is in-spectrum when each component is within
/// tol of a spectrum frequency of its dimension.
double dft_out_of_spectrum_ratio(const EmpiricalSpectrum& empirical, const Spectrum& spectrum,
                                 double tol);

/**
 * Residual-based spectral containment for non-periodic spectra: least
 * squares of the samples onto {1, cos(w^T x), sin(w^T x)} over the
 * candidate frequencies, returning max |residual| relative to the
 * largest fitted coefficient magnitude. Near zero iff the samples live
 * in the span of the candidate frequencies.
 */
double containment_residual_ratio(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& values,
                                  const std::vector<Eigen::VectorXd>& candidate_frequencies);

/// A run of consecutive spectrum frequencies with neighbor gaps below the
/// threshold; the qualitative "packet" structure of complex encodings.
struct Packet {
    double low = 0.0;
    double high = 0.0;
    int count = 0;
    double redundancy = 0.0;
};

std::vector<Packet> detect_packets(const DimensionSpectrum& spectrum, double gap_threshold = 0.5);

/// Inputs of the sample-complexity calculators. sigma_p enters formulas
/// exactly as supplied; variance_sigma_p() computes the mean squared
/// frequency norm, whose square root is the kernel-bound sigma_p.
struct BoundInputs {
    int dims = 1;
    double lambda0 = 1e-6;
    double epsilon = 0.05;
    double delta = 0.01;
    double sigma_y = 1.0;
    double domain_diameter = 1.0;  // |X|
    double sigma_p = 1.0;
    double gates_per_dim = 1.0;    // L, Pauli bound only
    double omega_max = 1.0;        // grid bound only
    double step = 0.1;             // grid bound only
    double f_inf = 1.0;            // |f|_inf, grid bound only

    void validate() const;
};

/// Kernel approximation failure probability
///   66 (sigma_p |X| / eps)^2 exp(-D eps^2 / (4(d+2))),
/// returned unclamped; reports clamp to [0, 1].
double bound_rff_kernel(const BoundInputs& inputs, double num_samples);

/// Prediction-error sample bound
///   d P^2 [log(sigma_p |X|) + log P - log delta],  P = (1+l0) sigma_y / (l0^2 eps).
double bound_samples(const BoundInputs& inputs);

/// Same with the Pauli spectrum's sigma_p = d L(L+1)/3 substituted.
double bound_samples_pauli(const BoundInputs& inputs);

/// Grid-sampling variant: eps shrinks to eps - s C with C = |X| |f|_inf,
/// and the log counts the grid population (w_max / s) |X|. Requires
/// s < eps / C, else StepTooCoarse.
double bound_samples_grid(const BoundInputs& inputs);

struct GridShiftResult {
    TrigSeries shifted;        // same coefficients, frequencies moved onto the grid
    double max_displacement = 0.0;
    double certified_bound = 0.0;  // max_displacement * |X| * sum(|a|+|b|)
};

/// Move every frequency to its nearest lattice node (multiples of
/// grid_step, ties toward zero), carrying coefficients unchanged, and
/// certify the sup-error bound of the construction.
GridShiftResult grid_shift_construction(const TrigSeries& series, double grid_step,
                                        double domain_diameter);

}  // namespace qrff
