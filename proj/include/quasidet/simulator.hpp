// Copyright 2026 The quasidet authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Monte Carlo model of finite-strength measurement with a Gaussian pointer.
///
/// The system couples to a one-dimensional pointer so that eigenvalue a_k
/// translates the pointer by g*a_k.  Conditioned on post-selecting |f>, the
/// pointer wavefunction is the closed form
///
///   psi_f(x) = sum_k <f|P_k|i> G_sigma(x - g*a_k),
///
/// with G_sigma a normalized Gaussian amplitude (|G|^2 has width sigma), so
/// the simulator is exact up to grid discretization: no continuous-time
/// evolution is integrated.  Position readings rescaled by 1/g converge to
/// the real part of the weak value as g -> 0; momentum readings pick up the
/// imaginary part with a proportionality fixed by the pointer width (left to
/// calibration against the analytic distribution, never hardcoded).
///
/// Determinism contract: all sampling derives from SeededRng(seed, stream)
/// split into fixed-size shard substreams; per-shard sufficient statistics
/// (count, sum, sum of squares) merge over a fixed pairwise tree keyed by
/// shard index, so results are bit-identical for a given config regardless
/// of execution order.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasidet/sim_config.hpp"
#include "quasidet/states.hpp"

namespace quasidet {

namespace detail {

// Sufficient statistics of one shard's kept readings.
struct MomentAccumulator {
    std::uint64_t count = 0;
    double sum = 0.0;
    double sumsq = 0.0;
};

MomentAccumulator merge_pair(const MomentAccumulator &a, const MomentAccumulator &b);

// Reduces shard statistics over a fixed pairwise tree: element order is the
// shard index, so any execution schedule produces identical bits.
MomentAccumulator merge_moments_tree(std::vector<MomentAccumulator> by_shard);

} // namespace detail

// Discretized conditional pointer distribution for one outcome.
struct PointerDistribution {
    double prob_f = 0.0;          // integral of |psi_f|^2
    std::vector<double> grid;     // reading coordinate (position or momentum)
    std::vector<double> density;  // normalized: trapezoid integral is 1
    double mean = 0.0;            // trapezoid mean of the normalized density
};

struct PointerRecord {
    std::string final_label;
    std::uint64_t kept_shots = 0;
    double post_selection_rate = 0.0;
    double mean_reading = 0.0;
    double std_error = 0.0; // of mean_reading; +inf below 2 kept shots
    double rescaled_mean = 0.0; // mean_reading / g
};

struct Extrapolation {
    double estimate = 0.0;  // intercept of the even-order bias fit
    double ci = 0.0;        // standard error of the intercept
    double curvature = 0.0; // fitted g^2 coefficient
    std::vector<double> couplings;
    std::vector<PointerRecord> records; // one per coupling
};

PointerDistribution conditional_pointer_distribution(const Observable &a, const PureState &i,
                                                     const PureState &f, const SimConfig &cfg);

// Samples `cfg.shots` measurements: final outcome first (exact Born weights
// at coupling g), then a pointer reading from the outcome's conditional
// density by inverse-CDF lookup.  One record per basis vector, in order.
std::vector<PointerRecord> run_weak_measurement(const Observable &a, const PureState &i,
                                                const FinalBasis &basis, const SimConfig &cfg);

// Weighted least-squares fit  rescaled_mean(g) = w + c g^2  over at least
// three couplings (all <= sigma/2); returns w and its standard error.
// Pointer symmetry cancels odd orders, hence the even-order bias model.
Extrapolation extrapolate_weak_value(const Observable &a, const PureState &i, const PureState &f,
                                     const SimConfig &base_cfg,
                                     const std::vector<double> &couplings);

} // namespace quasidet
