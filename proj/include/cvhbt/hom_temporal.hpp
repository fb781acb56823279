// Copyright 2026 The cvhbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <utility>
#include <vector>

#include "cvhbt/core_state.hpp"

namespace cvhbt {

/// Stationary phase-diffusing mode functions alpha(t), beta(t) with
///   <alpha*(t) alpha(t + tau)> = I_a exp(-tau^2 / tau_a^2)
/// and likewise for beta. Amplitudes are constant (|alpha(t)|^2 = I_a
/// deterministically); only the phases diffuse.
struct TemporalParams {
  double intensity_a = 1.0;
  double intensity_b = 1.0;
  double tau_a = 1.0;
  double tau_b = 1.0;

  /// Throws InvalidParameter unless all four fields are finite and > 0.
  void validate() const;
  double tau_c() const;
};

/// Coincidence probability p(T) sampled on a grid of T = tau / tau_c.
struct DipCurve {
  std::vector<double> times;
  std::vector<double> values;
};

/// 1 / sqrt(1/tau_a^2 + 1/tau_b^2).
double combined_coherence_time(double tau_a, double tau_b);

/// Second-order coherence <E_c^- (t) E_d^- (t+tau) E_d^+ (t+tau) E_c^+ (t)>,
/// averaged over the phase diffusion; depends on tau only.
double g2_temporal(const EprParams& params, const TemporalParams& temporal, double tau);

/// p(T) = 1 - v exp(-T^2), i.e. G2(tau) / G2(infinity) at equal intensities.
double coincidence_probability(const EprParams& params, double t);

/// (T, p) at the bottom of the dip: (0, 1 - v).
std::pair<double, double> dip_minimum(const EprParams& params);

/// `steps` uniformly spaced points on [t_min, t_max], both ends included.
DipCurve dip_scan(const EprParams& params, double t_min, double t_max, int steps);

}  // namespace cvhbt
