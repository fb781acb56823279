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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cvhbt/core_state.hpp"

namespace cvhbt {

/// One acquisition at a fixed setting: the phase difference (fringe runs)
/// or the dimensionless delay T (dip runs).
struct CountRecord {
  double setting = 0.0;
  double expected_rate = 0.0;
  std::int64_t counts = 0;
};

struct VisibilityEstimate {
  double v_hat = 0.0;
  double sigma_v = 0.0;
  double baseline_hat = 0.0;
  int n_settings = 0;
  std::uint64_t seed = 0;
  bool clipped = false;  // raw estimate fell outside [0, 1]
  double v_raw = 0.0;
};

enum class Verdict { Witnessed, Inconclusive };

std::string_view to_string(Verdict v);

/// Expected rates below this are sampled as exactly zero counts.
inline constexpr double kMinSampledRate = 1e-6;

/// Counts ~ Poisson(mean_counts (1 - v cos dphi)) at each phase difference.
///
/// Sampling: every setting index i gets its own std::mt19937_64 seeded with
/// splitmix64(seed, i), and std::poisson_distribution draws from it. Output
/// is therefore a pure function of the arguments and independent of the
/// order in which settings are processed.
std::vector<CountRecord> simulate_fringe_counts(const EprParams& params,
                                                std::span<const double> settings,
                                                double mean_counts, std::uint64_t seed);

/// Counts ~ Poisson(mean_counts p(T)) at each delay T, same sampling scheme.
std::vector<CountRecord> simulate_hom_counts(const EprParams& params,
                                             std::span<const double> times, double mean_counts,
                                             std::uint64_t seed);

/// Weighted least squares of counts on {1, cos dphi, sin dphi}. Weights are
/// Poisson (inverse of the model rate, refined over a few reweighting
/// passes starting from the observed counts). v_hat = -sign(c_cos)
/// sqrt(c_cos^2 + c_sin^2) / c_0, clipped into [0, 1]; sigma_v comes from
/// first-order propagation of the fit covariance. `seed` is carried through
/// for provenance only.
VisibilityEstimate fit_visibility(std::span<const CountRecord> records, std::uint64_t seed = 0);

/// Witnessed iff v_hat - k_sigma sigma_v > 1/2.
Verdict decide_entanglement(const VisibilityEstimate& estimate, double k_sigma);

/// `n` equally spaced phase differences 2 pi k / n, k = 0 .. n-1.
std::vector<double> uniform_phases(int n);

/// Seed of the independent substream used for setting `index`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cvhbt
