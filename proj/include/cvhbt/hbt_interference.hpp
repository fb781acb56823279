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

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cvhbt/core_state.hpp"

namespace cvhbt {

struct FringePoint {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double correlation = 0.0;
};

enum class WitnessVerdict { SeparableConsistent, EntanglementWitnessed };

std::string_view to_string(WitnessVerdict v);

struct WitnessReport {
  double value = 0.0;
  WitnessVerdict verdict = WitnessVerdict::SeparableConsistent;
};

/// Upper bound on the second-order visibility of any classical field.
inline constexpr double kClassicalVisibilityBound = 0.5;

/// Second-order fringe visibility (nbar^2 + |mc|^2) / (3 nbar^2 + |mc|^2).
/// Throws UnphysicalParameters, or DegenerateState for nbar = mc = 0.
double visibility(const EprParams& params);

/// Normally ordered intensity correlation <:I(phi1) I(phi2):> behind a
/// 50/50 beam splitter; detector 1 sees (a + b e^{i phi1})/sqrt2, detector 2
/// sees (a - b e^{i phi2})/sqrt2. Assembled term by term from Wick moments
/// and checked against the closed form (1/2)(3 nbar^2 + |mc|^2)(1 - v cos dphi).
double hbt_correlation(const EprParams& params, double phi1, double phi2);

/// Closed form only; used by scans and as the cross-check above.
double hbt_correlation_closed_form(const EprParams& params, double phase_difference);

/// Pointwise hbt_correlation, input order preserved. Empty input throws.
std::vector<FringePoint> fringe_scan(const EprParams& params,
                                     std::span<const std::pair<double, double>> phases);

/// Mean of the HBT witness 1/2 - 2 a^dag b^dag a b / <:(I_a + I_b)^2:>.
/// Negative mean certifies entanglement.
WitnessReport witness_mean(const EprParams& params);

/// visibility > 1/2. The separable border |mc| = nbar reports false.
bool classical_bound_violated(const EprParams& params);

}  // namespace cvhbt
