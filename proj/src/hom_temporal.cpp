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

#include "cvhbt/hom_temporal.hpp"

#include <cmath>

#include "cvhbt/errors.hpp"
#include "cvhbt/gaussian_moments.hpp"
#include "cvhbt/hbt_interference.hpp"

namespace cvhbt {

namespace {

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw InvalidParameter(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

void TemporalParams::validate() const {
  require_positive(intensity_a, "TemporalParams: I_a");
  require_positive(intensity_b, "TemporalParams: I_b");
  require_positive(tau_a, "TemporalParams: tau_a");
  require_positive(tau_b, "TemporalParams: tau_b");
}

double TemporalParams::tau_c() const { return combined_coherence_time(tau_a, tau_b); }

double combined_coherence_time(double tau_a, double tau_b) {
  require_positive(tau_a, "combined_coherence_time: tau_a");
  require_positive(tau_b, "combined_coherence_time: tau_b");
  return 1.0 / std::sqrt(1.0 / (tau_a * tau_a) + 1.0 / (tau_b * tau_b));
}

double g2_temporal(const EprParams& params, const TemporalParams& temporal, double tau) {
  temporal.validate();
  if (!std::isfinite(tau)) throw InvalidParameter("g2_temporal: tau must be finite");
  const FourthOrderMoments m = fourth_order_set(params);

  const double ia = temporal.intensity_a;
  const double ib = temporal.intensity_b;
  // Phase-averaged mode-function products surviving in the coincidence
  // function. The interference term is the product of the two independent
  // first-order autocorrelations plus its conjugate.
  const double decay =
      std::exp(-tau * tau / (temporal.tau_a * temporal.tau_a) -
               tau * tau / (temporal.tau_b * temporal.tau_b));
  const double same_mode = ia * ia * m.aa + ib * ib * m.bb;
  const double cross_mode = (2.0 * ia * ib - 2.0 * ia * ib * decay) * m.ab;
  return 0.25 * (same_mode + cross_mode);
}

double coincidence_probability(const EprParams& params, double t) {
  if (!std::isfinite(t)) throw InvalidParameter("coincidence_probability: T must be finite");
  return 1.0 - visibility(params) * std::exp(-t * t);
}

std::pair<double, double> dip_minimum(const EprParams& params) {
  return {0.0, 1.0 - visibility(params)};
}

DipCurve dip_scan(const EprParams& params, double t_min, double t_max, int steps) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
    throw InvalidParameter("dip_scan: need finite t_min < t_max");
  }
  if (steps < 2) throw InvalidParameter("dip_scan: steps must be >= 2");
  const double v = visibility(params);
  DipCurve curve;
  curve.times.reserve(static_cast<std::size_t>(steps));
  curve.values.reserve(static_cast<std::size_t>(steps));
  const double span = steps - 1;
  for (int i = 0; i < steps; ++i) {
    // Weighted form hits both ends exactly and mirrors a symmetric interval
    // bit for bit.
    const double t = ((steps - 1 - i) * t_min + i * t_max) / span;
    curve.times.push_back(t);
    curve.values.push_back(1.0 - v * std::exp(-t * t));
  }
  return curve;
}

}  // namespace cvhbt
