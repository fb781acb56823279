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

#include "cvhbt/hbt_interference.hpp"

#include <cmath>
#include <string>

#include "cvhbt/errors.hpp"
#include "cvhbt/gaussian_moments.hpp"
#include "cvhbt/io.hpp"

namespace cvhbt {

namespace {

void require_nondegenerate(const EprParams& params) {
  require_physical(params);
  if (params.nbar() == 0.0 && params.mc_abs() == 0.0) {
    throw DegenerateState("vacuum input: visibility is 0/0");
  }
}

complex moment(const SecondMoments& table, std::string_view word) {
  return normally_ordered_moment(table, OperatorWord::parse(word));
}

}  // namespace

std::string_view to_string(WitnessVerdict v) {
  return v == WitnessVerdict::EntanglementWitnessed ? "EntanglementWitnessed"
                                                    : "SeparableConsistent";
}

double visibility(const EprParams& params) {
  require_nondegenerate(params);
  const double n2 = params.nbar() * params.nbar();
  const double m2 = params.mc_abs_squared();
  return (n2 + m2) / (3.0 * n2 + m2);
}

double hbt_correlation_closed_form(const EprParams& params, double phase_difference) {
  require_physical(params);
  const double n2 = params.nbar() * params.nbar();
  const double m2 = params.mc_abs_squared();
  // Written without the visibility ratio so the vacuum gives 0 instead of 0/0.
  return 0.5 * ((3.0 * n2 + m2) - (n2 + m2) * std::cos(phase_difference));
}

double hbt_correlation(const EprParams& params, double phi1, double phi2) {
  const SecondMoments table = covariance_table(params);
  const complex e1 = std::polar(1.0, phi1);
  const complex e2 = std::polar(1.0, phi2);

  const complex intensity_sq = total_intensity_square(table);
  const complex cross = moment(table, "ad bd a b");
  // b^dag (a^dag a + b^dag b) a and a^dag (a^dag a + b^dag b) b, normal ordered.
  const complex lower_b = moment(table, "bd ad a a") + moment(table, "bd bd b a");
  const complex lower_a = moment(table, "ad ad a b") + moment(table, "ad bd b b");
  const complex b2a2 = moment(table, "bd bd a a");
  const complex a2b2 = moment(table, "ad ad b b");

  const complex sum = intensity_sq - 2.0 * cross * std::cos(phi1 - phi2) +
                      (std::conj(e1) - std::conj(e2)) * lower_b + (e1 - e2) * lower_a -
                      std::conj(e1 * e2) * b2a2 - e1 * e2 * a2b2;
  const double value = 0.25 * sum.real();

  const double closed = hbt_correlation_closed_form(params, phi1 - phi2);
  const double scale = std::max(1.0, std::abs(closed));
  if (std::abs(value - closed) > 1e-12 * scale || std::abs(0.25 * sum.imag()) > 1e-12 * scale) {
    throw ContractViolation("hbt_correlation: Wick assembly " + io::shortest(value) +
                            " disagrees with closed form " + io::shortest(closed));
  }
  return value;
}

std::vector<FringePoint> fringe_scan(const EprParams& params,
                                     std::span<const std::pair<double, double>> phases) {
  if (phases.empty()) throw InvalidParameter("fringe_scan: empty phase list");
  std::vector<FringePoint> out;
  out.reserve(phases.size());
  for (const auto& [phi1, phi2] : phases) {
    out.push_back({phi1, phi2, hbt_correlation(params, phi1, phi2)});
  }
  return out;
}

WitnessReport witness_mean(const EprParams& params) {
  require_nondegenerate(params);
  const SecondMoments table = covariance_table(params);
  const double pair_moment = normally_ordered_moment(table, OperatorWord::parse("ad bd a b")).real();
  const double value = 0.5 - 2.0 * pair_moment / total_intensity_square(table);

  const double n = params.nbar();
  const double m = params.mc_abs();
  // (n - m)(n + m) keeps the sign exact at the separable border |mc| = nbar.
  const double closed = (n - m) * (n + m) / (2.0 * (3.0 * n * n + m * m));
  if (std::abs(value - closed) > 1e-12) {
    throw ContractViolation("witness_mean: moment form disagrees with closed form");
  }
  return {closed, closed < 0.0 ? WitnessVerdict::EntanglementWitnessed
                               : WitnessVerdict::SeparableConsistent};
}

bool classical_bound_violated(const EprParams& params) {
  // v > 1/2  <=>  |mc|^2 > nbar^2; compared directly so the border never
  // flips on a rounding of the ratio.
  require_nondegenerate(params);
  return params.mc_abs() > params.nbar();
}

}  // namespace cvhbt
