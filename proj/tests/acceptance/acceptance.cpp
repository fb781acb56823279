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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "cvhbt/core_state.hpp"
#include "cvhbt/errors.hpp"
#include "cvhbt/experiment_sim.hpp"
#include "cvhbt/fock_oracle.hpp"
#include "cvhbt/gaussian_moments.hpp"
#include "cvhbt/hbt_interference.hpp"
#include "cvhbt/hom_temporal.hpp"
#include "test_oracles.hpp"

using namespace cvhbt;

namespace {

constexpr double kExact = 1e-12;
constexpr double kOracleTol = 1e-5;
constexpr double kOracleTailTol = 1e-10;
constexpr double kOracleSeconds = 60.0;
constexpr double kCrossingTol = 1e-6;
constexpr double kStatSeconds = 30.0;
constexpr double kNormTol = 1e-6;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome visibility_values() {
  const EprParams p(1.0, std::sqrt(2.0));
  const double v = visibility(p);
  const double pm = coincidence_probability(p, 0.0);
  return {std::abs(v - 0.6) <= kExact && std::abs(pm - 0.4) <= kExact,
          fmt("v=%.15g p_min=%.15g", v, pm)};
}

Outcome weak_squeezing_dip() {
  const double pm = coincidence_probability(EprParams::from_mc_squared(0.1, 0.11), 0.0);
  return {std::abs(pm - 1.0 / 7.0) <= kExact && std::abs(pm - 0.14) <= 0.005,
          fmt("p_min=%.15g", pm)};
}

Outcome thermal_and_border() {
  double worst = 0.0;
  for (double n : {0.01, 0.1, 1.0, 10.0}) {
    worst = std::max(worst, std::abs(visibility(EprParams(n, 0.0)) - 1.0 / 3.0));
    worst = std::max(worst, std::abs(visibility(EprParams(n, n)) - 0.5));
  }
  return {worst <= kExact, fmt("max_dev=%.3g", worst)};
}

Outcome witness_identity() {
  double worst = 0.0;
  int sign_mismatch = 0;
  int points = 0;
  for (int i = 0; i < 50; ++i) {
    const double n = 0.02 + 4.0 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const EprParams p(n, pure_mc(n) * j / 49.0);
      ++points;
      const double w = witness_mean(p).value;
      worst = std::max(worst, std::abs(w - (0.5 - visibility(p))));
      if (p.mc_abs() == p.nbar()) continue;
      if ((w < 0.0) != is_entangled(classify(p))) ++sign_mismatch;
    }
  }
  return {worst <= kExact && sign_mismatch == 0,
          fmt("points=%g max_dev=%.3g", points, worst) +
              " sign_mismatch=" + std::to_string(sign_mismatch)};
}

// Every normal-ordered fourth-order word, plus hbt at 12 phase differences.
Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const std::vector<EprParams> grid{EprParams(1.0, 0.0),  EprParams(1.0, 1.0),
                                    EprParams(1.0, 1.2),  EprParams(1.0, std::sqrt(2.0)),
                                    EprParams(0.1, 0.1),  EprParams(0.1, std::sqrt(0.11))};
  const std::vector<Ladder> creators{Ladder::AD, Ladder::BD};
  const std::vector<Ladder> annihilators{Ladder::A, Ladder::B};
  double worst = 0.0;
  int checks = 0;
  for (const auto& p : grid) {
    const int cutoff = std::max(2, truncation_for(p, kOracleTailTol));
    const FockArray rho = squeezed_thermal_density(p, cutoff, 4.0 * kOracleTailTol + 1e-14);
    const SecondMoments table = covariance_table(p);
    const double scale = fourth_order_set(p).aa + p.mc_abs_squared();
    for (Ladder c1 : creators) {
      for (Ladder c2 : creators) {
        for (Ladder a1 : annihilators) {
          for (Ladder a2 : annihilators) {
            const OperatorWord word({c1, c2, a1, a2});
            const complex analytic = normally_ordered_moment(table, word);
            const complex exact = moment_exact(rho, word);
            const double denom = std::abs(analytic) > 0.0 ? std::abs(analytic) : scale;
            worst = std::max(worst, std::abs(analytic - exact) / denom);
            ++checks;
          }
        }
      }
    }
    for (int k = 0; k < 12; ++k) {
      const double dphi = 2.0 * kPi * k / 12.0;
      const double analytic = hbt_correlation(p, 0.25 + dphi, 0.25);
      const double exact = hbt_correlation_exact(rho, 0.25 + dphi, 0.25);
      worst = std::max(worst, std::abs(analytic - exact) / analytic);
      ++checks;
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= kOracleTol && elapsed <= kOracleSeconds,
          fmt("max_rel_err=%.3g runtime=%.2fs", worst, elapsed) +
              " checks=" + std::to_string(checks)};
}

Outcome temporal_consistency() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double n = 0.01 + 3.0 * unit(rng);
    const EprParams p(n, pure_mc(n) * unit(rng));
    const double intensity = 0.2 + 2.0 * unit(rng);
    const TemporalParams tp{intensity, intensity, 0.2 + 2.0 * unit(rng), 0.2 + 2.0 * unit(rng)};
    const double tau = 6.0 * (unit(rng) - 0.5);
    const double asymptote = g2_temporal(p, tp, 1e3 * std::max(tp.tau_a, tp.tau_b));
    const double ratio = g2_temporal(p, tp, tau) / asymptote;
    worst = std::max(worst, std::abs(ratio - coincidence_probability(p, tau / tp.tau_c())));
  }
  return {worst <= kExact, fmt("max_dev=%.3g", worst)};
}

double scan_crossing(double nbar) {
  const std::string nbar_text = std::to_string(nbar);
  const char* argv[] = {"cvhbt", "visibility-scan", "--nbar", nbar_text.c_str()};
  std::ostringstream out, err;
  if (cli::run(4, argv, out, err) != cli::kOk) return std::nan("");
  std::istringstream in(out.str());
  std::string line;
  const std::string key = "# refined_crossing_mc=";
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) return std::stod(line.substr(key.size()));
  }
  return std::nan("");
}

Outcome figure_crossing() {
  double worst = 0.0;
  for (double n : {1.0, 0.1}) {
    const double c = scan_crossing(n);
    worst = std::isnan(c) ? INFINITY : std::max(worst, std::abs(c - n));
  }
  return {worst <= kCrossingTol, fmt("max_crossing_offset=%.3g", worst)};
}

Outcome statistical_estimator() {
  const auto t0 = Clock::now();
  const EprParams p(1.0, std::sqrt(2.0));
  const auto phases = uniform_phases(24);
  int covered = 0;
  int witnessed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = fit_visibility(simulate_fringe_counts(p, phases, 1e4, seed), seed);
    if (std::abs(est.v_hat - 0.6) <= 4.0 * est.sigma_v) ++covered;
    if (decide_entanglement(est, 3.0) == Verdict::Witnessed) ++witnessed;
  }
  const double elapsed = seconds_since(t0);
  return {covered >= 99 && witnessed >= 95 && elapsed <= kStatSeconds,
          "covered=" + std::to_string(covered) + "/100 witnessed=" + std::to_string(witnessed) +
              fmt(" runtime=%.2fs", elapsed)};
}

Outcome wavefunction_norm() {
  double worst = 0.0;
  for (double n : {0.0, 0.5, 1.0}) {
    const double norm = oracles::trapezoid_2d(
        [n](double x, double y) {
          const double psi = epr_wavefunction(n, x, y);
          return psi * psi;
        },
        14.0, 1401);
    worst = std::max(worst, std::abs(norm - 1.0));
  }
  return {worst <= kNormTol, fmt("max_dev=%.3g", worst)};
}

Outcome property_suites() {
  std::vector<std::string> failed;
  auto check = [&](const char* name, bool ok) {
    if (!ok) failed.emplace_back(name);
  };
  const std::vector<EprParams> states{EprParams(0.3, 0.0), EprParams(0.3, 0.3),
                                      EprParams(0.3, 0.45), EprParams(1.0, std::sqrt(2.0)),
                                      EprParams(2.0, 1.0).with_phase(1.1)};

  bool odd = true;
  for (const auto& p : states) {
    const SecondMoments t = covariance_table(p);
    for (const char* w : {"a", "bd", "ad a b", "ad bd b", "ad ad bd a b"}) {
      odd = odd && normally_ordered_moment(t, OperatorWord::parse(w)) == complex(0.0, 0.0);
    }
  }
  check("oddness", odd);

  bool even = true;
  bool increasing = true;
  for (const auto& p : states) {
    double prev = coincidence_probability(p, 0.0);
    for (double t = 0.1; t < 4.0; t += 0.1) {
      const double v = coincidence_probability(p, t);
      even = even && v == coincidence_probability(p, -t);
      increasing = increasing && v > prev;
      prev = v;
    }
  }
  check("evenness", even);

  for (double n : {0.05, 1.0, 6.0}) {
    double prev = -1.0;
    for (int j = 0; j <= 100; ++j) {
      const double v = visibility(EprParams(n, pure_mc(n) * j / 100.0));
      increasing = increasing && v > prev;
      prev = v;
    }
  }
  check("monotonicity", increasing);

  bool invariant = true;
  bool positive = true;
  for (const auto& p : states) {
    for (double dphi = 0.0; dphi < 2.0 * kPi; dphi += 0.4) {
      const double ref = hbt_correlation(p, dphi, 0.0);
      for (double shift : {-2.0, 0.7, 3.3}) {
        invariant = invariant && std::abs(hbt_correlation(p, dphi + shift, shift) - ref) <=
                                     kExact * std::max(1.0, ref);
      }
      positive = positive && ref >= 0.0;
      positive = positive && g2_temporal(p, {1.0, 1.7, 0.8, 1.3}, dphi - 3.0) >= 0.0;
    }
  }
  check("phase-difference invariance", invariant);
  check("positivity", positive);

  bool psd = true;
  for (const auto& p : states) {
    const FockArray rho = squeezed_thermal_density(p, 20, 1e-3);
    psd = psd && rho.min_eigenvalue() >= -1e-10 && rho.hermiticity_defect() <= 1e-12;
  }
  check("oracle density PSD", psd);

  std::string detail = failed.empty() ? "all suites green" : "failed:";
  for (const auto& f : failed) detail += " " + f + ";";
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"visibility values", visibility_values},
      {"weak-squeezing dip", weak_squeezing_dip},
      {"thermal and border lines", thermal_and_border},
      {"witness identity and sign", witness_identity},
      {"oracle equivalence", oracle_equivalence},
      {"temporal consistency", temporal_consistency},
      {"figure crossing", figure_crossing},
      {"statistical estimator", statistical_estimator},
      {"wavefunction normalization", wavefunction_norm},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
