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

#include "cvhbt/experiment_sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cvhbt/errors.hpp"
#include "cvhbt/hbt_interference.hpp"
#include "cvhbt/hom_temporal.hpp"

namespace cvhbt {

namespace {

constexpr int kReweightPasses = 4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t sample_poisson(double rate, std::uint64_t stream_seed) {
  if (rate < kMinSampledRate) return 0;
  std::mt19937_64 rng(stream_seed);
  std::poisson_distribution<std::int64_t> dist(rate);
  return dist(rng);
}

void check_counts_args(std::span<const double> settings, double mean_counts) {
  if (settings.empty()) throw InvalidParameter("simulate: empty settings");
  if (!std::isfinite(mean_counts) || !(mean_counts > 0.0)) {
    throw InvalidParameter("simulate: mean_counts must be finite and > 0");
  }
  for (double s : settings) {
    if (!std::isfinite(s)) throw InvalidParameter("simulate: settings must be finite");
  }
}

template <class RateFn>
std::vector<CountRecord> sample_records(std::span<const double> settings, std::uint64_t seed,
                                        RateFn rate_of) {
  std::vector<CountRecord> out;
  out.reserve(settings.size());
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const double rate = rate_of(settings[i]);
    out.push_back({settings[i], rate, sample_poisson(rate, substream_seed(seed, i))});
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::Witnessed ? "Witnessed" : "Inconclusive";
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::vector<double> uniform_phases(int n) {
  if (n < 1) throw InvalidParameter("uniform_phases: n must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n;
  return out;
}

std::vector<CountRecord> simulate_fringe_counts(const EprParams& params,
                                                std::span<const double> settings,
                                                double mean_counts, std::uint64_t seed) {
  check_counts_args(settings, mean_counts);
  const double v = visibility(params);
  return sample_records(settings, seed, [&](double dphi) {
    return mean_counts * (1.0 - v * std::cos(dphi));
  });
}

std::vector<CountRecord> simulate_hom_counts(const EprParams& params,
                                             std::span<const double> times, double mean_counts,
                                             std::uint64_t seed) {
  check_counts_args(times, mean_counts);
  return sample_records(times, seed, [&](double t) {
    return mean_counts * coincidence_probability(params, t);
  });
}

VisibilityEstimate fit_visibility(std::span<const CountRecord> records, std::uint64_t seed) {
  if (records.size() < 3) throw FitError("fit_visibility: need at least 3 settings");
  std::int64_t total = 0;
  for (const auto& r : records) {
    if (r.counts < 0) throw FitError("fit_visibility: negative counts");
    total += r.counts;
  }
  if (total <= 0) throw FitError("fit_visibility: no counts recorded");

  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double phi = records[static_cast<std::size_t>(i)].setting;
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(phi);
    design(i, 2) = std::sin(phi);
    y(i) = static_cast<double>(records[static_cast<std::size_t>(i)].counts);
  }

  // Variance floor of one count keeps empty bins from getting infinite weight.
  Eigen::VectorXd variance = y.cwiseMax(1.0);
  Eigen::Vector3d coef;
  Eigen::Matrix3d normal;
  for (int pass = 0; pass < kReweightPasses; ++pass) {
    const Eigen::VectorXd w = variance.cwiseInverse();
    normal = design.transpose() * w.asDiagonal() * design;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
    lu.setThreshold(1e-10);
    if (lu.rank() < 3) {
      throw FitError("fit_visibility: degenerate design, settings do not span {1, cos, sin}");
    }
    coef = lu.solve(design.transpose() * w.asDiagonal() * y);
    variance = (design * coef).cwiseMax(1.0);
  }

  const Eigen::Matrix3d cov = normal.inverse();
  const double c0 = coef(0);
  const double cc = coef(1);
  const double cs = coef(2);
  if (!(c0 > 0.0)) throw FitError("fit_visibility: non-positive baseline");
  const double amp = std::hypot(cc, cs);
  const double sign = cc > 0.0 ? -1.0 : 1.0;
  const double v_raw = sign * amp / c0;

  Eigen::Vector3d grad;
  if (amp > 0.0) {
    grad << -v_raw / c0, sign * cc / (amp * c0), sign * cs / (amp * c0);
  } else {
    // |A| has no gradient at the origin; fall back to the cos direction.
    grad << 0.0, 1.0 / c0, 0.0;
  }
  const double var_v = grad.dot(cov * grad);

  VisibilityEstimate est;
  est.v_raw = v_raw;
  est.v_hat = std::clamp(v_raw, 0.0, 1.0);
  est.clipped = est.v_hat != v_raw;
  est.sigma_v = std::sqrt(std::max(var_v, 0.0));
  est.baseline_hat = c0;
  est.n_settings = static_cast<int>(records.size());
  est.seed = seed;
  if (!(est.sigma_v > 0.0)) throw FitError("fit_visibility: zero variance estimate");
  return est;
}

Verdict decide_entanglement(const VisibilityEstimate& estimate, double k_sigma) {
  if (!(k_sigma > 0.0)) throw InvalidParameter("decide_entanglement: k_sigma must be > 0");
  return estimate.v_hat - k_sigma * estimate.sigma_v > kClassicalVisibilityBound
             ? Verdict::Witnessed
             : Verdict::Inconclusive;
}

}  // namespace cvhbt
