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

#include "cvhbt/core_state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvhbt/errors.hpp"
#include "cvhbt/io.hpp"

namespace cvhbt {

namespace {

void check_nbar(double nbar, const char* where) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw InvalidParameter(std::string(where) + ": nbar must be finite and >= 0, got " +
                           io::shortest(nbar));
  }
}

}  // namespace

EprParams::EprParams(double nbar, complex mc) : nbar_(nbar), mc_(mc) {
  check_nbar(nbar, "EprParams");
  if (!std::isfinite(mc.real()) || !std::isfinite(mc.imag())) {
    throw InvalidParameter("EprParams: mc must be finite");
  }
}

EprParams EprParams::from_mc_squared(double nbar, double mc_squared) {
  if (!std::isfinite(mc_squared) || mc_squared < 0.0) {
    throw InvalidParameter("EprParams: |mc|^2 must be finite and >= 0");
  }
  return EprParams(nbar, std::sqrt(mc_squared));
}

EprParams EprParams::with_phase(double theta) const {
  return EprParams(nbar_, mc_ * std::polar(1.0, theta));
}

std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::Separable:
      return "Separable";
    case StateClass::EntangledMixed:
      return "EntangledMixed";
    case StateClass::EntangledPure:
      return "EntangledPure";
    case StateClass::Unphysical:
      return "Unphysical";
  }
  return "?";
}

bool is_entangled(StateClass c) {
  return c == StateClass::EntangledMixed || c == StateClass::EntangledPure;
}

StateClass classify(const EprParams& params, double tol) {
  if (!(tol >= 0.0)) throw InvalidParameter("classify: tol must be >= 0");
  const double n = params.nbar();
  const double m = params.mc_abs();
  const double pure = pure_mc(n);
  if (m > pure * (1.0 + tol)) return StateClass::Unphysical;
  if (n > 0.0 && m >= pure * (1.0 - tol)) return StateClass::EntangledPure;
  if (m <= n) return StateClass::Separable;
  return StateClass::EntangledMixed;
}

bool is_physical(const EprParams& params, double tol) {
  return classify(params, tol) != StateClass::Unphysical;
}

void require_physical(const EprParams& params, double tol) {
  if (!is_physical(params, tol)) {
    throw UnphysicalParameters("|mc| = " + io::shortest(params.mc_abs()) +
                               " exceeds sqrt(nbar(nbar+1)) = " +
                               io::shortest(pure_mc(params.nbar())));
  }
}

double pure_mc(double nbar) {
  check_nbar(nbar, "pure_mc");
  return std::sqrt(nbar * (nbar + 1.0));
}

ThermalWeights thermal_weights(double nbar, int nmax) {
  check_nbar(nbar, "thermal_weights");
  if (nmax < 0) throw InvalidParameter("thermal_weights: nmax must be >= 0");

  const double ratio = nbar / (1.0 + nbar);
  ThermalWeights tw;
  tw.nmax = nmax;
  tw.weights.resize(static_cast<std::size_t>(nmax) + 1);
  double p = 1.0 / (1.0 + nbar);
  for (auto& w : tw.weights) {
    w = p;
    p *= ratio;
  }
  tw.tail_mass = std::pow(ratio, nmax + 1);
  return tw;
}

double epr_wavefunction(double nbar, double xa, double xb) {
  const double cross = pure_mc(nbar);
  const double exponent = -(nbar + 0.5) * (xa * xa + xb * xb) + 2.0 * cross * (xa * xb);
  return std::exp(exponent) / std::sqrt(std::numbers::pi);
}

double weak_approx_fidelity(double nbar) {
  const auto tw = thermal_weights(nbar, 1);
  return tw.weights[0] + tw.weights[1];
}

}  // namespace cvhbt
