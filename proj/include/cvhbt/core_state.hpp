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

#include <complex>
#include <string_view>
#include <vector>

namespace cvhbt {

using complex = std::complex<double>;

/// Default relative tolerance for deciding that |mc| sits on the pure-state
/// boundary sqrt(nbar (nbar + 1)).
inline constexpr double kBoundaryTolerance = 1e-9;

/// Mixed EPR state, fully specified by its second moments
///   <a^dag a> = <b^dag b> = nbar,  <a b> = -mc.
///
/// Construction only rejects a negative or non-finite nbar; physicality of
/// mc is a property queried through classify(), since Unphysical is a
/// legitimate answer there. All physics depends on |mc| alone.
class EprParams {
 public:
  EprParams(double nbar, complex mc);
  EprParams(double nbar, double mc) : EprParams(nbar, complex(mc, 0.0)) {}

  /// Builds the state from |mc|^2 instead of mc (real, non-negative mc).
  static EprParams from_mc_squared(double nbar, double mc_squared);

  double nbar() const { return nbar_; }
  complex mc() const { return mc_; }
  double mc_abs() const { return std::abs(mc_); }
  double mc_abs_squared() const { return std::norm(mc_); }

  /// Same nbar, same |mc|, correlation phase rotated by theta.
  EprParams with_phase(double theta) const;

 private:
  double nbar_;
  complex mc_;
};

enum class StateClass { Separable, EntangledMixed, EntangledPure, Unphysical };

std::string_view to_string(StateClass c);

bool is_entangled(StateClass c);

/// Separable for |mc| <= nbar, EntangledPure on the purity boundary (within a
/// relative band `tol`), EntangledMixed strictly in between, Unphysical above.
StateClass classify(const EprParams& params, double tol = kBoundaryTolerance);

/// True unless classify() reports Unphysical.
bool is_physical(const EprParams& params, double tol = kBoundaryTolerance);

/// Throws UnphysicalParameters when `params` is not physical.
void require_physical(const EprParams& params, double tol = kBoundaryTolerance);

/// |mc| of the pure two-mode squeezed vacuum with the given photon number.
double pure_mc(double nbar);

struct ThermalWeights {
  int nmax = 0;
  std::vector<double> weights;  // p_0 .. p_nmax
  double tail_mass = 0.0;       // sum_{n > nmax} p_n, closed form
};

/// Thermal (Bose-Einstein) photon-number distribution truncated at nmax.
ThermalWeights thermal_weights(double nbar, int nmax);

/// Position-space wavefunction <x_a, x_b | Psi> of the pure two-mode
/// squeezed vacuum with nbar photons per mode.
double epr_wavefunction(double nbar, double xa, double xb);

/// Squared overlap p_0 + p_1 between the pure state and its two-term
/// (vacuum + one pair) truncation, renormalisation not applied.
double weak_approx_fidelity(double nbar);

}  // namespace cvhbt
