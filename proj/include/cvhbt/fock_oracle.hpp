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

// Brute-force reference: two-mode states in a truncated Fock basis and
// expectation values by explicit ladder-matrix algebra. Nothing here goes
// through the Wick engine, so it can serve as ground truth for it.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <variant>

#include "cvhbt/core_state.hpp"
#include "cvhbt/gaussian_moments.hpp"

namespace cvhbt {

inline constexpr double kDefaultTailTolerance = 1e-10;
inline constexpr double kDefaultMaxTraceDeficit = 1e-8;
inline constexpr double kUnitarityTolerance = 1e-8;

using SparseOperator = Eigen::SparseMatrix<complex>;

enum class FockKind { PureVector, DensityMatrix };

/// Two-mode state on the basis |na, nb>, 0 <= na, nb <= cutoff, stored
/// densely with index na * (cutoff + 1) + nb. The probability weight lost to
/// truncation is carried alongside as trace_deficit.
class FockArray {
 public:
  static FockArray pure(int cutoff, Eigen::VectorXcd amplitudes, double trace_deficit);
  static FockArray density(int cutoff, Eigen::MatrixXcd rho, double trace_deficit);

  FockKind kind() const;
  int cutoff() const { return cutoff_; }
  Eigen::Index dimension() const;
  double trace_deficit() const { return trace_deficit_; }

  /// Throws ContractViolation when the stored kind does not match.
  const Eigen::VectorXcd& amplitudes() const;
  const Eigen::MatrixXcd& rho() const;

  /// |psi><psi| for vectors, the matrix itself otherwise.
  Eigen::MatrixXcd to_density() const;

  /// Norm squared (vector) or real trace (matrix).
  double weight() const;
  double purity() const;
  /// Smallest eigenvalue of the (Hermitian part of the) density matrix.
  double min_eigenvalue() const;
  /// Largest |rho - rho^dag| entry; 0 for vectors.
  double hermiticity_defect() const;

  complex expectation(const SparseOperator& op) const;

  static Eigen::Index index(int cutoff, int na, int nb) {
    return static_cast<Eigen::Index>(na) * (cutoff + 1) + nb;
  }

 private:
  FockArray(int cutoff, std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> data,
            double trace_deficit);

  int cutoff_;
  std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> data_;
  double trace_deficit_;
};

/// Two thermal inputs of occupancy n_th followed by the two-mode squeezer
/// exp(r (a^dag b^dag - a b)).
struct SqueezerParams {
  double n_th = 0.0;
  double r = 0.0;

  /// nbar = n_th + (2 n_th + 1) sinh^2 r.
  double nbar() const;
  /// |mc| = (2 n_th + 1) sinh r cosh r.
  double mc_abs() const;
};

/// Amplitudes sqrt(p_n) on |n, n> for n <= cutoff. Real and positive as
/// written, so <a b> = +pure_mc(nbar), i.e. mc = -pure_mc(nbar).
FockArray squeezed_vacuum_vector(double nbar, int cutoff);

/// Closed-form (n_th, r) reproducing (nbar, |mc|). Throws UnphysicalParameters.
SqueezerParams invert_params(const EprParams& params);

/// rho = S(r) (rho_th (x) rho_th) S(r)^dag, rotated so that <a b> = -mc
/// including phase. S is exponentiated per invariant subspace (fixed
/// na - nb) on an enlarged working basis, then projected onto `cutoff`.
/// Throws TruncationError if the projected trace deficit exceeds the bound
/// or the exponential is not unitary after one escalation of the basis.
FockArray squeezed_thermal_density(const EprParams& params, int cutoff,
                                   double max_trace_deficit = kDefaultMaxTraceDeficit);

/// Matrix of a single ladder symbol on the two-mode truncated basis.
SparseOperator ladder_matrix(Ladder op, int cutoff);

/// Product of ladder matrices in word order.
SparseOperator word_matrix(const OperatorWord& word, int cutoff);

/// Tr[rho Op(word)] (or <psi|Op|psi>). Words longer than 8 throw
/// InvalidParameter; words raising a mode more times than the cutoff
/// allows throw TruncationError.
complex moment_exact(const FockArray& state, const OperatorWord& word);

/// <E-(phi1) E-(phi2) E+(phi2) E+(phi1)> with E+(phi1) = (a + b e^{i phi1})/sqrt2
/// and E+(phi2) = (a - b e^{i phi2})/sqrt2. Throws ContractViolation if the
/// imaginary residue exceeds 1e-10 (relative to max(1, |value|)).
double hbt_correlation_exact(const FockArray& state, double phi1, double phi2);

/// Smallest cutoff N with (nbar/(1+nbar))^(N+1) <= tail_tol.
int truncation_for(const EprParams& params, double tail_tol = kDefaultTailTolerance);

}  // namespace cvhbt
