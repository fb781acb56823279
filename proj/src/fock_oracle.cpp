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

#include "cvhbt/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "cvhbt/errors.hpp"
#include "cvhbt/io.hpp"

namespace cvhbt {

namespace {

void check_cutoff(int cutoff, const char* where) {
  if (cutoff < 0) throw InvalidParameter(std::string(where) + ": cutoff must be >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------
// FockArray

FockArray::FockArray(int cutoff, std::variant<Eigen::VectorXcd, Eigen::MatrixXcd> data,
                     double trace_deficit)
    : cutoff_(cutoff), data_(std::move(data)), trace_deficit_(trace_deficit) {}

FockArray FockArray::pure(int cutoff, Eigen::VectorXcd amplitudes, double trace_deficit) {
  check_cutoff(cutoff, "FockArray::pure");
  const Eigen::Index dim = index(cutoff, cutoff, cutoff) + 1;
  if (amplitudes.size() != dim) throw InvalidParameter("FockArray::pure: dimension mismatch");
  return FockArray(cutoff, std::move(amplitudes), trace_deficit);
}

FockArray FockArray::density(int cutoff, Eigen::MatrixXcd rho, double trace_deficit) {
  check_cutoff(cutoff, "FockArray::density");
  const Eigen::Index dim = index(cutoff, cutoff, cutoff) + 1;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidParameter("FockArray::density: dimension mismatch");
  }
  return FockArray(cutoff, std::move(rho), trace_deficit);
}

FockKind FockArray::kind() const {
  return std::holds_alternative<Eigen::VectorXcd>(data_) ? FockKind::PureVector
                                                         : FockKind::DensityMatrix;
}

Eigen::Index FockArray::dimension() const { return index(cutoff_, cutoff_, cutoff_) + 1; }

const Eigen::VectorXcd& FockArray::amplitudes() const {
  if (kind() != FockKind::PureVector) throw ContractViolation("FockArray: not a pure vector");
  return std::get<Eigen::VectorXcd>(data_);
}

const Eigen::MatrixXcd& FockArray::rho() const {
  if (kind() != FockKind::DensityMatrix) {
    throw ContractViolation("FockArray: not a density matrix");
  }
  return std::get<Eigen::MatrixXcd>(data_);
}

Eigen::MatrixXcd FockArray::to_density() const {
  if (kind() == FockKind::DensityMatrix) return rho();
  const auto& psi = amplitudes();
  return psi * psi.adjoint();
}

double FockArray::weight() const {
  if (kind() == FockKind::PureVector) return amplitudes().squaredNorm();
  return rho().trace().real();
}

double FockArray::purity() const {
  if (kind() == FockKind::PureVector) {
    const double n2 = amplitudes().squaredNorm();
    return n2 * n2;
  }
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return rho().squaredNorm();
}

double FockArray::min_eigenvalue() const {
  const Eigen::MatrixXcd m = to_density();
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("FockArray::min_eigenvalue: eigen solver failed");
  }
  return solver.eigenvalues().minCoeff();
}

double FockArray::hermiticity_defect() const {
  if (kind() == FockKind::PureVector) return 0.0;
  return (rho() - rho().adjoint()).cwiseAbs().maxCoeff();
}

complex FockArray::expectation(const SparseOperator& op) const {
  if (op.rows() != dimension() || op.cols() != dimension()) {
    throw ContractViolation("FockArray::expectation: operator dimension mismatch");
  }
  if (kind() == FockKind::PureVector) {
    const auto& psi = amplitudes();
    return psi.dot(op * psi);
  }
  // Tr[rho Op] = sum_{j,k} rho(j,k) Op(k,j).
  const auto& m = rho();
  complex total = 0.0;
  for (Eigen::Index col = 0; col < op.outerSize(); ++col) {
    for (SparseOperator::InnerIterator it(op, col); it; ++it) {
      total += m(col, it.row()) * it.value();
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Squeezer parameterisation

double SqueezerParams::nbar() const {
  const double s = std::sinh(r);
  return n_th + (2.0 * n_th + 1.0) * s * s;
}

double SqueezerParams::mc_abs() const {
  return (2.0 * n_th + 1.0) * std::sinh(r) * std::cosh(r);
}

SqueezerParams invert_params(const EprParams& params) {
  require_physical(params);
  const double n = params.nbar();
  const double m = params.mc_abs();
  // nbar + 1/2 = (k/2) cosh 2r and |mc| = (k/2) sinh 2r with k = 2 n_th + 1,
  // so k^2 / 4 = (nbar + 1/2)^2 - |mc|^2.
  const double half_k_sq = (n + 0.5 - m) * (n + 0.5 + m);
  const double k = std::max(1.0, 2.0 * std::sqrt(std::max(half_k_sq, 0.0)));
  SqueezerParams sp;
  sp.n_th = 0.5 * (k - 1.0);
  sp.r = 0.5 * std::asinh(2.0 * m / k);
  return sp;
}

// ---------------------------------------------------------------------------
// State construction

FockArray squeezed_vacuum_vector(double nbar, int cutoff) {
  check_cutoff(cutoff, "squeezed_vacuum_vector");
  const ThermalWeights tw = thermal_weights(nbar, cutoff);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(FockArray::index(cutoff, cutoff, cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) {
    psi(FockArray::index(cutoff, n, n)) = std::sqrt(tw.weights[static_cast<std::size_t>(n)]);
  }
  return FockArray::pure(cutoff, std::move(psi), tw.tail_mass);
}

namespace {

// Exponentiated squeezer restricted to the chain |k + d, k> (d >= 0) or
// |k, k - d> (d < 0), k = 0 .. work - |d|.
struct SqueezerBlock {
  int shift;
  Eigen::MatrixXd unitary;
};

SqueezerBlock squeezer_block(double r, int shift, int work) {
  const int absd = std::abs(shift);
  const int len = work - absd + 1;
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(len, len);
  for (int k = 0; k + 1 < len; ++k) {
    // a^dag b^dag |k + |d|, k> = sqrt((k + |d| + 1)(k + 1)) |k + |d| + 1, k + 1>
    const double c = r * std::sqrt(static_cast<double>(k + absd + 1) * (k + 1));
    gen(k + 1, k) = c;
    gen(k, k + 1) = -c;
  }
  return {shift, gen.exp()};
}

double unitarity_defect(const std::vector<SqueezerBlock>& blocks) {
  double worst = 0.0;
  for (const auto& b : blocks) {
    const auto n = b.unitary.rows();
    const double d =
        (b.unitary.transpose() * b.unitary - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
  }
  return worst;
}

std::vector<SqueezerBlock> squeezer_blocks(double r, int work) {
  std::vector<SqueezerBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(2 * work + 1));
  for (int d = -work; d <= work; ++d) blocks.push_back(squeezer_block(r, d, work));
  return blocks;
}

}  // namespace

FockArray squeezed_thermal_density(const EprParams& params, int cutoff, double max_trace_deficit) {
  check_cutoff(cutoff, "squeezed_thermal_density");
  const SqueezerParams sq = invert_params(params);

  // The working basis carries the state to ~1e-16 so the projection onto
  // `cutoff` is limited only by the physical tail, not by the chain edge.
  int work = std::max(cutoff, truncation_for(params, 1e-16)) + 8;
  auto blocks = squeezer_blocks(sq.r, work);
  if (unitarity_defect(blocks) > kUnitarityTolerance) {
    work *= 2;
    blocks = squeezer_blocks(sq.r, work);
    const double defect = unitarity_defect(blocks);
    if (defect > kUnitarityTolerance) {
      throw TruncationError("squeezed_thermal_density: squeezer unitarity defect " +
                            io::shortest(defect) + " above tolerance");
    }
  }

  const ThermalWeights th = thermal_weights(sq.n_th, work);
  const double psi = params.mc_abs() > 0.0 ? std::arg(-params.mc()) : 0.0;
  const Eigen::Index dim = FockArray::index(cutoff, cutoff, cutoff) + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);

  for (const auto& block : blocks) {
    const int absd = std::abs(block.shift);
    const int len = static_cast<int>(block.unitary.rows());
    auto na_of = [&](int k) { return block.shift >= 0 ? k + absd : k; };
    auto nb_of = [&](int k) { return block.shift >= 0 ? k : k + absd; };

    Eigen::VectorXd input(len);
    for (int k = 0; k < len; ++k) {
      input(k) = th.weights[static_cast<std::size_t>(na_of(k))] *
                 th.weights[static_cast<std::size_t>(nb_of(k))];
    }
    // Only rows/columns that survive the projection are needed.
    int kept = 0;
    while (kept < len && na_of(kept) <= cutoff && nb_of(kept) <= cutoff) ++kept;
    if (kept == 0) continue;
    const Eigen::MatrixXd u = block.unitary.topRows(kept);
    const Eigen::MatrixXd sub = u * input.asDiagonal() * u.transpose();

    for (int i = 0; i < kept; ++i) {
      const Eigen::Index row = FockArray::index(cutoff, na_of(i), nb_of(i));
      for (int j = 0; j < kept; ++j) {
        const Eigen::Index col = FockArray::index(cutoff, na_of(j), nb_of(j));
        rho(row, col) = sub(i, j) * std::polar(1.0, (nb_of(i) - nb_of(j)) * psi);
      }
    }
  }

  const double deficit = 1.0 - rho.trace().real();
  if (deficit > max_trace_deficit) {
    std::ostringstream msg;
    msg << "squeezed_thermal_density: trace deficit " << deficit << " at cutoff " << cutoff
        << " exceeds bound " << max_trace_deficit;
    throw TruncationError(msg.str());
  }
  return FockArray::density(cutoff, std::move(rho), deficit);
}

// ---------------------------------------------------------------------------
// Operators

SparseOperator ladder_matrix(Ladder op, int cutoff) {
  check_cutoff(cutoff, "ladder_matrix");
  const Eigen::Index dim = FockArray::index(cutoff, cutoff, cutoff) + 1;
  std::vector<Eigen::Triplet<complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  for (int na = 0; na <= cutoff; ++na) {
    for (int nb = 0; nb <= cutoff; ++nb) {
      const Eigen::Index from = FockArray::index(cutoff, na, nb);
      switch (op) {
        case Ladder::A:
          if (na > 0) entries.emplace_back(FockArray::index(cutoff, na - 1, nb), from, std::sqrt(double(na)));
          break;
        case Ladder::B:
          if (nb > 0) entries.emplace_back(FockArray::index(cutoff, na, nb - 1), from, std::sqrt(double(nb)));
          break;
        case Ladder::AD:
          if (na < cutoff) entries.emplace_back(FockArray::index(cutoff, na + 1, nb), from, std::sqrt(double(na + 1)));
          break;
        case Ladder::BD:
          if (nb < cutoff) entries.emplace_back(FockArray::index(cutoff, na, nb + 1), from, std::sqrt(double(nb + 1)));
          break;
      }
    }
  }
  SparseOperator m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseOperator word_matrix(const OperatorWord& word, int cutoff) {
  const Eigen::Index dim = FockArray::index(cutoff, cutoff, cutoff) + 1;
  SparseOperator product(dim, dim);
  product.setIdentity();
  for (Ladder op : word.ops()) {
    product = SparseOperator(product * ladder_matrix(op, cutoff));
  }
  return product;
}

complex moment_exact(const FockArray& state, const OperatorWord& word) {
  if (word.size() > 8) {
    throw InvalidParameter("moment_exact: word length " + std::to_string(word.size()) +
                           " exceeds 8");
  }
  const auto raise = word.creation_counts();
  const auto lower = word.annihilation_counts();
  for (int mode = 0; mode < 2; ++mode) {
    if (std::max(raise[mode], lower[mode]) > state.cutoff()) {
      throw TruncationError("moment_exact: word '" + word.to_string() + "' reaches beyond cutoff " +
                            std::to_string(state.cutoff()));
    }
  }
  return state.expectation(word_matrix(word, state.cutoff()));
}

double hbt_correlation_exact(const FockArray& state, double phi1, double phi2) {
  const int cutoff = state.cutoff();
  if (cutoff < 2) throw TruncationError("hbt_correlation_exact: cutoff must be >= 2");
  const SparseOperator a = ladder_matrix(Ladder::A, cutoff);
  const SparseOperator b = ladder_matrix(Ladder::B, cutoff);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const SparseOperator e1 = inv_sqrt2 * (a + std::polar(1.0, phi1) * b);
  const SparseOperator e2 = inv_sqrt2 * (a - std::polar(1.0, phi2) * b);
  const SparseOperator e1_dag = e1.adjoint();
  const SparseOperator e2_dag = e2.adjoint();
  const SparseOperator op = e1_dag * e2_dag * e2 * e1;
  const complex value = state.expectation(op);
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
    throw ContractViolation("hbt_correlation_exact: imaginary residue " +
                            io::shortest(value.imag()));
  }
  return value.real();
}

int truncation_for(const EprParams& params, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw InvalidParameter("truncation_for: tail_tol must lie in (0, 1)");
  }
  const double n = params.nbar();
  if (n == 0.0) return 0;
  const double ratio = n / (1.0 + n);
  // Start from the logarithmic estimate, then settle on the exact boundary.
  int cutoff = std::max(0, static_cast<int>(std::floor(std::log(tail_tol) / std::log(ratio))) - 2);
  while (std::pow(ratio, cutoff + 1) > tail_tol) ++cutoff;
  while (cutoff > 0 && std::pow(ratio, cutoff) <= tail_tol) --cutoff;
  return cutoff;
}

}  // namespace cvhbt
