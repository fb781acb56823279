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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvhbt/core_state.hpp"

namespace cvhbt {

/// Single-mode ladder symbols of the two-mode field.
enum class Ladder { AD, BD, A, B };

bool is_creation(Ladder op);
Ladder adjoint(Ladder op);
std::string_view token(Ladder op);

/// Normal-ordered product of ladder operators, e.g. a^dag b^dag a b.
///
/// All creation symbols precede all annihilation symbols; this is checked at
/// construction and never repaired. The textual form is a space separated
/// list of the tokens "ad", "bd", "a", "b".
class OperatorWord {
 public:
  OperatorWord() = default;
  explicit OperatorWord(std::vector<Ladder> ops);

  /// Throws ContractViolation for unknown tokens or non-normal order.
  static OperatorWord parse(std::string_view text);

  std::span<const Ladder> ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// Hermitian conjugate: reversed and daggered. Normal order is preserved.
  OperatorWord adjoint() const;

  /// Number of creation symbols acting on mode a (index 0) and b (index 1).
  std::array<int, 2> creation_counts() const;
  std::array<int, 2> annihilation_counts() const;

  std::string to_string() const;

  bool operator==(const OperatorWord&) const = default;

 private:
  std::vector<Ladder> ops_;
};

/// All ten ordered second moments <X Y> of a zero-mean two-mode state where
/// the pair (X, Y) is normal ordered.
struct SecondMoments {
  double n_a = 0.0;          // <a^dag a>
  double n_b = 0.0;          // <b^dag b>
  complex cross{};           // <a^dag b>
  complex cross_conj{};      // <b^dag a>
  complex s_a{};             // <a a>
  complex s_a_conj{};        // <a^dag a^dag>
  complex s_b{};             // <b b>
  complex s_b_conj{};        // <b^dag b^dag>
  complex m_ab{};            // <a b>
  complex m_ab_conj{};       // <a^dag b^dag>

  /// Fills the conjugate entries from the independent ones.
  static SecondMoments hermitian(double n_a, double n_b, complex cross, complex s_a,
                                 complex s_b, complex m_ab);

  bool is_hermitian(double tol = 1e-12) const;

  /// Contraction <X Y> for a normal-ordered pair (X left of Y in the word).
  complex pair(Ladder left, Ladder right) const;
};

/// EPR table: n_a = n_b = nbar, <ab> = -mc, everything else zero.
/// Throws UnphysicalParameters for unphysical params.
SecondMoments covariance_table(const EprParams& params);

/// Longest word accepted by normally_ordered_moment.
inline constexpr std::size_t kMaxWordLength = 12;

/// Wick/Isserlis expansion: sum over all perfect matchings of the word's
/// positions of the product of ordered pair contractions. Odd words give 0.
/// Words longer than kMaxWordLength throw InvalidParameter.
complex normally_ordered_moment(const SecondMoments& table, const OperatorWord& word);

struct FourthOrderMoments {
  double aa;  // <a^dag a^dag a a>
  double bb;  // <b^dag b^dag b b>
  double ab;  // <a^dag b^dag a b>
};

FourthOrderMoments fourth_order_set(const EprParams& params);

/// <:(a^dag a + b^dag b)^2:>, the normalisation of the HBT witness.
double total_intensity_square(const SecondMoments& table);

}  // namespace cvhbt
