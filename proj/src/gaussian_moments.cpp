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

#include "cvhbt/gaussian_moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cvhbt/errors.hpp"

namespace cvhbt {

bool is_creation(Ladder op) { return op == Ladder::AD || op == Ladder::BD; }

Ladder adjoint(Ladder op) {
  switch (op) {
    case Ladder::AD:
      return Ladder::A;
    case Ladder::BD:
      return Ladder::B;
    case Ladder::A:
      return Ladder::AD;
    case Ladder::B:
      return Ladder::BD;
  }
  return op;
}

std::string_view token(Ladder op) {
  switch (op) {
    case Ladder::AD:
      return "ad";
    case Ladder::BD:
      return "bd";
    case Ladder::A:
      return "a";
    case Ladder::B:
      return "b";
  }
  return "?";
}

OperatorWord::OperatorWord(std::vector<Ladder> ops) : ops_(std::move(ops)) {
  bool seen_annihilation = false;
  for (Ladder op : ops_) {
    if (is_creation(op) && seen_annihilation) {
      throw ContractViolation("OperatorWord: '" + to_string() + "' is not normal ordered");
    }
    seen_annihilation = seen_annihilation || !is_creation(op);
  }
}

OperatorWord OperatorWord::parse(std::string_view text) {
  std::vector<Ladder> ops;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "ad") {
      ops.push_back(Ladder::AD);
    } else if (tok == "bd") {
      ops.push_back(Ladder::BD);
    } else if (tok == "a") {
      ops.push_back(Ladder::A);
    } else if (tok == "b") {
      ops.push_back(Ladder::B);
    } else {
      throw ContractViolation("OperatorWord: unknown token '" + tok + "'");
    }
  }
  return OperatorWord(std::move(ops));
}

OperatorWord OperatorWord::adjoint() const {
  std::vector<Ladder> out(ops_.rbegin(), ops_.rend());
  std::ranges::transform(out, out.begin(), [](Ladder op) { return cvhbt::adjoint(op); });
  return OperatorWord(std::move(out));
}

std::array<int, 2> OperatorWord::creation_counts() const {
  return {static_cast<int>(std::ranges::count(ops_, Ladder::AD)),
          static_cast<int>(std::ranges::count(ops_, Ladder::BD))};
}

std::array<int, 2> OperatorWord::annihilation_counts() const {
  return {static_cast<int>(std::ranges::count(ops_, Ladder::A)),
          static_cast<int>(std::ranges::count(ops_, Ladder::B))};
}

std::string OperatorWord::to_string() const {
  std::string s;
  for (Ladder op : ops_) {
    if (!s.empty()) s += ' ';
    s += token(op);
  }
  return s;
}

SecondMoments SecondMoments::hermitian(double n_a, double n_b, complex cross, complex s_a,
                                       complex s_b, complex m_ab) {
  SecondMoments t;
  t.n_a = n_a;
  t.n_b = n_b;
  t.cross = cross;
  t.cross_conj = std::conj(cross);
  t.s_a = s_a;
  t.s_a_conj = std::conj(s_a);
  t.s_b = s_b;
  t.s_b_conj = std::conj(s_b);
  t.m_ab = m_ab;
  t.m_ab_conj = std::conj(m_ab);
  return t;
}

bool SecondMoments::is_hermitian(double tol) const {
  return std::abs(cross_conj - std::conj(cross)) <= tol &&
         std::abs(s_a_conj - std::conj(s_a)) <= tol &&
         std::abs(s_b_conj - std::conj(s_b)) <= tol &&
         std::abs(m_ab_conj - std::conj(m_ab)) <= tol;
}

complex SecondMoments::pair(Ladder left, Ladder right) const {
  using enum Ladder;
  // Creation operators commute among themselves, as do annihilators, so the
  // unordered mixed pairs share one entry.
  switch (left) {
    case AD:
      switch (right) {
        case AD: return s_a_conj;
        case BD: return m_ab_conj;
        case A: return n_a;
        case B: return cross;
      }
      break;
    case BD:
      switch (right) {
        case AD: return m_ab_conj;
        case BD: return s_b_conj;
        case A: return cross_conj;
        case B: return n_b;
      }
      break;
    case A:
      switch (right) {
        case A: return s_a;
        case B: return m_ab;
        default: break;
      }
      break;
    case B:
      switch (right) {
        case A: return m_ab;
        case B: return s_b;
        default: break;
      }
      break;
  }
  throw ContractViolation("SecondMoments::pair: contraction " + std::string(token(left)) + " " +
                          std::string(token(right)) + " is not normal ordered");
}

SecondMoments covariance_table(const EprParams& params) {
  require_physical(params);
  return SecondMoments::hermitian(params.nbar(), params.nbar(), {}, {}, {}, -params.mc());
}

namespace {

// Sums over perfect matchings of the positions still set in `remaining`.
// The lowest remaining position is always paired first, so each matching is
// visited exactly once: (2k-1)!! leaves.
complex sum_matchings(const SecondMoments& table, std::span<const Ladder> ops,
                      unsigned remaining) {
  if (remaining == 0) return 1.0;
  const int first = std::countr_zero(remaining);
  const unsigned rest = remaining & ~(1u << first);
  complex total = 0.0;
  for (unsigned scan = rest; scan != 0; scan &= scan - 1) {
    const int second = std::countr_zero(scan);
    const complex c = table.pair(ops[first], ops[second]);
    if (c == complex{}) continue;
    total += c * sum_matchings(table, ops, rest & ~(1u << second));
  }
  return total;
}

}  // namespace

complex normally_ordered_moment(const SecondMoments& table, const OperatorWord& word) {
  if (word.size() > kMaxWordLength) {
    throw InvalidParameter("normally_ordered_moment: word length " +
                           std::to_string(word.size()) + " exceeds cap " +
                           std::to_string(kMaxWordLength));
  }
  if (word.size() % 2 != 0) return 0.0;
  const unsigned all = (1u << word.size()) - 1u;
  return sum_matchings(table, word.ops(), all);
}

FourthOrderMoments fourth_order_set(const EprParams& params) {
  const SecondMoments table = covariance_table(params);
  static const OperatorWord kAA = OperatorWord::parse("ad ad a a");
  static const OperatorWord kBB = OperatorWord::parse("bd bd b b");
  static const OperatorWord kAB = OperatorWord::parse("ad bd a b");
  return {normally_ordered_moment(table, kAA).real(), normally_ordered_moment(table, kBB).real(),
          normally_ordered_moment(table, kAB).real()};
}

double total_intensity_square(const SecondMoments& table) {
  // (a^dag a + b^dag b)^2 normal ordered: a^dag^2 a^2 + b^dag^2 b^2 + 2 a^dag b^dag a b.
  static const OperatorWord kAA = OperatorWord::parse("ad ad a a");
  static const OperatorWord kBB = OperatorWord::parse("bd bd b b");
  static const OperatorWord kAB = OperatorWord::parse("ad bd a b");
  const complex value = normally_ordered_moment(table, kAA) +
                        normally_ordered_moment(table, kBB) +
                        2.0 * normally_ordered_moment(table, kAB);
  return value.real();
}

}  // namespace cvhbt
