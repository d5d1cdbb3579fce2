// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "atomq/circuit.hpp"
#include "atomq/error.hpp"
#include "atomq/pauli.hpp"

namespace atomq {

/// Square bit matrix over GF(2); rows()[i] has bit j set iff entry (i, j) is 1.
/// Acts on basis states by (A b)_i = parity(row_i & b).
class LinearMapGF2 {
 public:
  LinearMapGF2() = default;
  explicit LinearMapGF2(std::size_t n) : rows_(n) {
    if (n > kMaxQubits) throw ValidationError("GF(2) maps support at most 64 dimensions");
  }
  LinearMapGF2(std::size_t n, std::vector<Mask> rows) : rows_(std::move(rows)) {
    if (rows_.size() != n) throw ValidationError("row count must equal dimension");
  }

  static LinearMapGF2 identity(std::size_t n) {
    LinearMapGF2 m(n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i] = Mask{1} << i;
    return m;
  }

  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<Mask>& rows() const noexcept { return rows_; }
  bool at(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1U; }
  void set(std::size_t i, std::size_t j, bool v) {
    if (v) rows_[i] |= Mask{1} << j;
    else rows_[i] &= ~(Mask{1} << j);
  }
  /// row t += row c, the action of CNOT(c, t) on the output.
  void add_row(std::size_t c, std::size_t t) { rows_[t] ^= rows_[c]; }

  Mask apply(Mask b) const {
    Mask out = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (popcount(rows_[i] & b) & 1) out |= Mask{1} << i;
    return out;
  }

  LinearMapGF2 transpose() const {
    LinearMapGF2 t(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (at(i, j)) t.set(j, i, true);
    return t;
  }

  std::size_t rank() const {
    std::vector<Mask> r = rows_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < size() && rank < r.size(); ++col) {
      const Mask bit = Mask{1} << col;
      auto it = std::find_if(r.begin() + static_cast<std::ptrdiff_t>(rank), r.end(), [&](Mask m) { return m & bit; });
      if (it == r.end()) continue;
      std::swap(*it, r[rank]);
      for (std::size_t i = 0; i < r.size(); ++i)
        if (i != rank && (r[i] & bit)) r[i] ^= r[rank];
      ++rank;
    }
    return rank;
  }

  bool invertible() const { return rank() == size(); }

  bool operator==(const LinearMapGF2&) const = default;

 private:
  std::vector<Mask> rows_;
};

namespace detail {

using RowOps = std::vector<std::pair<std::size_t, std::size_t>>;  // (source, destination)

/// Block-wise lower elimination: afterwards A is upper triangular with unit diagonal.
inline RowOps lower_elimination(LinearMapGF2& a, std::size_t block) {
  const std::size_t n = a.size();
  RowOps ops;
  auto op = [&](std::size_t src, std::size_t dst) {
    a.add_row(src, dst);
    ops.emplace_back(src, dst);
  };
  for (std::size_t lo = 0; lo < n; lo += block) {
    const std::size_t hi = std::min(n, lo + block);
    const Mask sec = ((hi - lo == 64 ? ~Mask{0} : (Mask{1} << (hi - lo)) - 1)) << lo;
    // rows sharing a sub-row pattern in this section: one addition clears the duplicate
    std::map<Mask, std::size_t> seen;
    for (std::size_t r = lo; r < n; ++r) {
      const Mask pat = a.rows()[r] & sec;
      if (!pat) continue;
      const auto it = seen.find(pat);
      if (it != seen.end()) op(it->second, r);
      else seen.emplace(pat, r);
    }
    for (std::size_t col = lo; col < hi; ++col) {
      bool diag = a.at(col, col);
      for (std::size_t r = col + 1; r < n; ++r) {
        if (!a.at(r, col)) continue;
        if (!diag) {
          op(r, col);
          diag = true;
        }
        op(col, r);
      }
      if (!diag) throw NumericalError("linear map is singular");
    }
  }
  return ops;
}

}  // namespace detail

/// CNOT-only circuit whose action on basis states is b -> A^{-1} b. Uses the
/// block partitioning of Patel, Markov and Hayes for n >= 8 and plain
/// Gaussian elimination below.
inline Circuit synthesize_linear_inverse(const LinearMapGF2& map) {
  const std::size_t n = map.size();
  if (!map.invertible()) throw NumericalError("linear map is singular");
  const std::size_t block =
      n < 8 ? 1 : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(n)) / 2)));

  LinearMapGF2 a = map;
  const auto lower = detail::lower_elimination(a, block);
  LinearMapGF2 at = a.transpose();
  const auto upper = detail::lower_elimination(at, block);

  Circuit c(n);
  for (const auto& [src, dst] : lower) c.add(Gate::cnot(static_cast<int>(src), static_cast<int>(dst)));
  // row ops on the transpose are column ops on A: replay them reversed with roles swapped
  for (auto it = upper.rbegin(); it != upper.rend(); ++it)
    c.add(Gate::cnot(static_cast<int>(it->second), static_cast<int>(it->first)));
  return c;
}

}  // namespace atomq
