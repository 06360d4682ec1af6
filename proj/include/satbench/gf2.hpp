#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "satbench/error.hpp"
#include "satbench/instance.hpp"

namespace satbench {

// Linear system over GF(2) with bit-packed rows.
class Gf2System {
public:
  Gf2System(int n_vars, int n_rows)
      : n_vars_(n_vars),
        n_rows_(n_rows),
        words_(static_cast<std::size_t>((n_vars + 63) / 64)),
        bits_(words_ * static_cast<std::size_t>(n_rows), 0),
        rhs_(static_cast<std::size_t>(n_rows), 0) {}

  static Gf2System from_instance(const Instance& inst) {
    Gf2System sys(inst.n_vars, static_cast<int>(inst.clauses.size()));
    for (std::size_t r = 0; r < inst.clauses.size(); ++r) {
      const auto& c = inst.clauses[r];
      if (c.kind != ClauseKind::XorParity)
        throw InvalidArgument("GF(2) system requires XOR clauses");
      for (auto v : c) sys.set(static_cast<int>(r), v);
      sys.rhs_[r] = c.parity;
    }
    return sys;
  }

  int n_vars() const { return n_vars_; }
  int n_rows() const { return n_rows_; }

  void set(int row, int col) {
    bits_[static_cast<std::size_t>(row) * words_ + static_cast<std::size_t>(col / 64)] |=
        1ull << (col % 64);
  }
  bool get(int row, int col) const {
    return (bits_[static_cast<std::size_t>(row) * words_ +
                  static_cast<std::size_t>(col / 64)] >>
            (col % 64)) &
           1u;
  }
  void set_rhs(int row, bool value) { rhs_[static_cast<std::size_t>(row)] = value; }
  bool rhs(int row) const { return rhs_[static_cast<std::size_t>(row)]; }

  std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row(int r) const {
    return bits_.data() + static_cast<std::size_t>(r) * words_;
  }
  std::size_t words_per_row() const { return words_; }

  void xor_rows(int dst, int src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
    rhs_[static_cast<std::size_t>(dst)] =
        rhs_[static_cast<std::size_t>(dst)] ^ rhs_[static_cast<std::size_t>(src)];
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    auto* ra = row(a);
    auto* rb = row(b);
    for (std::size_t w = 0; w < words_; ++w) std::swap(ra[w], rb[w]);
    std::swap(rhs_[static_cast<std::size_t>(a)], rhs_[static_cast<std::size_t>(b)]);
  }

private:
  int n_vars_;
  int n_rows_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> rhs_;
};

struct Gf2Solution {
  int rank = 0;
  bool consistent = true;
  std::optional<Assignment> witness;  // free variables set to 0

  // Solution count is 2^(n_vars - rank) when consistent, else 0.
};

// Gaussian elimination, columns left to right. Keeps the echelon pivots and
// back-substitutes with free variables at 0.
inline Gf2Solution gf2_solve(Gf2System sys) {
  const int n = sys.n_vars();
  const int m = sys.n_rows();
  Gf2Solution sol;
  std::vector<int> pivot_col;
  pivot_col.reserve(static_cast<std::size_t>(std::min(n, m)));

  int next_row = 0;
  for (int col = 0; col < n && next_row < m; ++col) {
    int pivot = -1;
    for (int r = next_row; r < m; ++r)
      if (sys.get(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    sys.swap_rows(next_row, pivot);
    for (int r = next_row + 1; r < m; ++r)
      if (sys.get(r, col)) sys.xor_rows(r, next_row);
    pivot_col.push_back(col);
    ++next_row;
  }
  sol.rank = next_row;

  for (int r = next_row; r < m; ++r)
    if (sys.rhs(r)) {
      sol.consistent = false;
      return sol;
    }

  Assignment witness(static_cast<std::size_t>(n), 0);
  for (int r = sol.rank - 1; r >= 0; --r) {
    const int col = pivot_col[static_cast<std::size_t>(r)];
    int acc = sys.rhs(r) ? 1 : 0;
    const auto* bits = sys.row(r);
    for (int c = col + 1; c < n; ++c)
      if ((bits[static_cast<std::size_t>(c / 64)] >> (c % 64)) & 1u)
        acc ^= witness[static_cast<std::size_t>(c)];
    witness[static_cast<std::size_t>(col)] = static_cast<std::uint8_t>(acc);
  }
  sol.witness = std::move(witness);
  return sol;
}

}  // namespace satbench
