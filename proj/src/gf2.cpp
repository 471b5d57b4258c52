#include "csage/gf2.hpp"

#include <stdexcept>

namespace csage::gf2 {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_((cols + 63) / 64),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(words_per_row_),
            0) {}

bool BitMatrix::get(int i, int j) const {
  return (data_[static_cast<size_t>(i) * words_per_row_ + j / 64] >>
          (j % 64)) &
         1u;
}

void BitMatrix::set(int i, int j, bool v) {
  uint64_t& w = data_[static_cast<size_t>(i) * words_per_row_ + j / 64];
  const uint64_t bit = uint64_t{1} << (j % 64);
  if (v)
    w |= bit;
  else
    w &= ~bit;
}

void BitMatrix::xor_rows(int dst, int src) {
  const size_t d = static_cast<size_t>(dst) * words_per_row_;
  const size_t s = static_cast<size_t>(src) * words_per_row_;
  for (int w = 0; w < words_per_row_; ++w) data_[d + w] ^= data_[s + w];
}

Gf2Solution gf2_solve(const BitMatrix& A, const BitVec& b) {
  const int m = A.rows(), n = A.cols();
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("gf2_solve: rhs length mismatch");

  // Augmented system [A | b], eliminated in place.
  BitMatrix M(m, n + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) M.set(i, j, A.get(i, j));
    M.set(i, n, b[static_cast<size_t>(i)] & 1);
  }

  std::vector<int> pivot_col;  // pivot column of each pivot row
  std::vector<int> col_pivot_row(static_cast<size_t>(n), -1);
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i) {
      if (M.get(i, col)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) {
      // swap rows piv and rank via three xors
      M.xor_rows(rank, piv);
      M.xor_rows(piv, rank);
      M.xor_rows(rank, piv);
    }
    for (int i = 0; i < m; ++i) {
      if (i != rank && M.get(i, col)) M.xor_rows(i, rank);
    }
    col_pivot_row[static_cast<size_t>(col)] = rank;
    pivot_col.push_back(col);
    ++rank;
  }

  Gf2Solution sol;
  bool consistent = true;
  for (int i = rank; i < m; ++i) {
    if (M.get(i, n)) {
      consistent = false;
      break;
    }
  }
  if (consistent) {
    BitVec z(static_cast<size_t>(n), 0);
    for (int r = 0; r < rank; ++r)
      z[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
          M.get(r, n) ? 1 : 0;
    sol.particular = std::move(z);
  }

  for (int col = 0; col < n; ++col) {
    if (col_pivot_row[static_cast<size_t>(col)] >= 0) continue;
    BitVec v(static_cast<size_t>(n), 0);
    v[static_cast<size_t>(col)] = 1;
    for (int pc = 0; pc < n; ++pc) {
      const int r = col_pivot_row[static_cast<size_t>(pc)];
      if (r >= 0 && M.get(r, col)) v[static_cast<size_t>(pc)] = 1;
    }
    sol.null_basis.push_back(std::move(v));
  }
  return sol;
}

BitVec gf2_apply(const BitMatrix& A, const BitVec& z) {
  const int m = A.rows(), n = A.cols();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("gf2_apply: vector length mismatch");
  BitVec out(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    uint8_t acc = 0;
    for (int j = 0; j < n; ++j) acc ^= (A.get(i, j) & z[static_cast<size_t>(j)]);
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

std::vector<BitVec> gf2_enumerate(const Gf2Solution& sol, size_t cap,
                                  bool* truncated) {
  std::vector<BitVec> out;
  if (truncated) *truncated = false;
  if (!sol.particular) return out;
  const size_t n = sol.particular->size();
  const size_t k = sol.null_basis.size();
  const bool overflow = k >= 63 || (size_t{1} << k) > cap;
  const size_t count = overflow ? cap : (size_t{1} << k);
  if (truncated) *truncated = overflow;
  out.reserve(count);
  for (size_t mask = 0; mask < count; ++mask) {
    BitVec z = *sol.particular;
    for (size_t t = 0; t < k; ++t) {
      if ((mask >> t) & 1) {
        for (size_t j = 0; j < n; ++j) z[j] ^= sol.null_basis[t][j];
      }
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace csage::gf2
