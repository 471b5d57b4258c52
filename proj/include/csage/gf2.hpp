#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace csage::gf2 {

// Dense 0/1 matrix with 64-bit packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int i, int j) const;
  void set(int i, int j, bool v);
  void xor_rows(int dst, int src);  // row[dst] ^= row[src]

 private:
  int rows_ = 0, cols_ = 0;
  int words_per_row_ = 0;
  std::vector<uint64_t> data_;
};

using BitVec = std::vector<uint8_t>;  // entries in {0,1}

struct Gf2Solution {
  std::optional<BitVec> particular;  // empty when the system is inconsistent
  std::vector<BitVec> null_basis;    // basis of the null space of A
};

// Exact row reduction of A z = b over F_2.
Gf2Solution gf2_solve(const BitMatrix& A, const BitVec& b);

// A z over F_2.
BitVec gf2_apply(const BitMatrix& A, const BitVec& z);

// All solutions particular + span(null_basis), capped. Sets truncated when
// the solution count exceeds cap.
std::vector<BitVec> gf2_enumerate(const Gf2Solution& sol, size_t cap,
                                  bool* truncated);

}  // namespace csage::gf2
