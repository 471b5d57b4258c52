#pragma once

#include <vector>

#include "csage/types.hpp"

namespace csage {

// Tolerance used when comparing real exponent rows during canonicalization.
inline constexpr double kExponentTol = 1e-12;

// Merges duplicate rows of alpha (summing coefficients) and sorts rows
// lexicographically. Rows whose merged coefficient is exactly zero are
// dropped unless keep_zero_rows is set (basis-union mode).
void canonicalize(Matrix& alpha, Vector& c, bool keep_zero_rows = false,
                  double tol = kExponentTol);
void canonicalize(IntMatrix& alpha, Vector& c, bool keep_zero_rows = false);

// f(x) = sum_i c_i exp(alpha_i . x)
class Signomial {
 public:
  Signomial() = default;
  Signomial(Matrix alpha, Vector c, bool keep_zero_rows = false);

  static Signomial constant(double value, Index n);

  const Matrix& alpha() const { return alpha_; }
  const Vector& c() const { return c_; }
  Index num_terms() const { return alpha_.rows(); }
  Index dim() const { return alpha_.cols(); }

  double eval(const Vector& x) const;
  double operator()(const Vector& x) const { return eval(x); }

  // Drops terms with |c_i| <= eps. Never applied implicitly.
  Signomial pruned(double eps) const;

  // Returns the index of the zero exponent row, or -1.
  Index constant_row() const;

  friend Signomial mul(const Signomial& f, const Signomial& g);
  friend Signomial add(const Signomial& f, const Signomial& g);

 private:
  Matrix alpha_;
  Vector c_;
};

Signomial mul(const Signomial& f, const Signomial& g);
Signomial add(const Signomial& f, const Signomial& g);
Signomial pow(const Signomial& f, int k);
Signomial scale(const Signomial& f, double a);

// f(x) = sum_i c_i x^{alpha_i}, alpha nonnegative integer.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(IntMatrix alpha, Vector c, bool keep_zero_rows = false);

  static Polynomial constant(double value, Index n);

  const IntMatrix& alpha() const { return alpha_; }
  const Vector& c() const { return c_; }
  Index num_terms() const { return alpha_.rows(); }
  Index dim() const { return alpha_.cols(); }

  double eval(const Vector& x) const;
  double operator()(const Vector& x) const { return eval(x); }

  Polynomial pruned(double eps) const;
  Index constant_row() const;

  // The signomial with the same exponents and coefficients; agrees with
  // the polynomial at x = exp(y) on the positive orthant.
  Signomial as_signomial() const;

 private:
  IntMatrix alpha_;
  Vector c_;
};

Polynomial mul(const Polynomial& f, const Polynomial& g);
Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial pow(const Polynomial& f, int k);
Polynomial scale(const Polynomial& f, double a);

// mask_i is true iff every entry of row i is even.
std::vector<bool> even_lattice_mask(const IntMatrix& alpha);
// Double-matrix overload; throws unless all entries are (numerically) integers.
std::vector<bool> even_lattice_mask(const Matrix& alpha);

// Index partition of a signomial-representative block: rows where
// chat_i = c_i (even lattice) and rows where chat_i <= -|c_i|.
struct SigRepBlock {
  std::vector<Index> equality_rows;
  std::vector<Index> domination_rows;
};
SigRepBlock sigrep_block(const IntMatrix& alpha);
SigRepBlock sigrep_block(const Matrix& alpha);

// For concrete c, the elementwise-largest signomial representative:
// chat_i = c_i on even rows and chat_i = -|c_i| elsewhere.
Vector tightest_sigrep(const IntMatrix& alpha, const Vector& c);

// Shared-basis utilities. Returns the sorted union of the given exponent
// matrices (optionally forcing a zero row) and, via pad_to_basis, the
// coefficient vector of a function re-expressed over that basis.
Matrix basis_union(const std::vector<Matrix>& alphas, bool include_zero_row,
                   double tol = kExponentTol);
Vector pad_to_basis(const Matrix& basis, const Matrix& alpha, const Vector& c,
                    double tol = kExponentTol);
// Row index of `row` within `basis`, or -1.
Index basis_row_index(const Matrix& basis, const Eigen::RowVectorXd& row,
                      double tol = kExponentTol);

// Exponent set of Sig(alpha, 1)^k: all sums of exactly k rows of alpha
// (k = 0 gives the single zero row).
Matrix power_basis(const Matrix& alpha, int k, double tol = kExponentTol);

// Sums alpha_f[i] + alpha_g[j] for all pairs, deduplicated: the basis of
// a product f * g.
Matrix product_basis(const Matrix& a, const Matrix& b,
                     double tol = kExponentTol);

}  // namespace csage
