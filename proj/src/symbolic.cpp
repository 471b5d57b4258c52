#include "csage/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace csage {

namespace {

// Lexicographic compare with tolerance; returns -1, 0, +1.
int lex_cmp(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b,
            double tol) {
  for (Index j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    if (d < -tol) return -1;
    if (d > tol) return 1;
  }
  return 0;
}

template <typename Mat>
bool rows_equal(const Mat& alpha, Index i, Index j, double tol) {
  if constexpr (std::is_same_v<Mat, IntMatrix>) {
    (void)tol;
    return alpha.row(i) == alpha.row(j);
  } else {
    return lex_cmp(alpha.row(i), alpha.row(j), tol) == 0;
  }
}

template <typename Mat>
bool row_less(const Mat& alpha, Index i, Index j, double tol) {
  if constexpr (std::is_same_v<Mat, IntMatrix>) {
    (void)tol;
    for (Index k = 0; k < alpha.cols(); ++k) {
      if (alpha(i, k) != alpha(j, k)) return alpha(i, k) < alpha(j, k);
    }
    return false;
  } else {
    return lex_cmp(alpha.row(i), alpha.row(j), tol) < 0;
  }
}

template <typename Mat>
void canonicalize_impl(Mat& alpha, Vector& c, bool keep_zero_rows,
                       double tol) {
  if (alpha.rows() != c.size())
    throw DimensionError("canonicalize: row count of alpha != length of c");
  const Index m = alpha.rows();
  std::vector<Index> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return row_less(alpha, i, j, tol);
  });

  Mat out_alpha(m, alpha.cols());
  Vector out_c(m);
  Index k = 0;
  Index prev = -1;
  for (Index t = 0; t < m; ++t) {
    const Index i = order[static_cast<size_t>(t)];
    if (k > 0 && rows_equal(alpha, prev, i, tol)) {
      out_c[k - 1] += c[i];
    } else {
      out_alpha.row(k) = alpha.row(i);
      out_c[k] = c[i];
      prev = i;
      ++k;
    }
  }
  if (!keep_zero_rows) {
    Index w = 0;
    for (Index i = 0; i < k; ++i) {
      if (out_c[i] != 0.0) {
        out_alpha.row(w) = out_alpha.row(i);
        out_c[w] = out_c[i];
        ++w;
      }
    }
    k = w;
  }
  alpha = out_alpha.topRows(k);
  c = out_c.head(k);
}

int ipow_check(const IntMatrix& alpha) {
  if ((alpha.array() < 0).any())
    throw ValueError("polynomial exponents must be nonnegative integers");
  return 0;
}

double ipow(double base, int32_t e) {
  double r = 1.0, b = base;
  for (int32_t k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

void canonicalize(Matrix& alpha, Vector& c, bool keep_zero_rows, double tol) {
  canonicalize_impl(alpha, c, keep_zero_rows, tol);
}

void canonicalize(IntMatrix& alpha, Vector& c, bool keep_zero_rows) {
  canonicalize_impl(alpha, c, keep_zero_rows, 0.0);
}

Signomial::Signomial(Matrix alpha, Vector c, bool keep_zero_rows)
    : alpha_(std::move(alpha)), c_(std::move(c)) {
  canonicalize(alpha_, c_, keep_zero_rows);
}

Signomial Signomial::constant(double value, Index n) {
  Matrix a = Matrix::Zero(1, n);
  Vector c(1);
  c << value;
  return Signomial(std::move(a), std::move(c), true);
}

double Signomial::eval(const Vector& x) const {
  if (x.size() != dim())
    throw DimensionError("sig_eval: point dimension mismatch");
  double s = 0.0;
  for (Index i = 0; i < num_terms(); ++i)
    s += c_[i] * std::exp(alpha_.row(i).dot(x.transpose()));
  return s;
}

Signomial Signomial::pruned(double eps) const {
  Matrix a = alpha_;
  Vector c = c_;
  Index w = 0;
  for (Index i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > eps) {
      a.row(w) = a.row(i);
      c[w] = c[i];
      ++w;
    }
  }
  return Signomial(a.topRows(w), c.head(w), true);
}

Index Signomial::constant_row() const {
  for (Index i = 0; i < num_terms(); ++i)
    if (alpha_.row(i).cwiseAbs().maxCoeff() <= kExponentTol) return i;
  return -1;
}

Signomial mul(const Signomial& f, const Signomial& g) {
  if (f.dim() != g.dim()) throw DimensionError("mul: variable count mismatch");
  const Index mf = f.num_terms(), mg = g.num_terms();
  Matrix alpha(mf * mg, f.dim());
  Vector c(mf * mg);
  Index k = 0;
  for (Index i = 0; i < mf; ++i) {
    for (Index j = 0; j < mg; ++j, ++k) {
      alpha.row(k) = f.alpha_.row(i) + g.alpha_.row(j);
      c[k] = f.c_[i] * g.c_[j];
    }
  }
  return Signomial(std::move(alpha), std::move(c));
}

Signomial add(const Signomial& f, const Signomial& g) {
  if (f.dim() != g.dim()) throw DimensionError("add: variable count mismatch");
  Matrix alpha(f.num_terms() + g.num_terms(), f.dim());
  alpha << f.alpha_, g.alpha_;
  Vector c(f.num_terms() + g.num_terms());
  c << f.c_, g.c_;
  return Signomial(std::move(alpha), std::move(c));
}

Signomial pow(const Signomial& f, int k) {
  if (k < 0) throw ValueError("pow: exponent must be nonnegative");
  Signomial r = Signomial::constant(1.0, f.dim());
  Signomial base = f;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

Signomial scale(const Signomial& f, double a) {
  return Signomial(f.alpha(), a * f.c(), true);
}

Polynomial::Polynomial(IntMatrix alpha, Vector c, bool keep_zero_rows)
    : alpha_(std::move(alpha)), c_(std::move(c)) {
  ipow_check(alpha_);
  canonicalize(alpha_, c_, keep_zero_rows);
}

Polynomial Polynomial::constant(double value, Index n) {
  IntMatrix a = IntMatrix::Zero(1, n);
  Vector c(1);
  c << value;
  return Polynomial(std::move(a), std::move(c), true);
}

double Polynomial::eval(const Vector& x) const {
  if (x.size() != dim())
    throw DimensionError("poly_eval: point dimension mismatch");
  double s = 0.0;
  for (Index i = 0; i < num_terms(); ++i) {
    double t = c_[i];
    for (Index j = 0; j < dim(); ++j) {
      if (alpha_(i, j) != 0) t *= ipow(x[j], alpha_(i, j));
    }
    s += t;
  }
  return s;
}

Polynomial Polynomial::pruned(double eps) const {
  IntMatrix a = alpha_;
  Vector c = c_;
  Index w = 0;
  for (Index i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > eps) {
      a.row(w) = a.row(i);
      c[w] = c[i];
      ++w;
    }
  }
  return Polynomial(a.topRows(w), c.head(w), true);
}

Index Polynomial::constant_row() const {
  for (Index i = 0; i < num_terms(); ++i)
    if ((alpha_.row(i).array() == 0).all()) return i;
  return -1;
}

Signomial Polynomial::as_signomial() const {
  return Signomial(alpha_.cast<double>(), c_, true);
}

Polynomial mul(const Polynomial& f, const Polynomial& g) {
  if (f.dim() != g.dim()) throw DimensionError("mul: variable count mismatch");
  const Index mf = f.num_terms(), mg = g.num_terms();
  IntMatrix alpha(mf * mg, f.dim());
  Vector c(mf * mg);
  Index k = 0;
  for (Index i = 0; i < mf; ++i) {
    for (Index j = 0; j < mg; ++j, ++k) {
      alpha.row(k) = f.alpha().row(i) + g.alpha().row(j);
      c[k] = f.c()[i] * g.c()[j];
    }
  }
  return Polynomial(std::move(alpha), std::move(c));
}

Polynomial add(const Polynomial& f, const Polynomial& g) {
  if (f.dim() != g.dim()) throw DimensionError("add: variable count mismatch");
  IntMatrix alpha(f.num_terms() + g.num_terms(), f.dim());
  alpha << f.alpha(), g.alpha();
  Vector c(f.num_terms() + g.num_terms());
  c << f.c(), g.c();
  return Polynomial(std::move(alpha), std::move(c));
}

Polynomial pow(const Polynomial& f, int k) {
  if (k < 0) throw ValueError("pow: exponent must be nonnegative");
  Polynomial r = Polynomial::constant(1.0, f.dim());
  Polynomial base = f;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

Polynomial scale(const Polynomial& f, double a) {
  return Polynomial(f.alpha(), a * f.c(), true);
}

std::vector<bool> even_lattice_mask(const IntMatrix& alpha) {
  std::vector<bool> mask(static_cast<size_t>(alpha.rows()));
  for (Index i = 0; i < alpha.rows(); ++i) {
    bool even = true;
    for (Index j = 0; j < alpha.cols(); ++j)
      even = even && (alpha(i, j) % 2 == 0);
    mask[static_cast<size_t>(i)] = even;
  }
  return mask;
}

std::vector<bool> even_lattice_mask(const Matrix& alpha) {
  IntMatrix ia(alpha.rows(), alpha.cols());
  for (Index i = 0; i < alpha.rows(); ++i) {
    for (Index j = 0; j < alpha.cols(); ++j) {
      const double r = std::round(alpha(i, j));
      if (std::abs(alpha(i, j) - r) > 1e-9)
        throw ValueError("even_lattice_mask: non-integer exponent entry");
      ia(i, j) = static_cast<int32_t>(r);
    }
  }
  if ((ia.array() < 0).any())
    throw ValueError("even_lattice_mask: negative exponent entry");
  return even_lattice_mask(ia);
}

SigRepBlock sigrep_block(const IntMatrix& alpha) {
  SigRepBlock block;
  const auto mask = even_lattice_mask(alpha);
  for (Index i = 0; i < alpha.rows(); ++i) {
    if (mask[static_cast<size_t>(i)])
      block.equality_rows.push_back(i);
    else
      block.domination_rows.push_back(i);
  }
  return block;
}

SigRepBlock sigrep_block(const Matrix& alpha) {
  SigRepBlock block;
  const auto mask = even_lattice_mask(alpha);
  for (Index i = 0; i < alpha.rows(); ++i) {
    if (mask[static_cast<size_t>(i)])
      block.equality_rows.push_back(i);
    else
      block.domination_rows.push_back(i);
  }
  return block;
}

Vector tightest_sigrep(const IntMatrix& alpha, const Vector& c) {
  if (alpha.rows() != c.size())
    throw DimensionError("tightest_sigrep: dimension mismatch");
  const auto mask = even_lattice_mask(alpha);
  Vector chat = c;
  for (Index i = 0; i < c.size(); ++i)
    if (!mask[static_cast<size_t>(i)]) chat[i] = -std::abs(c[i]);
  return chat;
}

Matrix basis_union(const std::vector<Matrix>& alphas, bool include_zero_row,
                   double tol) {
  Index n = -1;
  Index total = include_zero_row ? 1 : 0;
  for (const auto& a : alphas) {
    if (a.rows() == 0) continue;
    if (n < 0) n = a.cols();
    if (a.cols() != n) throw DimensionError("basis_union: mixed dimensions");
    total += a.rows();
  }
  if (n < 0) throw ValueError("basis_union: no exponent rows given");
  Matrix stacked(total, n);
  Index r = 0;
  if (include_zero_row) stacked.row(r++).setZero();
  for (const auto& a : alphas) {
    if (a.rows() == 0) continue;
    stacked.middleRows(r, a.rows()) = a;
    r += a.rows();
  }
  Vector ones = Vector::Ones(total);
  canonicalize(stacked, ones, /*keep_zero_rows=*/true, tol);
  return stacked;
}

Index basis_row_index(const Matrix& basis, const Eigen::RowVectorXd& row,
                      double tol) {
  // Rows are sorted lexicographically: binary search.
  Index lo = 0, hi = basis.rows();
  while (lo < hi) {
    const Index mid = (lo + hi) / 2;
    const int cmp = lex_cmp(basis.row(mid), row, tol);
    if (cmp == 0) return mid;
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return -1;
}

Vector pad_to_basis(const Matrix& basis, const Matrix& alpha, const Vector& c,
                    double tol) {
  Vector out = Vector::Zero(basis.rows());
  for (Index i = 0; i < alpha.rows(); ++i) {
    const Index k = basis_row_index(basis, alpha.row(i), tol);
    if (k < 0) throw ValueError("pad_to_basis: exponent row missing in basis");
    out[k] += c[i];
  }
  return out;
}

Matrix power_basis(const Matrix& alpha, int k, double tol) {
  if (k < 0) throw ValueError("power_basis: power must be nonnegative");
  Matrix cur = Matrix::Zero(1, alpha.cols());
  for (int t = 0; t < k; ++t) cur = product_basis(cur, alpha, tol);
  return cur;
}

Matrix product_basis(const Matrix& a, const Matrix& b, double tol) {
  if (a.cols() != b.cols())
    throw DimensionError("product_basis: dimension mismatch");
  Matrix sums(a.rows() * b.rows(), a.cols());
  Index k = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.rows(); ++j, ++k) sums.row(k) = a.row(i) + b.row(j);
  Vector ones = Vector::Ones(sums.rows());
  canonicalize(sums, ones, /*keep_zero_rows=*/true, tol);
  return sums;
}

}  // namespace csage
