#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "csage/symbolic.hpp"

using namespace csage;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> lst) {
  const Index m = static_cast<Index>(lst.size());
  const Index n = static_cast<Index>(lst.begin()->size());
  Matrix a(m, n);
  Index i = 0;
  for (const auto& r : lst) {
    Index j = 0;
    for (double v : r) a(i, j++) = v;
    ++i;
  }
  return a;
}

IntMatrix irows(std::initializer_list<std::initializer_list<int>> lst) {
  const Index m = static_cast<Index>(lst.size());
  const Index n = static_cast<Index>(lst.begin()->size());
  IntMatrix a(m, n);
  Index i = 0;
  for (const auto& r : lst) {
    Index j = 0;
    for (int v : r) a(i, j++) = v;
    ++i;
  }
  return a;
}

Vector vec(std::initializer_list<double> lst) {
  Vector v(static_cast<Index>(lst.size()));
  Index i = 0;
  for (double x : lst) v[i++] = x;
  return v;
}

// Ex1 objective: 0.5 e^{x1-x2} - e^{x1} - 5 e^{-x2}
Signomial ex1_objective() {
  return Signomial(rows({{1, -1, 0}, {1, 0, 0}, {0, -1, 0}}),
                   vec({0.5, -1.0, -5.0}));
}

// Independent enumeration of distinct exponent rows via a sorted set.
size_t count_distinct_rows(const Matrix& a) {
  std::set<std::vector<double>> seen;
  for (Index i = 0; i < a.rows(); ++i) {
    std::vector<double> r(a.cols());
    for (Index j = 0; j < a.cols(); ++j) r[static_cast<size_t>(j)] = a(i, j);
    seen.insert(r);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("canonicalize merges duplicates and sums coefficients") {
  Matrix a = rows({{1}, {1}});
  Vector c = vec({2, 3});
  canonicalize(a, c);
  REQUIRE(a.rows() == 1);
  CHECK(a(0, 0) == 1.0);
  CHECK(c[0] == 5.0);
}

TEST_CASE("canonicalize keeps zero-coefficient rows only in basis-union mode") {
  Matrix a = rows({{0}, {1}});
  Vector c = vec({1, 0});
  Matrix a2 = a;
  Vector c2 = c;
  canonicalize(a2, c2, /*keep_zero_rows=*/true);
  CHECK(a2.rows() == 2);
  CHECK(c2[1] == 0.0);
  canonicalize(a, c, /*keep_zero_rows=*/false);
  CHECK(a.rows() == 1);
}

TEST_CASE("canonicalize is idempotent on random input") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> expo(-2, 2);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 50; ++t) {
    Matrix a(8, 3);
    Vector c(8);
    for (Index i = 0; i < 8; ++i) {
      for (Index j = 0; j < 3; ++j) a(i, j) = expo(rng);
      c[i] = gauss(rng);
    }
    canonicalize(a, c);
    Matrix a2 = a;
    Vector c2 = c;
    canonicalize(a2, c2);
    CHECK(a2.rows() == a.rows());
    CHECK((a2 - a).norm() == 0.0);
    CHECK((c2 - c).norm() == 0.0);
  }
}

TEST_CASE("basis union of Ex1's f, g1, and the constant") {
  // g1 = 100 - e^{x2-x3} - e^{x2} - 0.05 e^{x1+x3}
  const Matrix g1 =
      rows({{0, 0, 0}, {0, 1, -1}, {0, 1, 0}, {1, 0, 1}});
  const Matrix f = ex1_objective().alpha();
  const Matrix uni = basis_union({f, g1}, /*include_zero_row=*/true);
  // Oracle: enumerate the distinct exponent rows directly.
  Matrix stacked(f.rows() + g1.rows() + 1, 3);
  stacked << f, g1, Matrix::Zero(1, 3);
  CHECK(static_cast<size_t>(uni.rows()) == count_distinct_rows(stacked));
  CHECK(uni.rows() == 7);
  // Adding the bound-constraint exponents e1, e2, e3 gives the full
  // 8-row basis used by the conditional relaxation.
  const Matrix bounds = Matrix::Identity(3, 3);
  const Matrix uni2 = basis_union({f, g1, bounds}, true);
  CHECK(uni2.rows() == 8);
}

TEST_CASE("sig_eval basics and paper values") {
  Signomial two(rows({{0}, {1}}), vec({1, 1}));
  CHECK(two.eval(vec({0})) == doctest::Approx(2.0));

  const Signomial f = ex1_objective();
  const Vector xstar = vec({5.01063529, 3.40119660, -0.48450710});
  CHECK(f.eval(xstar) == doctest::Approx(-147.66666).epsilon(1e-4 / 147.0));

  // AM/GM: 0.5 e^{2x1} + 0.5 e^{2x2} - e^{x1+x2} >= 0 everywhere.
  Signomial amgm(rows({{2, 0}, {0, 2}, {1, 1}}), vec({0.5, 0.5, -1.0}));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const Vector x = vec({unif(rng), unif(rng)});
    CHECK(amgm.eval(x) >= -1e-12);
  }
}

TEST_CASE("poly_eval basics and paper values") {
  // Ex10: six-hump camel
  Polynomial camel(
      irows({{2, 0}, {4, 0}, {6, 0}, {1, 1}, {0, 2}, {0, 4}}),
      vec({4.0, -2.1, 1.0 / 3.0, 1.0, -4.0, 4.0}));
  CHECK(camel.eval(vec({0, 0})) == doctest::Approx(0.0));

  // Ex3: f = -64 sum_i prod_{j != i} x_j at x = 1/2 gives -7.
  IntMatrix a3(8, 7);
  a3.setZero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) a3(i, j) = (i == j) ? 0 : 1;
  Vector c3(8);
  c3.head(7).setConstant(-64.0);
  c3[7] = 0.0;
  Polynomial f3(a3, c3, true);
  CHECK(f3.eval(Vector::Constant(7, 0.5)) == doctest::Approx(-7.0));
  CHECK(f3.eval(Vector::Constant(7, -0.5)) == doctest::Approx(-7.0));
}

TEST_CASE("evaluation is a homomorphism for products") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> expo(-2, 2);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    Matrix af(3, 2), ag(4, 2);
    Vector cf(3), cg(4);
    for (Index i = 0; i < 3; ++i) {
      af(i, 0) = expo(rng);
      af(i, 1) = expo(rng);
      cf[i] = gauss(rng);
    }
    for (Index i = 0; i < 4; ++i) {
      ag(i, 0) = expo(rng);
      ag(i, 1) = expo(rng);
      cg[i] = gauss(rng);
    }
    Signomial f(af, cf), g(ag, cg);
    const Signomial fg = mul(f, g);
    const Vector x = vec({unif(rng), unif(rng)});
    const double lhs = fg.eval(x), rhs = f.eval(x) * g.eval(x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("pow: zeroth power is the constant one") {
  Signomial f(rows({{1, 0}, {0, 1}}), vec({2, 3}));
  const Signomial one = pow(f, 0);
  CHECK(one.num_terms() == 1);
  CHECK(one.eval(vec({0.3, -0.7})) == doctest::Approx(1.0));
}

TEST_CASE("pow: (e^x + e^-x)^2 = e^2x + 2 + e^-2x") {
  Signomial f(rows({{1}, {-1}}), vec({1, 1}));
  const Signomial sq = pow(f, 2);
  REQUIRE(sq.num_terms() == 3);
  CHECK(sq.alpha()(0, 0) == doctest::Approx(-2.0));
  CHECK(sq.alpha()(1, 0) == doctest::Approx(0.0));
  CHECK(sq.alpha()(2, 0) == doctest::Approx(2.0));
  CHECK(sq.c()[1] == doctest::Approx(2.0));
}

TEST_CASE("squared basis of the Ex1 8-row alpha matches enumeration") {
  Matrix alpha =
      rows({{0, 0, 0}, {1, -1, 0}, {1, 0, 0}, {0, -1, 0},
            {0, 1, -1}, {0, 1, 0}, {1, 0, 1}, {0, 0, 1}});
  // Oracle: brute-force pairwise sums, dedupe via a set.
  std::set<std::vector<double>> sums;
  for (Index i = 0; i < alpha.rows(); ++i) {
    for (Index j = 0; j < alpha.rows(); ++j) {
      std::vector<double> r(3);
      for (Index k = 0; k < 3; ++k) r[static_cast<size_t>(k)] = alpha(i, k) + alpha(j, k);
      sums.insert(r);
    }
  }
  Signomial one_over_alpha(alpha, Vector::Ones(8), true);
  const Signomial sq = mul(one_over_alpha, one_over_alpha);
  CHECK(static_cast<size_t>(sq.num_terms()) == sums.size());
  const Matrix pb = power_basis(alpha, 2);
  CHECK(static_cast<size_t>(pb.rows()) == sums.size());
}

TEST_CASE("even lattice mask") {
  CHECK(even_lattice_mask(irows({{2, 0}, {0, 2}, {1, 1}})) ==
        std::vector<bool>{true, true, false});
  CHECK(even_lattice_mask(irows({{0, 0}})) == std::vector<bool>{true});
  // Ex10's exponents: exactly one non-even row (the x1*x2 term).
  const auto mask =
      even_lattice_mask(irows({{2, 0}, {4, 0}, {6, 0}, {1, 1}, {0, 2}, {0, 4}}));
  int odd = 0;
  for (bool b : mask) odd += b ? 0 : 1;
  CHECK(odd == 1);
  CHECK_THROWS_AS(even_lattice_mask(rows({{0.5, 1.0}})), ValueError);
}

TEST_CASE("sigrep block: all-even alpha keeps c exactly") {
  const IntMatrix a = irows({{2, 0}, {0, 4}});
  const auto block = sigrep_block(a);
  CHECK(block.equality_rows.size() == 2);
  CHECK(block.domination_rows.empty());
  const Vector c = vec({1.5, -2.5});
  CHECK((tightest_sigrep(a, c) - c).norm() == 0.0);
}

TEST_CASE("sigrep block: mixed parity dominates the odd row") {
  const IntMatrix a = irows({{2, 0}, {1, 0}});
  const auto block = sigrep_block(a);
  REQUIRE(block.equality_rows == std::vector<Index>{0});
  REQUIRE(block.domination_rows == std::vector<Index>{1});
  const Vector chat = tightest_sigrep(a, vec({1.0, -2.0}));
  CHECK(chat[0] == 1.0);
  CHECK(chat[1] == -2.0);
}

TEST_CASE("signomial representative lower-bounds the polynomial") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> expo(0, 3);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int t = 0; t < 30; ++t) {
    IntMatrix a(5, 2);
    Vector c(5);
    for (Index i = 0; i < 5; ++i) {
      a(i, 0) = expo(rng);
      a(i, 1) = expo(rng);
      c[i] = gauss(rng);
    }
    Polynomial p(a, c, true);
    Signomial rep(p.alpha().cast<double>(),
                  tightest_sigrep(p.alpha(), p.c()), true);
    for (int s = 0; s < 50; ++s) {
      Vector x = vec({unif(rng), unif(rng)});
      for (Index j = 0; j < 2; ++j)
        if (std::abs(x[j]) < 1e-3) x[j] = 1e-3;
      Vector logabs = x.cwiseAbs().array().log().matrix();
      CHECK(rep.eval(logabs) <= p.eval(x) + 1e-9);
    }
  }
}
