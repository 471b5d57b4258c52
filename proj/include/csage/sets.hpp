#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csage/model.hpp"
#include "csage/symbolic.hpp"
#include "csage/types.hpp"

namespace csage {

// X = { x : exists aux w with A (x, w) + b in K }. Auxiliary columns come
// from lifting posynomial terms into exponential-cone epigraphs; plain
// sets have aux_dim() == 0.
class ConicSet {
 public:
  ConicSet() = default;
  ConicSet(Index n, SpMat A, Vector b, ConeSpec K, Index n_aux = 0);

  static ConicSet whole_space(Index n);

  Index dim() const { return n_; }
  Index aux_dim() const { return n_aux_; }
  Index rows() const { return A_.rows(); }
  bool is_whole_space() const { return A_.rows() == 0; }

  const SpMat& A() const { return A_; }
  const Vector& b() const { return b_; }
  const ConeSpec& K() const { return K_; }

  void set_interior_point(const Vector& x0);
  const std::optional<Vector>& interior_point() const { return interior_; }

  // Keeps the generating description so that feasibility of points can be
  // evaluated without solving for the lifted auxiliaries.
  void note_posy_leq(const Signomial& g, double u) {
    posy_leq_.emplace_back(g, u);
  }
  const std::vector<std::pair<Signomial, double>>& posy_leq() const {
    return posy_leq_;
  }

  // Max violation of x against the set description (<= 0 means feasible).
  double violation(const Vector& x) const;

 private:
  Index n_ = 0, n_aux_ = 0;
  SpMat A_;
  Vector b_;
  ConeSpec K_;
  std::optional<Vector> interior_;
  std::vector<std::pair<Signomial, double>> posy_leq_;
};

// Builder for sets cut out by posynomial-<= constraints and variable
// bounds; produces exponential-cone lifts term by term.
class ConicSetBuilder {
 public:
  explicit ConicSetBuilder(Index n) : n_(n) {}

  // sum_j c_j exp(a_j . x) <= u with all c_j >= 0.
  void add_posynomial_leq(const Signomial& g, double u);
  // g(x) >= 0 where g = u - posynomial (the common "g >= 0" shape with
  // exactly one positive constant term).
  void add_signomial_geq0(const Signomial& g);
  void add_linear_leq(const Vector& a, double u);   // a.x <= u
  void add_linear_eq(const Vector& a, double u);    // a.x == u
  void add_lower_bound(Index j, double lo);         // x_j >= lo
  void add_upper_bound(Index j, double hi);         // x_j <= hi
  void add_soc(const Matrix& F, const Vector& g0);  // (F x + g0) in SOC

  ConicSet build() const;

 private:
  struct PendingExp {
    Eigen::RowVectorXd a;
    double logc;
    Index aux;
  };
  Index n_;
  Index n_aux_ = 0;
  std::vector<Triplet> trips_;
  std::vector<double> rhs_;
  std::vector<ConeFactor> factors_;
  std::vector<std::pair<Signomial, double>> posy_notes_;
  void push_row(const Eigen::RowVectorXd& x_part, double b);
  void push_aux_row(const Eigen::RowVectorXd& x_part, Index aux_col,
                    double aux_coef, double b);
};

// X from constraints g_i(x) >= 0 where each g_i is "constant minus
// posynomial" (possibly a plain linear bound); the common conditional
// SAGE domain.
ConicSet from_posynomial_leq(
    const std::vector<std::pair<Signomial, double>>& constraints, Index n);

// Box l <= x <= u (entries may be -inf/+inf to skip a side).
ConicSet box_set(const Vector& lo, const Vector& hi);

// Support-function epigraph: introduces eta in K^dagger with
// A' eta + lambda = 0 and returns the value term b' eta that
// upper-bounds sigma_X(lambda). For the whole space it instead forces
// lambda = 0 and returns 0.
LinExpr support_epigraph(Model& md, const ConicSet& X,
                         const std::vector<LinExpr>& lambda,
                         const std::string& name);

// Homogenization: A (z, w) + t b in K with w fresh auxiliaries.
// (t >= 0 is the caller's responsibility; it usually already follows
// from the enclosing block.)
void cone_over(Model& md, const ConicSet& X, const std::vector<LinExpr>& z,
               const LinExpr& t, const std::string& name);

// Solves min obj.x over X (obj in R^n) and returns the argmin.
Vector minimize_linear_over(const ConicSet& X, const Vector& obj,
                            double eps = 1e-9);

// Random-ish point of X: convex mixture of linear-objective minimizers.
Vector sample_point(const ConicSet& X, unsigned seed);

// Numerical support function sigma_X(lambda) computed by direct solve.
double support_value(const ConicSet& X, const Vector& lambda);

// Domain of a polynomial problem. Exactly one of orthant/sign_symmetric
// is set; Y is the log-space set {y : H(exp y) <= 1}.
struct SignSymmetricDomain {
  ConicSet Y;
  bool orthant = false;
  bool sign_symmetric = true;

  Index dim() const { return Y.dim(); }
  static SignSymmetricDomain whole(Index n) {
    return {ConicSet::whole_space(n), false, true};
  }
  static SignSymmetricDomain over_orthant(ConicSet y) {
    return {std::move(y), true, false};
  }
  static SignSymmetricDomain symmetric(ConicSet y) {
    return {std::move(y), false, true};
  }
};

// |x_j| bounds: lo_j <= |x_j| <= hi_j with lo_j >= 0 (0 skips the lower
// bound, +inf skips the upper). Builds the log-space box.
SignSymmetricDomain log_box(const Vector& lo_abs, const Vector& hi_abs);

// ||x||_2 <= radius as a sign-symmetric domain: sum exp(2 y_i) <= r^2.
SignSymmetricDomain log_ball(Index n, double radius);

// Magnitude bounds a <= |x^{alpha_i}| become alpha_i . y >= log a; an
// annulus combines them with |x| upper bounds.
SignSymmetricDomain log_annulus(const Matrix& alpha_rows, const Vector& lows,
                                const Vector& hi_abs);

}  // namespace csage
