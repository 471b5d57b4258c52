#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "csage/types.hpp"

namespace csage {

enum class ConeKind { Zero, Nonneg, Soc, Exp };

// Exp factors have dimension 3 with orientation (u, w, z): w > 0 and
// w * e^{u/w} <= z, plus closure.
struct ConeFactor {
  ConeKind kind;
  Index dim;
};

struct ConeSpec {
  std::vector<ConeFactor> factors;
  Index dim() const;
  Index exp_count() const;
};

struct VarSpan {
  Index offset = 0;
  Index size = 0;
};

// Standard form produced by all compilers:
//   minimize c'x  subject to  s = b - A x,  s in K.
struct ConicProgram {
  SpMat A;
  Vector b;
  Vector c;
  ConeSpec cones;
  std::map<std::string, VarSpan> vars;
  double obj_offset = 0.0;
  // True when the objective is stated as a maximization of -c'x; only
  // affects reporting, never the solve.
  bool maximize = false;

  Index num_vars() const { return A.cols(); }
  Index num_rows() const { return A.rows(); }
  Vector extract(const Vector& x, const std::string& name) const;
};

// Affine scalar expression: constant + sum coeff_k * x_{col_k}.
class LinExpr {
 public:
  LinExpr() = default;
  /*implicit*/ LinExpr(double constant) : constant_(constant) {}

  static LinExpr var(Index col, double coeff = 1.0);

  LinExpr& add(Index col, double coeff);
  LinExpr& add_constant(double v);

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr operator*(double a) const;
  LinExpr operator-() const { return *this * -1.0; }

  double constant() const { return constant_; }
  const std::vector<std::pair<Index, double>>& terms() const { return terms_; }

 private:
  double constant_ = 0.0;
  std::vector<std::pair<Index, double>> terms_;
};

inline LinExpr operator*(double a, const LinExpr& e) { return e * a; }

// Named span of model variables.
class VarVec {
 public:
  VarVec() = default;
  VarVec(Index offset, Index size) : span_{offset, size} {}
  LinExpr operator[](Index i) const;
  Index size() const { return span_.size; }
  Index offset() const { return span_.offset; }

 private:
  VarSpan span_;
};

// Incremental builder for ConicProgram. Constraints are stated on affine
// expressions; rows are emitted in call order.
class Model {
 public:
  VarVec add_vars(const std::string& name, Index count);

  void minimize(const LinExpr& obj);
  void maximize(const LinExpr& obj);

  void add_eq(const LinExpr& e);                        // e == 0
  void add_nonneg(const LinExpr& e);                    // e >= 0
  void add_soc(const std::vector<LinExpr>& te);         // (t, x...) in SOC
  void add_exp(const LinExpr& u, const LinExpr& w, const LinExpr& z);
  // Membership of an affine vector in the dual of an exponential cone,
  // encoded through the linear bijection (u,v,w) in Kexp* iff
  // (u - v, -u, w) in Kexp.
  void add_exp_dual(const LinExpr& u, const LinExpr& v, const LinExpr& w);

  Index exp_rows_emitted() const { return exp_triples_ * 3; }
  Index exp_triples() const { return exp_triples_; }
  Index num_vars() const { return num_vars_; }
  Index num_rows() const { return static_cast<Index>(row_b_.size()); }

  ConicProgram compile() const;

 private:
  void push_row(const LinExpr& e);
  void push_factor(ConeKind kind, Index dim);

  Index num_vars_ = 0;
  std::map<std::string, VarSpan> vars_;
  std::vector<Triplet> trips_;
  std::vector<double> row_b_;
  std::vector<ConeFactor> factors_;
  LinExpr objective_;
  bool maximize_ = false;
  Index exp_triples_ = 0;
};

// JSON interchange (documented standard-form dump).
std::string dump_conic_json(const ConicProgram& prog);
ConicProgram load_conic_json(const std::string& text);

}  // namespace csage
