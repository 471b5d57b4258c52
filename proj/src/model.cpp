#include "csage/model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace csage {

using nlohmann::json;

Index ConeSpec::dim() const {
  Index d = 0;
  for (const auto& f : factors) d += f.dim;
  return d;
}

Index ConeSpec::exp_count() const {
  Index k = 0;
  for (const auto& f : factors)
    if (f.kind == ConeKind::Exp) ++k;
  return k;
}

Vector ConicProgram::extract(const Vector& x, const std::string& name) const {
  const auto it = vars.find(name);
  if (it == vars.end()) throw ValueError("no variable named " + name);
  return x.segment(it->second.offset, it->second.size);
}

LinExpr LinExpr::var(Index col, double coeff) {
  LinExpr e;
  e.terms_.emplace_back(col, coeff);
  return e;
}

LinExpr& LinExpr::add(Index col, double coeff) {
  if (coeff != 0.0) terms_.emplace_back(col, coeff);
  return *this;
}

LinExpr& LinExpr::add_constant(double v) {
  constant_ += v;
  return *this;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr e = *this;
  e.constant_ += o.constant_;
  e.terms_.insert(e.terms_.end(), o.terms_.begin(), o.terms_.end());
  return e;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + o * -1.0; }

LinExpr LinExpr::operator*(double a) const {
  LinExpr e;
  e.constant_ = constant_ * a;
  e.terms_.reserve(terms_.size());
  for (const auto& [col, coeff] : terms_) e.terms_.emplace_back(col, coeff * a);
  return e;
}

LinExpr VarVec::operator[](Index i) const {
  if (i < 0 || i >= span_.size) throw ValueError("VarVec: index out of range");
  return LinExpr::var(span_.offset + i);
}

VarVec Model::add_vars(const std::string& name, Index count) {
  if (vars_.count(name)) throw ValueError("duplicate variable name " + name);
  VarSpan span{num_vars_, count};
  vars_[name] = span;
  num_vars_ += count;
  return VarVec(span.offset, span.size);
}

void Model::minimize(const LinExpr& obj) {
  objective_ = obj;
  maximize_ = false;
}

void Model::maximize(const LinExpr& obj) {
  objective_ = obj * -1.0;
  maximize_ = true;
}

// Row semantics: the value of e must land in the current cone factor.
// Standard form wants s = b - A x, so b_row = e.constant and the matrix
// entries are the negated coefficients.
void Model::push_row(const LinExpr& e) {
  const Index r = static_cast<Index>(row_b_.size());
  row_b_.push_back(e.constant());
  for (const auto& [col, coeff] : e.terms())
    trips_.emplace_back(static_cast<int>(r), static_cast<int>(col), -coeff);
}

void Model::push_factor(ConeKind kind, Index dim) {
  // Merge with the previous factor when both are Zero or both Nonneg.
  if (!factors_.empty() &&
      (kind == ConeKind::Zero || kind == ConeKind::Nonneg) &&
      factors_.back().kind == kind) {
    factors_.back().dim += dim;
    return;
  }
  factors_.push_back({kind, dim});
}

void Model::add_eq(const LinExpr& e) {
  push_row(e);
  push_factor(ConeKind::Zero, 1);
}

void Model::add_nonneg(const LinExpr& e) {
  push_row(e);
  push_factor(ConeKind::Nonneg, 1);
}

void Model::add_soc(const std::vector<LinExpr>& te) {
  if (te.size() < 2) throw ValueError("add_soc: need at least two rows");
  for (const auto& e : te) push_row(e);
  push_factor(ConeKind::Soc, static_cast<Index>(te.size()));
}

void Model::add_exp(const LinExpr& u, const LinExpr& w, const LinExpr& z) {
  push_row(u);
  push_row(w);
  push_row(z);
  push_factor(ConeKind::Exp, 3);
  ++exp_triples_;
}

void Model::add_exp_dual(const LinExpr& u, const LinExpr& v,
                         const LinExpr& w) {
  add_exp(u - v, -u, w);
}

ConicProgram Model::compile() const {
  ConicProgram prog;
  const Index m = static_cast<Index>(row_b_.size());
  prog.A.resize(m, num_vars_);
  prog.A.setFromTriplets(trips_.begin(), trips_.end());
  prog.A.makeCompressed();
  prog.b = Eigen::Map<const Vector>(row_b_.data(), m);
  prog.c = Vector::Zero(num_vars_);
  for (const auto& [col, coeff] : objective_.terms()) prog.c[col] += coeff;
  prog.obj_offset = objective_.constant();
  prog.cones.factors = factors_;
  prog.vars = vars_;
  prog.maximize = maximize_;
  return prog;
}

namespace {

const char* kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Zero:
      return "zero";
    case ConeKind::Nonneg:
      return "nonneg";
    case ConeKind::Soc:
      return "soc";
    case ConeKind::Exp:
      return "exp";
  }
  return "?";
}

ConeKind kind_from_name(const std::string& s) {
  if (s == "zero") return ConeKind::Zero;
  if (s == "nonneg") return ConeKind::Nonneg;
  if (s == "soc") return ConeKind::Soc;
  if (s == "exp") return ConeKind::Exp;
  throw ValueError("unknown cone kind: " + s);
}

}  // namespace

std::string dump_conic_json(const ConicProgram& prog) {
  json j;
  j["num_vars"] = prog.num_vars();
  j["num_rows"] = prog.num_rows();
  j["objective"] = std::vector<double>(prog.c.data(),
                                       prog.c.data() + prog.c.size());
  j["objective_offset"] = prog.obj_offset;
  j["maximize"] = prog.maximize;
  j["rhs"] = std::vector<double>(prog.b.data(), prog.b.data() + prog.b.size());
  json trips = json::array();
  for (int k = 0; k < prog.A.outerSize(); ++k) {
    for (SpMat::InnerIterator it(prog.A, k); it; ++it) {
      trips.push_back({it.row(), it.col(), it.value()});
    }
  }
  j["A_triplets"] = std::move(trips);
  json cones = json::array();
  for (const auto& f : prog.cones.factors)
    cones.push_back({{"kind", kind_name(f.kind)}, {"dim", f.dim}});
  j["cones"] = std::move(cones);
  json vars = json::object();
  for (const auto& [name, span] : prog.vars)
    vars[name] = {{"offset", span.offset}, {"size", span.size}};
  j["vars"] = std::move(vars);
  return j.dump(2);
}

ConicProgram load_conic_json(const std::string& text) {
  const json j = json::parse(text);
  ConicProgram prog;
  const Index n = j.at("num_vars").get<Index>();
  const Index m = j.at("num_rows").get<Index>();
  const auto cvec = j.at("objective").get<std::vector<double>>();
  const auto bvec = j.at("rhs").get<std::vector<double>>();
  if (static_cast<Index>(cvec.size()) != n ||
      static_cast<Index>(bvec.size()) != m)
    throw ValueError("conic json: inconsistent dimensions");
  prog.c = Eigen::Map<const Vector>(cvec.data(), n);
  prog.b = Eigen::Map<const Vector>(bvec.data(), m);
  prog.obj_offset = j.value("objective_offset", 0.0);
  prog.maximize = j.value("maximize", false);
  std::vector<Triplet> trips;
  for (const auto& t : j.at("A_triplets")) {
    trips.emplace_back(t.at(0).get<int>(), t.at(1).get<int>(),
                       t.at(2).get<double>());
  }
  prog.A.resize(m, n);
  prog.A.setFromTriplets(trips.begin(), trips.end());
  prog.A.makeCompressed();
  for (const auto& f : j.at("cones")) {
    prog.cones.factors.push_back(
        {kind_from_name(f.at("kind").get<std::string>()),
         f.at("dim").get<Index>()});
  }
  if (prog.cones.dim() != m) throw ValueError("conic json: cone dims != rows");
  if (j.contains("vars")) {
    for (const auto& [name, span] : j.at("vars").items())
      prog.vars[name] = {span.at("offset").get<Index>(),
                         span.at("size").get<Index>()};
  }
  return prog;
}

}  // namespace csage
