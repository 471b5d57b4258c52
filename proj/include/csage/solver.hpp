#pragma once

#include <string>

#include "csage/model.hpp"
#include "csage/types.hpp"

namespace csage {

struct SolveSettings {
  int max_iters = 250000;
  double eps_feas = 1e-8;     // absolute/relative feasibility tolerance
  double eps_gap = 1e-8;      // duality-gap tolerance
  double eps_infeas = 1e-10;  // infeasibility certificate tolerance
  bool scaling = true;        // diagonal (Ruiz) equilibration
  int ruiz_iters = 12;
  double alpha = 1.5;         // over-relaxation
  int aa_memory = 10;         // 0 disables Anderson acceleration
  int check_every = 25;
  double time_limit_s = 0.0;  // 0 = unlimited
  bool verbose = false;
};

enum class SolveStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  Inaccurate,
  Failed,
};

std::string to_string(SolveStatus s);

struct ResidualReport {
  double prim_res = 0.0;   // ||Ax + s - b|| / (1 + ||b||)
  double dual_res = 0.0;   // ||A'y + c|| / (1 + ||c||)
  double gap = 0.0;        // |c'x + b'y| / (1 + |c'x| + |b'y|)
  double cone_dist_s = 0.0;
  double cone_dist_y = 0.0;
  double max() const;
};

struct Solution {
  SolveStatus status = SolveStatus::Failed;
  Vector x, y, s;
  double pobj = 0.0;  // c'x + offset (min form)
  double dobj = 0.0;  // -b'y + offset (min form)
  ResidualReport residuals;
  int iters = 0;
  double seconds = 0.0;

  // Objective in the caller's orientation.
  double value(const ConicProgram& prog) const {
    return prog.maximize ? -pobj : pobj;
  }
  double dual_value(const ConicProgram& prog) const {
    return prog.maximize ? -dobj : dobj;
  }
  bool usable() const {
    return status == SolveStatus::Optimal || status == SolveStatus::Inaccurate;
  }
};

Solution solve(const ConicProgram& prog, const SolveSettings& settings = {});

// Residuals recomputed from raw problem data, independent of solver state.
ResidualReport residuals(const ConicProgram& prog, const Vector& x,
                         const Vector& y, const Vector& s);

// Mechanical conic dual: min b'y s.t. A'y + c = 0, y in K^dagger, stated
// again in standard form. Its optimal value is the negative of the
// primal optimal value.
ConicProgram conic_dual(const ConicProgram& prog);

}  // namespace csage
