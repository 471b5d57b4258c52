#include "csage/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "csage/projections.hpp"

namespace csage {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Row scales must be uniform inside soc/exp factors so that D K = K.
void unify_factor_scales(const ConeSpec& cones, Vector& d) {
  Index off = 0;
  for (const auto& f : cones.factors) {
    if (f.kind == ConeKind::Soc || f.kind == ConeKind::Exp) {
      double g = 0.0;
      for (Index i = 0; i < f.dim; ++i) g += std::log(d[off + i]);
      g = std::exp(g / static_cast<double>(f.dim));
      d.segment(off, f.dim).setConstant(g);
    }
    off += f.dim;
  }
}

struct Scaling {
  Vector d, e;       // row and column scales
  double rho_b = 1.0, rho_c = 1.0;
};

Scaling equilibrate(SpMat& A, Vector& b, Vector& c, const ConeSpec& cones,
                    int iters) {
  const Index m = A.rows(), n = A.cols();
  Scaling sc;
  sc.d = Vector::Ones(m);
  sc.e = Vector::Ones(n);
  for (int t = 0; t < iters; ++t) {
    Vector row_norm = Vector::Zero(m), col_norm = Vector::Zero(n);
    for (int k = 0; k < A.outerSize(); ++k) {
      for (SpMat::InnerIterator it(A, k); it; ++it) {
        const double a = std::abs(it.value());
        row_norm[it.row()] = std::max(row_norm[it.row()], a);
        col_norm[it.col()] = std::max(col_norm[it.col()], a);
      }
    }
    Vector dr(m), dc(n);
    for (Index i = 0; i < m; ++i)
      dr[i] = row_norm[i] > 0 ? 1.0 / std::sqrt(row_norm[i]) : 1.0;
    for (Index j = 0; j < n; ++j)
      dc[j] = col_norm[j] > 0 ? 1.0 / std::sqrt(col_norm[j]) : 1.0;
    unify_factor_scales(cones, dr);
    for (int k = 0; k < A.outerSize(); ++k) {
      for (SpMat::InnerIterator it(A, k); it; ++it) {
        it.valueRef() *= dr[it.row()] * dc[it.col()];
      }
    }
    sc.d.array() *= dr.array();
    sc.e.array() *= dc.array();
  }
  b.array() *= sc.d.array();
  c.array() *= sc.e.array();
  const double nb = b.norm(), nc = c.norm();
  sc.rho_b = 1.0 / std::max(nb, 1e-6);
  sc.rho_c = 1.0 / std::max(nc, 1e-6);
  b *= sc.rho_b;
  c *= sc.rho_c;
  return sc;
}

// Anderson acceleration (type-II) on the DR fixed-point iterate.
class Anderson {
 public:
  Anderson(Index dim, int memory) : dim_(dim), mem_(memory) {
    if (mem_ > 0) {
      dz_.resize(dim_, mem_);
      dg_.resize(dim_, mem_);
      out_.resize(dim_);
    }
  }

  void reset() {
    count_ = 0;
    have_prev_ = false;
  }

  // Feed the current (z, g) pair; returns true and fills `next` with the
  // accelerated iterate once history is available.
  bool propose(const Vector& z, const Vector& g, Vector& next) {
    if (mem_ == 0) return false;
    if (have_prev_) {
      const int slot = count_ % mem_;
      dz_.col(slot) = z - z_prev_;
      dg_.col(slot) = g - g_prev_;
      ++count_;
    }
    z_prev_ = z;
    g_prev_ = g;
    have_prev_ = true;
    const int h = std::min(count_, mem_);
    if (h == 0) return false;
    Matrix M(h, h);
    Vector rhs(h);
    for (int i = 0; i < h; ++i) {
      const int si = (count_ - 1 - i) % mem_;
      rhs[i] = dg_.col(si).dot(g);
      for (int j = 0; j <= i; ++j) {
        const int sj = (count_ - 1 - j) % mem_;
        M(i, j) = dg_.col(si).dot(dg_.col(sj));
        M(j, i) = M(i, j);
      }
    }
    M.diagonal().array() += 1e-12 * (1.0 + M.trace());
    const Vector gamma = M.ldlt().solve(rhs);
    next = z + g;
    for (int i = 0; i < h; ++i) {
      const int si = (count_ - 1 - i) % mem_;
      next.noalias() -= gamma[i] * (dz_.col(si) + dg_.col(si));
    }
    return true;
  }

 private:
  Index dim_;
  int mem_;
  Matrix dz_, dg_;
  Vector z_prev_, g_prev_, out_;
  int count_ = 0;
  bool have_prev_ = false;
};

}  // namespace

double ResidualReport::max() const {
  return std::max({prim_res, dual_res, gap});
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::PrimalInfeasible:
      return "primal_infeasible";
    case SolveStatus::DualInfeasible:
      return "dual_infeasible";
    case SolveStatus::Inaccurate:
      return "inaccurate";
    case SolveStatus::Failed:
      return "failed";
  }
  return "?";
}

ResidualReport residuals(const ConicProgram& prog, const Vector& x,
                         const Vector& y, const Vector& s) {
  ResidualReport r;
  r.prim_res = (prog.A * x + s - prog.b).norm() / (1.0 + prog.b.norm());
  r.dual_res =
      (prog.A.transpose() * y + prog.c).norm() / (1.0 + prog.c.norm());
  const double px = prog.c.dot(x), dy = prog.b.dot(y);
  r.gap = std::abs(px + dy) / (1.0 + std::abs(px) + std::abs(dy));
  r.cone_dist_s = cone_distance(prog.cones, s);
  r.cone_dist_y = dual_cone_distance(prog.cones, y);
  return r;
}

Solution solve(const ConicProgram& prog, const SolveSettings& settings) {
  const auto t0 = Clock::now();
  Solution sol;
  const Index n = prog.num_vars();
  const Index m = prog.num_rows();
  if (prog.cones.dim() != m) throw ValueError("solve: cone dims != rows");

  SpMat A = prog.A;
  Vector b = prog.b, c = prog.c;
  Scaling sc;
  if (settings.scaling) {
    sc = equilibrate(A, b, c, prog.cones, settings.ruiz_iters);
  } else {
    sc.d = Vector::Ones(m);
    sc.e = Vector::Ones(n);
  }

  // KKT matrix [[I, A'], [A, -I]]; quasidefinite, factored once.
  SpMat K(n + m, n + m);
  {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(A.nonZeros()) * 2 + n + m);
    for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
    for (Index i = 0; i < m; ++i) trips.emplace_back(n + i, n + i, -1.0);
    for (int k = 0; k < A.outerSize(); ++k) {
      for (SpMat::InnerIterator it(A, k); it; ++it) {
        trips.emplace_back(n + it.row(), it.col(), it.value());
        trips.emplace_back(it.col(), n + it.row(), it.value());
      }
    }
    K.setFromTriplets(trips.begin(), trips.end());
    K.makeCompressed();
  }
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.compute(K);
  if (ldlt.info() != Eigen::Success) {
    sol.status = SolveStatus::Failed;
    return sol;
  }

  const Index full = n + m + 1;
  auto solve_M = [&](const Vector& w) {
    // Solves [[I, A'], [-A, I]] zeta = w via the symmetrized system.
    Vector rhs(n + m);
    rhs.head(n) = w.head(n);
    rhs.tail(m) = -w.tail(m);
    return Vector(ldlt.solve(rhs));
  };

  Vector g_tilde(n + m);
  g_tilde.head(n) = c;
  g_tilde.tail(m) = b;
  const Vector g_hat = solve_M(g_tilde);
  const double denom_tau = 1.0 + g_tilde.dot(g_hat);

  auto apply_inv_IQ = [&](const Vector& w, Vector& out) {
    const Vector p = solve_M(w.head(n + m));
    const double tau = (w[n + m] + g_tilde.dot(p)) / denom_tau;
    out.head(n + m) = p - tau * g_hat;
    out[n + m] = tau;
  };

  Vector z = Vector::Zero(full);
  z[n + m] = 1.0;
  Vector u_t(full), u(full), g(full), v(full);

  Anderson aa(full, settings.aa_memory);
  bool last_was_aa = false;
  Vector plain_backup;
  double r_prev = std::numeric_limits<double>::infinity();
  int cooldown = 0;

  Vector best_x, best_y, best_s;
  double best_metric = std::numeric_limits<double>::infinity();
  ResidualReport best_rep;
  bool have_best = false;

  const double tiny = 1e-14;
  int iter = 0;
  SolveStatus status = SolveStatus::Inaccurate;

  auto extract_and_check = [&](bool force_record) -> bool {
    const double tau = u[n + m];
    if (tau > tiny * std::max(1.0, u.norm())) {
      // Candidate solution: unscale and test.
      Vector xbar = u.head(n) / tau;
      Vector ybar = u.segment(n, m) / tau;
      Vector sbar = v.segment(n, m) / tau;
      Vector x = sc.e.asDiagonal() * xbar / sc.rho_b;
      Vector y = sc.d.asDiagonal() * ybar / sc.rho_c;
      Vector s = (sbar.array() / sc.d.array()).matrix() / sc.rho_b;
      ResidualReport rep = residuals(prog, x, y, s);
      const double metric = rep.max();
      if (force_record || metric < best_metric) {
        best_metric = metric;
        best_x = std::move(x);
        best_y = std::move(y);
        best_s = std::move(s);
        best_rep = rep;
        have_best = true;
      }
      if (rep.prim_res <= settings.eps_feas &&
          rep.dual_res <= settings.eps_feas && rep.gap <= settings.eps_gap) {
        status = SolveStatus::Optimal;
        return true;
      }
    }
    // Infeasibility certificates from the homogeneous iterate.
    Vector xu = sc.e.asDiagonal() * u.head(n);
    Vector yu = sc.d.asDiagonal() * u.segment(n, m);
    Vector su = (v.segment(n, m).array() / sc.d.array()).matrix();
    const double ctx = prog.c.dot(xu);
    const double bty = prog.b.dot(yu);
    if (ctx < -tiny) {
      const double res =
          (prog.A * xu + su).norm() * std::max(prog.c.norm(), 1.0) / (-ctx);
      if (res <= settings.eps_infeas) {
        status = SolveStatus::DualInfeasible;
        best_x = xu / (-ctx);
        best_s = su / (-ctx);
        best_y = Vector::Zero(m);
        have_best = true;
        return true;
      }
    }
    if (bty < -tiny) {
      const double res = (prog.A.transpose() * yu).norm() *
                         std::max(prog.b.norm(), 1.0) / (-bty);
      if (res <= settings.eps_infeas) {
        status = SolveStatus::PrimalInfeasible;
        best_y = yu / (-bty);
        best_x = Vector::Zero(n);
        best_s = Vector::Zero(m);
        have_best = true;
        return true;
      }
    }
    return false;
  };

  for (iter = 0; iter < settings.max_iters; ++iter) {
    apply_inv_IQ(z, u_t);
    u = 2.0 * u_t - z;
    project_dual_cone(prog.cones, u.segment(n, m));
    u[n + m] = std::max(u[n + m], 0.0);
    // x-block of C is free: u.head(n) stays as is.
    g = settings.alpha * (u - u_t);
    const double r = g.norm();

    // Safeguard: roll back a bad Anderson step.
    if (last_was_aa && r > 1.1 * r_prev + tiny) {
      z = plain_backup;
      aa.reset();
      cooldown = 5;
      last_was_aa = false;
      continue;
    }
    r_prev = r;
    v = z + u - 2.0 * u_t;

    if (iter % settings.check_every == 0) {
      if (extract_and_check(false)) break;
      if (settings.time_limit_s > 0 &&
          seconds_since(t0) > settings.time_limit_s)
        break;
    }

    const Vector plain = z + g;
    Vector accel;
    bool have_accel = false;
    if (cooldown == 0) {
      have_accel = aa.propose(z, g, accel);
    } else {
      --cooldown;
    }
    if (have_accel) {
      plain_backup = plain;
      z = std::move(accel);
      last_was_aa = true;
    } else {
      z = plain;
      last_was_aa = false;
    }
  }

  if (status == SolveStatus::Optimal ||
      status == SolveStatus::PrimalInfeasible ||
      status == SolveStatus::DualInfeasible) {
    // done
  } else if (have_best) {
    status = SolveStatus::Inaccurate;
  } else {
    status = SolveStatus::Failed;
  }

  sol.status = status;
  sol.iters = iter;
  sol.seconds = seconds_since(t0);
  if (have_best) {
    sol.x = best_x;
    sol.y = best_y;
    sol.s = best_s;
    sol.residuals = (status == SolveStatus::PrimalInfeasible ||
                     status == SolveStatus::DualInfeasible)
                        ? ResidualReport{}
                        : best_rep;
    sol.pobj = prog.c.dot(sol.x) + prog.obj_offset;
    sol.dobj = -prog.b.dot(sol.y) + prog.obj_offset;
  } else {
    sol.x = Vector::Zero(n);
    sol.y = Vector::Zero(m);
    sol.s = Vector::Zero(m);
  }
  if (settings.verbose) {
    std::printf("[solver] status=%s iters=%d time=%.3fs pres=%.2e dres=%.2e gap=%.2e\n",
                to_string(sol.status).c_str(), sol.iters, sol.seconds,
                sol.residuals.prim_res, sol.residuals.dual_res,
                sol.residuals.gap);
  }
  return sol;
}

ConicProgram conic_dual(const ConicProgram& prog) {
  Model md;
  const Index m = prog.num_rows();
  VarVec y = md.add_vars("y", m);

  LinExpr obj;
  for (Index i = 0; i < m; ++i)
    if (prog.b[i] != 0.0) obj.add(y.offset() + i, prog.b[i]);
  md.minimize(obj);

  // A'y + c = 0, one row per primal variable. A is column-major, so
  // column j enumerates exactly the terms of (A'y)_j.
  for (Index j = 0; j < prog.num_vars(); ++j) {
    LinExpr e(prog.c[j]);
    for (SpMat::InnerIterator it(prog.A, j); it; ++it)
      e.add(y.offset() + it.row(), it.value());
    md.add_eq(e);
  }

  // y in K^dagger, factor by factor.
  Index off = 0;
  for (const auto& f : prog.cones.factors) {
    switch (f.kind) {
      case ConeKind::Zero:
        break;
      case ConeKind::Nonneg:
        for (Index i = 0; i < f.dim; ++i) md.add_nonneg(y[off + i]);
        break;
      case ConeKind::Soc: {
        std::vector<LinExpr> rows;
        for (Index i = 0; i < f.dim; ++i) rows.push_back(y[off + i]);
        md.add_soc(rows);
        break;
      }
      case ConeKind::Exp:
        md.add_exp_dual(y[off], y[off + 1], y[off + 2]);
        break;
    }
    off += f.dim;
  }
  return md.compile();
}

}  // namespace csage
