#include "csage/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Safe sign evaluation of
//   h(beta) = ((beta-1)r + s) e^beta - (r - beta s) e^{-beta}
//             - (beta^2 - beta + 1) t,
// rescaled by e^{-|beta|} to avoid overflow.
double h_scaled(double beta, double r, double s, double t) {
  const double p1 = (beta - 1.0) * r + s;
  const double p2 = r - beta * s;
  const double q = (beta * beta - beta + 1.0) * t;
  if (beta >= 0.0) {
    const double em = std::exp(-beta);
    return p1 - p2 * em * em - q * em;
  }
  const double ep = std::exp(beta);
  return p1 * ep * ep - p2 - q * ep;
}

double hprime_scaled(double beta, double r, double s, double t) {
  // Derivative of the scaled h; only used for Newton steps, so any
  // positive rescaling is acceptable as long as it matches h_scaled's
  // branch. Differentiate the scaled expressions directly.
  if (beta >= 0.0) {
    const double em = std::exp(-beta);
    // d/db [p1 - p2 em^2 - q em]
    const double dp1 = r;
    const double dp2 = -s;
    const double dq = (2.0 * beta - 1.0) * t;
    return dp1 - (dp2 - 2.0 * (r - beta * s)) * em * em - (dq - (beta * beta - beta + 1.0) * t) * em;
  }
  const double ep = std::exp(beta);
  const double dp1 = r;
  const double dp2 = -s;
  const double dq = (2.0 * beta - 1.0) * t;
  return (dp1 + 2.0 * ((beta - 1.0) * r + s)) * ep * ep - dp2 - (dq + (beta * beta - beta + 1.0) * t) * ep;
}

}  // namespace

bool in_exp_cone(const Eigen::Vector3d& p, double tol) {
  const double x = p[0], y = p[1], z = p[2];
  if (y > 0.0) {
    if (z < -tol) return false;
    const double q = x / y;
    if (q < -745.0) return true;  // y e^{x/y} underflows to 0 <= z + tol
    if (q <= 709.0 && y * std::exp(q) <= z + tol) return true;
    return z > 0.0 && x <= y * std::log(z / y) + tol;
  }
  if (y >= -tol) return x <= tol && z >= -tol;
  return false;
}

bool in_exp_dual_cone(const Eigen::Vector3d& p, double tol) {
  const double u = p[0], v = p[1], w = p[2];
  constexpr double e = 2.718281828459045235;
  if (u < 0.0) {
    if (w < -tol) return false;
    const double q = v / u;
    if (q < -745.0) return true;  // -u e^{v/u} underflows to 0 <= e w + tol
    if (q <= 709.0 && -u * std::exp(q) <= e * w + tol) return true;
    // log form: log(-u) + v/u <= 1 + log(w)
    return w > 0.0 && std::log(-u) + q <= 1.0 + std::log(w) + tol;
  }
  if (u <= tol) return v >= -tol && w >= -tol;
  return false;
}

Eigen::Vector3d project_exp_cone(const Eigen::Vector3d& p) {
  const double r = p[0], s = p[1], t = p[2];
  const double scale = std::max({1.0, std::abs(r), std::abs(s), std::abs(t)});
  const double mem_tol = 1e-11 * scale;

  if (in_exp_cone(p, mem_tol)) {
    Eigen::Vector3d q = p;
    q[1] = std::max(q[1], 0.0);
    q[2] = std::max(q[2], 0.0);
    if (q[1] == 0.0) q[0] = std::min(q[0], 0.0);
    return q;
  }
  if (in_exp_dual_cone(Eigen::Vector3d(-r, -s, -t), mem_tol)) {
    return Eigen::Vector3d::Zero();
  }
  if (r <= 0.0 && s <= 0.0) {
    return Eigen::Vector3d(r, 0.0, std::max(t, 0.0));
  }

  // Main case: solve h(beta) = 0 on the interval where both
  //   y(beta) = (s + (beta-1) r) / (beta^2 - beta + 1) > 0
  //   R(beta) = (r - beta s) / (beta^2 - beta + 1) > 0
  // hold. The interval endpoints are linear-constraint boundaries.
  double lo = -kInf, hi = kInf;
  if (r > 0.0) {
    lo = std::max(lo, 1.0 - s / r);
  } else if (r < 0.0) {
    hi = std::min(hi, 1.0 - s / r);
  }
  if (s > 0.0) {
    hi = std::min(hi, r / s);
  } else if (s < 0.0) {
    lo = std::max(lo, r / s);
  }

  auto h = [&](double beta) { return h_scaled(beta, r, s, t); };

  // Bracket the root inside [lo, hi]; the root can sit exactly on a
  // boundary (projection of a boundary point has multiplier zero), so
  // finite endpoints are evaluated exactly.
  double a, b;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    a = lo;
    b = hi;
  } else if (std::isfinite(lo)) {
    a = lo;
    double step = std::max(1.0, std::abs(lo));
    b = lo + step;
    const double ha0 = h(a);
    while (h(b) * ha0 > 0.0 && step < 1e12) {
      step *= 2.0;
      b = lo + step;
    }
  } else {
    b = hi;
    double step = std::max(1.0, std::abs(hi));
    a = hi - step;
    const double hb0 = h(b);
    while (h(a) * hb0 > 0.0 && step < 1e12) {
      step *= 2.0;
      a = hi - step;
    }
  }
  double ha = h(a), hb = h(b);
  if (ha * hb > 0.0) {
    // Dense scan fallback; the theory guarantees a sign change.
    const int grid = 512;
    double prev = a, hprev = ha;
    bool found = false;
    for (int i = 1; i <= grid; ++i) {
      const double xg = a + (b - a) * (static_cast<double>(i) / grid);
      const double hx = h(xg);
      if (hprev * hx <= 0.0) {
        b = xg;
        hb = hx;
        a = prev;
        ha = hprev;
        found = true;
        break;
      }
      prev = xg;
      hprev = hx;
    }
    if (!found) {
      // Numerically degenerate; pick the best boundary candidate seen.
      Eigen::Vector3d best(std::min(r, 0.0), 0.0, std::max(t, 0.0));
      double best_d = (best - p).squaredNorm();
      for (int i = 0; i <= grid; ++i) {
        const double beta = a + (b - a) * (static_cast<double>(i) / grid);
        const double den = beta * beta - beta + 1.0;
        const double yy = std::max((s + (beta - 1.0) * r) / den, 0.0);
        const Eigen::Vector3d cand(beta * yy, yy, yy * std::exp(beta));
        const double d = (cand - p).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = cand;
        }
      }
      return best;
    }
  }

  // Safeguarded Newton within [a, b].
  double beta = 0.5 * (a + b);
  if (!(beta > a && beta < b)) beta = a + 0.5 * (b - a);
  for (int it = 0; it < 200; ++it) {
    const double hx = h(beta);
    if (hx == 0.0) break;
    if ((hx < 0.0) == (ha < 0.0)) {
      a = beta;
      ha = hx;
    } else {
      b = beta;
      hb = hx;
    }
    const double dh = hprime_scaled(beta, r, s, t);
    double next = beta - hx / dh;
    if (!(next > a && next < b) || !std::isfinite(next)) {
      next = 0.5 * (a + b);
    }
    const double tol = 1e-16 * std::max(1.0, std::abs(beta));
    if (std::abs(next - beta) <= tol || (b - a) <= tol) {
      beta = next;
      break;
    }
    beta = next;
  }

  const double denom = beta * beta - beta + 1.0;
  const double y = std::max((s + (beta - 1.0) * r) / denom, 0.0);
  // z = y e^beta = t + mu at the root; evaluate whichever side avoids
  // overflowing the exponential.
  const double z = (beta <= 0.0)
                       ? y * std::exp(beta)
                       : t + std::exp(-beta) * (r - beta * s) / denom;
  Eigen::Vector3d vp(beta * y, y, std::max(z, 0.0));
  // Extreme roots can be artifacts of exp over/underflow in h; in those
  // regimes the double-precision projection sits on the y = 0 face.
  const Eigen::Vector3d face(std::min(r, 0.0), 0.0, std::max(t, 0.0));
  if (!vp.allFinite() || !in_exp_cone(vp, 1e-9 * scale) ||
      (face - p).squaredNorm() < (vp - p).squaredNorm()) {
    return face;
  }
  return vp;
}

Eigen::Vector3d project_exp_dual_cone(const Eigen::Vector3d& p) {
  // Moreau: Pi_{K*}(p) = p + Pi_K(-p).
  return p + project_exp_cone(-p);
}

namespace {

void project_soc(Eigen::Ref<Vector> blk) {
  const Index d = blk.size();
  const double t = blk[0];
  const double nx = blk.tail(d - 1).norm();
  if (nx <= t) return;
  if (nx <= -t) {
    blk.setZero();
    return;
  }
  const double a = 0.5 * (t + nx);
  blk[0] = a;
  blk.tail(d - 1) *= a / nx;
}

}  // namespace

void project_cone(const ConeSpec& cones, Eigen::Ref<Vector> s) {
  Index off = 0;
  for (const auto& f : cones.factors) {
    switch (f.kind) {
      case ConeKind::Zero:
        s.segment(off, f.dim).setZero();
        break;
      case ConeKind::Nonneg:
        s.segment(off, f.dim) = s.segment(off, f.dim).cwiseMax(0.0);
        break;
      case ConeKind::Soc:
        project_soc(s.segment(off, f.dim));
        break;
      case ConeKind::Exp: {
        Eigen::Vector3d blk = s.segment<3>(off);
        s.segment<3>(off) = project_exp_cone(blk);
        break;
      }
    }
    off += f.dim;
  }
}

void project_dual_cone(const ConeSpec& cones, Eigen::Ref<Vector> y) {
  Index off = 0;
  for (const auto& f : cones.factors) {
    switch (f.kind) {
      case ConeKind::Zero:
        break;  // dual of {0} is free
      case ConeKind::Nonneg:
        y.segment(off, f.dim) = y.segment(off, f.dim).cwiseMax(0.0);
        break;
      case ConeKind::Soc:
        project_soc(y.segment(off, f.dim));
        break;
      case ConeKind::Exp: {
        Eigen::Vector3d blk = y.segment<3>(off);
        y.segment<3>(off) = project_exp_dual_cone(blk);
        break;
      }
    }
    off += f.dim;
  }
}

double cone_distance(const ConeSpec& cones, const Vector& s) {
  Vector proj = s;
  project_cone(cones, proj);
  return (proj - s).norm();
}

double dual_cone_distance(const ConeSpec& cones, const Vector& y) {
  Vector proj = y;
  project_dual_cone(cones, proj);
  return (proj - y).norm();
}

}  // namespace csage
