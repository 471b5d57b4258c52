#include <doctest.h>

#include <cmath>
#include <random>

#include "csage/model.hpp"
#include "csage/projections.hpp"
#include "csage/solver.hpp"

using namespace csage;

namespace {

// Distance minimization over the cone boundary by a fine 2-d sweep of
// (beta, y): boundary points are (beta*y, y, y*e^beta).
double brute_force_exp_distance(const Eigen::Vector3d& p) {
  double best = p.squaredNorm();  // distance to the origin
  // y = 0 face: (x, 0, z), x <= 0, z >= 0
  {
    const double x = std::min(p[0], 0.0);
    const double z = std::max(p[2], 0.0);
    best = std::min(best, (Eigen::Vector3d(x, 0, z) - p).squaredNorm());
  }
  for (int i = 0; i <= 4000; ++i) {
    const double beta = -20.0 + 40.0 * i / 4000.0;
    double lo = 0.0, hi = 1e3;
    auto dist = [&](double y) {
      return (Eigen::Vector3d(beta * y, y, y * std::exp(beta)) - p)
          .squaredNorm();
    };
    for (int t = 0; t < 200; ++t) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (dist(m1) < dist(m2))
        hi = m2;
      else
        lo = m1;
    }
    best = std::min(best, dist(0.5 * (lo + hi)));
  }
  return std::sqrt(best);
}

}  // namespace

TEST_CASE("exp cone projection: points already in the cone are fixed") {
  Eigen::Vector3d p(0.0, 1.0, 2.0);  // 1*e^0 = 1 <= 2
  CHECK((project_exp_cone(p) - p).norm() == doctest::Approx(0.0).epsilon(1e-14));
  Eigen::Vector3d q(-3.0, 0.0, 5.0);  // boundary face
  CHECK((project_exp_cone(q) - q).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("exp cone projection: polar points project to zero") {
  Eigen::Vector3d p(0.0, 0.0, -1.0);
  CHECK(project_exp_cone(p).norm() == 0.0);
  Eigen::Vector3d q(1.0, -2.0, -3.0);
  // -q = (-1, 2, 3): u<0, -u e^{v/u} = e^{-2} <= 3e.
  CHECK(project_exp_cone(q).norm() == 0.0);
}

TEST_CASE("exp cone projection agrees with dense boundary search") {
  Eigen::Vector3d p(1.0, 1.0, 1.0);
  const Eigen::Vector3d proj = project_exp_cone(p);
  CHECK(in_exp_cone(proj, 1e-9));
  const double d_newton = (proj - p).norm();
  const double d_brute = brute_force_exp_distance(p);
  CHECK(d_newton <= d_brute + 1e-6);
  CHECK(d_newton == doctest::Approx(d_brute).epsilon(1e-4));
}

TEST_CASE("exp cone projection is distance-optimal on random points") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(-1.0, 2.0);
  for (int t = 0; t < 150; ++t) {
    Eigen::Vector3d p(unif(rng), unif(rng), unif(rng));
    p *= std::pow(10.0, mag(rng));
    const Eigen::Vector3d proj = project_exp_cone(p);
    const double d_newton = (proj - p).norm();
    const double d_brute = brute_force_exp_distance(p);
    CHECK(d_newton <= d_brute * (1.0 + 1e-6) + 1e-9);
  }
}

TEST_CASE("exp cone projection: Moreau identity and idempotence") {
  // Moreau decomposition p = Pi_K(p) + d with d in the polar cone and
  // <Pi_K(p), d> = 0 characterizes the projection; assert all three
  // conditions, plus idempotence of the projection map.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(-2.0, 3.0);
  double worst_mem = 0.0, worst_polar = 0.0, worst_orth = 0.0,
         worst_idem = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double scale = std::pow(10.0, mag(rng));
    Eigen::Vector3d p(unif(rng), unif(rng), unif(rng));
    p *= scale;
    const double rel = std::max(1.0, p.norm());
    const Eigen::Vector3d pk = project_exp_cone(p);
    const Eigen::Vector3d d = p - pk;
    if (!in_exp_cone(pk, 1e-9 * rel)) worst_mem = 1.0;
    // d must lie in the polar cone: its distance to K° equals the norm
    // of its projection onto K.
    worst_polar =
        std::max(worst_polar, project_exp_cone(d).norm() / rel);
    worst_orth =
        std::max(worst_orth, std::abs(pk.dot(d)) / std::max(1.0, rel * rel));
    worst_idem = std::max(worst_idem, (project_exp_cone(pk) - pk).norm() /
                                          std::max(1.0, pk.norm()));
  }
  CHECK(worst_mem == 0.0);
  CHECK(worst_polar <= 1e-9);
  CHECK(worst_orth <= 1e-9);
  CHECK(worst_idem <= 1e-10);
}

TEST_CASE("trivial LP: min x s.t. x >= 1") {
  Model md;
  auto x = md.add_vars("x", 1);
  md.minimize(x[0]);
  md.add_nonneg(x[0] - 1.0);
  const ConicProgram prog = md.compile();
  const Solution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.y[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.pobj == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exp cone program: min z s.t. (1,1,z) in Kexp gives e") {
  Model md;
  auto z = md.add_vars("z", 1);
  md.minimize(z[0]);
  md.add_exp(LinExpr(1.0), LinExpr(1.0), z[0]);
  const Solution sol = solve(md.compile());
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("infeasible LP is detected") {
  Model md;
  auto x = md.add_vars("x", 1);
  md.minimize(x[0]);
  md.add_nonneg(x[0] - 1.0);
  md.add_nonneg(-x[0] - 1.0);  // x <= -1
  const Solution sol = solve(md.compile());
  CHECK(sol.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("unbounded LP is detected as dual infeasible") {
  Model md;
  auto x = md.add_vars("x", 1);
  md.minimize(x[0]);
  md.add_nonneg(-x[0] + 1.0);  // x <= 1
  const Solution sol = solve(md.compile());
  CHECK(sol.status == SolveStatus::DualInfeasible);
}

TEST_CASE("residual report: exact solution has zero residuals") {
  Model md;
  auto x = md.add_vars("x", 2);
  md.minimize(x[0] + x[1]);
  md.add_nonneg(x[0] - 1.0);
  md.add_nonneg(x[1] - 2.0);
  const ConicProgram prog = md.compile();
  Vector xs(2), ys(2), ss(2);
  xs << 1.0, 2.0;
  ys << 1.0, 1.0;
  ss << 0.0, 0.0;
  ResidualReport rep = residuals(prog, xs, ys, ss);
  CHECK(rep.prim_res == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rep.dual_res == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rep.gap == doctest::Approx(0.0).epsilon(1e-15));

  ss << 0.5, 0.0;
  rep = residuals(prog, xs, ys, ss);
  CHECK(rep.prim_res == doctest::Approx(0.5 / (1.0 + prog.b.norm())));
}

TEST_CASE("solving the mechanical dual agrees with the reported dual") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int inst = 0; inst < 20; ++inst) {
    Model md;
    auto x = md.add_vars("x", 3);
    LinExpr obj;
    for (int j = 0; j < 3; ++j) obj = obj + x[j] * std::abs(gauss(rng));
    md.minimize(obj);
    for (int j = 0; j < 3; ++j) {
      md.add_nonneg(x[j] + 1.0 + std::abs(gauss(rng)));
      md.add_nonneg(-x[j] + 1.0 + std::abs(gauss(rng)));
    }
    std::vector<LinExpr> soc{LinExpr(4.0), x[0] - gauss(rng), x[1]};
    md.add_soc(soc);
    md.add_exp(x[0], LinExpr(1.0), x[2] + 3.0);
    const ConicProgram prog = md.compile();
    const Solution psol = solve(prog);
    REQUIRE(psol.status == SolveStatus::Optimal);
    const ConicProgram dual = conic_dual(prog);
    const Solution dsol = solve(dual);
    REQUIRE(dsol.status == SolveStatus::Optimal);
    // min-form dual value is the negative of the primal optimum.
    CHECK(dsol.pobj == doctest::Approx(-psol.pobj).epsilon(1e-6).scale(1.0));
    // The solver's own dual point evaluates to the same objective.
    CHECK(psol.dobj == doctest::Approx(psol.pobj).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("conic json dump/load round trip") {
  Model md;
  auto x = md.add_vars("x", 2);
  md.minimize(x[0] + 2.0 * x[1]);
  md.add_nonneg(x[0] - 1.0);
  md.add_exp(x[0], LinExpr(1.0), x[1]);
  const ConicProgram prog = md.compile();
  const ConicProgram back = load_conic_json(dump_conic_json(prog));
  CHECK(back.num_vars() == prog.num_vars());
  CHECK(back.num_rows() == prog.num_rows());
  CHECK((back.b - prog.b).norm() == 0.0);
  CHECK((back.c - prog.c).norm() == 0.0);
  CHECK(Matrix(back.A) == Matrix(prog.A));
  REQUIRE(back.cones.factors.size() == prog.cones.factors.size());
  const Solution s1 = solve(prog), s2 = solve(back);
  CHECK(s1.pobj == doctest::Approx(s2.pobj).epsilon(1e-7));
}
