#pragma once

#include <Eigen/Core>

#include "csage/model.hpp"
#include "csage/types.hpp"

namespace csage {

// Euclidean projection onto Kexp = cl{(u,w,z) : w > 0, w e^{u/w} <= z}.
Eigen::Vector3d project_exp_cone(const Eigen::Vector3d& p);

// Projection onto the dual cone Kexp^dagger (via Moreau).
Eigen::Vector3d project_exp_dual_cone(const Eigen::Vector3d& p);

bool in_exp_cone(const Eigen::Vector3d& p, double tol = 0.0);
bool in_exp_dual_cone(const Eigen::Vector3d& p, double tol = 0.0);

// In-place projection of s onto the product cone K.
void project_cone(const ConeSpec& cones, Eigen::Ref<Vector> s);

// In-place projection of y onto the dual product cone K^dagger.
void project_dual_cone(const ConeSpec& cones, Eigen::Ref<Vector> y);

// Euclidean distance of s to K / of y to K^dagger.
double cone_distance(const ConeSpec& cones, const Vector& s);
double dual_cone_distance(const ConeSpec& cones, const Vector& y);

}  // namespace csage
