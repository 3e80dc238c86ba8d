#pragma once

// Norms of radial fields and trajectories on R^n.
//
// Every full-space integral is reduced to A_{n-1} * int_0^{r_max} (...) r^{n-1} dr,
// A_{n-1} = |S^{n-1}|, and evaluated with the composite trapezoid rule on the
// grid nodes. The r = 0 node takes the integrand's limit, which is 0 when the
// net radial power is positive. When the power beta is negative every cell is
// integrated in product form, r^beta * (linear interpolant of the smooth
// factor), so integrable singularities at the origin keep second order.

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "glassey/core/grid.hpp"
#include "glassey/core/problem.hpp"
#include "glassey/core/trajectory.hpp"

namespace glassey::core {

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Nodal weights w_j with sum_j w_j f_j^2 ~ ||r^mu <r>^nu f||^2_{L^2(R^n)}.
/// Throws PreconditionViolation when mu <= -n/2.
std::vector<double> radial_weights(const RadialGrid& grid, int n, double mu, double nu);

/// ||r^mu <r>^nu f||_{L^2(R^n)}, <r> = sqrt(1 + r^2).
double weighted_l2(const RadialField& f, int n, double mu, double nu);

struct LambdaNorms {
  double lambda1;  // ||d_r u0|| + ||u1||
  double lambda2;  // ||Laplacian u0|| + ||d_r u1||
};

LambdaNorms lambda_norms(const RadialField& u0, const RadialField& u1, int n);

/// A_{n-1}^{1/2} max_j r_j^{n/2-s} |f(r_j)|.
double sup_trace_norm(const RadialField& f, int n, double s);

/// A_{n-1}^{1/2} max_j r_j^{k} |f(r_j)| for a general radial power k (k = 0 includes r = 0).
double sup_weighted(const RadialField& f, int n, double k);

struct EnergyNorms {
  double e1;  // sup_t (||u_t||^2 + ||d_r u||^2)^{1/2}
  double e2;  // sup_t (||d_r u_t||^2 + ||Laplacian u||^2)^{1/2}
};

EnergyNorms e_norms(const Trajectory& traj);

/// Component labels of the local-energy norm.
inline constexpr const char* kLeLocal = "local";        // r^-d <r>^{-1/2+d'} |du|
inline constexpr const char* kLeHardy = "hardy";        // r^{-1-d} <r>^{-1/2+d'} |u|
inline constexpr const char* kLeLog = "log_horizon";    // log(2+T)^{-1/2} r^-d <r>^{-1/2+d} (|du|+|u|/r)
inline constexpr const char* kLePower = "power_horizon";  // T^{d-1/2} r^-d (|du|+|u|/r)

struct LocalEnergy {
  double total = 0.0;
  std::map<std::string, double> components;
};

/// LE_1 over [0, T]; for n = 2 only the terms in du are kept.
/// Throws HorizonMismatch when the trajectory does not start at 0 or reach T.
LocalEnergy le_norm(const Trajectory& traj, const WeightParams& w);

/// LE_2 = LE applied to d_x u (|d d_x u|^2 = (u_t)_r^2 + u_rr^2 + (n-1)(u_r/r)^2).
LocalEnergy le2_norm(const Trajectory& traj, const WeightParams& w);

struct NormReport {
  double e1 = 0.0;
  double e2 = 0.0;
  double le1 = 0.0;
  double le2 = 0.0;
  std::map<std::string, double> components;  // LE_1 summands
};

NormReport norm_report(const Trajectory& traj, const WeightParams& w);

/// The three single-term LE* norms of F on [0, T]:
/// ||r^d <r>^{1/2-d'} F||, log(2+T)^{1/2} ||r^d <r>^{1/2-d} F||, T^{1/2-d} ||r^d F||.
std::array<double, 3> lestar_terms(const FieldHistory& forcing, const WeightParams& w, int n);

/// Minimum of lestar_terms: an upper bound on the true ||F||_{LE*}.
double lestar_upper(const FieldHistory& forcing, const WeightParams& w, int n);

/// int_0^T g(t) dt by the trapezoid rule on samples g_k = g(k dt); a final
/// partial interval is closed by linear interpolation. Throws HorizonMismatch
/// when (size-1)*dt < T.
double time_trapezoid(std::span<const double> samples, double dt, double horizon);

}  // namespace glassey::core
