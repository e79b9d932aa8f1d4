#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "mlswe/physics.hpp"

namespace mlswe {

/// rho_eps^2 = 2 dt^2/eps^2 (C_H/Delta_e) (H/Delta)_e, the quantity whose
/// smallness drives the discrete energy estimates. In 1D it reduces to
/// 2 (dt/dx) c / eps.
double rho_epsilon(double dt, double eps, double c_hess, double delta_e, double hd_mu);

/// Stabilization constants proven to make the mechanical energy
/// non-increasing under the explicit CFL condition: gamma = 4, alpha = 2.
struct GuaranteedConstants {
  double gamma = 4.0;
  double alpha = 2.0;
};
inline GuaranteedConstants guaranteed_constants() { return {}; }

/// rho_eps admissibility of the guaranteed constants (discriminants of the
/// energy-budget polynomials): gamma needs rho <= 1/2, alpha rho <= 1/(2 sqrt 2).
inline bool guaranteed_gamma_admissible(double rho) { return rho <= 0.5; }
inline bool guaranteed_alpha_admissible(double rho) { return rho <= 0.5 / std::sqrt(2.0); }

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool empty = true;
};

struct RelaxedBounds {
  Interval gamma;  // gamma± = (1 ± sqrt(1 - rho^2)) / rho^2, needs rho <= 1
  Interval alpha;  // alpha± = (1 ± sqrt(1 - 2 rho^2)) / (2 rho^2), needs rho <= 1/sqrt(2)
};

/// Relaxed one-dimensional single-layer stability intervals. As rho -> 0 the
/// lower endpoints tend to the critical value 1/2 and the upper ones to
/// +infinity (returned as an infinity sentinel).
RelaxedBounds relaxed_bounds(double rho_eps);

struct SymbolSettings {
  double cfl = 0.5;
  double gamma = 0.5;
  double alpha = 0.5;
  double u_bar = 0.0;
  double h_bar = 1.0;
  double gravity = 1.0;
  int order_space = 1;
  int order_time = 1;
  int dim = 1;  // 2 applies the 2D rescaling: cfl *= sqrt(2), alpha *= 2
};

/// Von Neumann amplification matrix of the linearized single-layer scheme at
/// phase angle theta = k dx. Entries follow the printed 1D stabilized fluxes
/// (2 gamma dt/dx and 2 alpha dt/dx factors); order_space = 2 substitutes the
/// central least-squares MUSCL traces, order_time = 2 composes the Heun
/// polynomial (I + G^2)/2.
Eigen::Matrix2cd amplification_matrix(double theta, const SymbolSettings& s);

/// Block-diagonal 2L x 2L multilayer symbol at u_bar = 0: one 2x2 block per
/// gravity mode, mode speeds from the coupled-wave matrix eigenvalues.
Eigen::MatrixXcd amplification_matrix_multilayer(double theta, const SymbolSettings& s,
                                                 const Eigen::ArrayXd& mode_speeds);

/// Largest spectral radius over the theta sampling grid.
double max_spectral_radius(const SymbolSettings& s, int theta_samples = 256);

struct StabilityPoint {
  double cfl, gamma, alpha;
  double rho_max;
  bool stable;
};

enum class ScanPolicy { equal, product_zero };  // alpha = gamma, or alpha*gamma = 0

/// Stability map over CFL x (gamma+alpha) for one of the two paper policies.
std::vector<StabilityPoint> scan_stability(const std::vector<double>& cfl_values,
                                           const std::vector<double>& sum_values,
                                           ScanPolicy policy, SymbolSettings base,
                                           int theta_samples = 256, double tol = 1e-9);

/// Bisected largest stable CFL at fixed constants; nan if even cfl_lo fails.
double max_stable_cfl(SymbolSettings s, double cfl_lo = 1e-3, double cfl_hi = 4.0,
                      double tol_cfl = 1e-3, int theta_samples = 256, double tol = 1e-9);

}  // namespace mlswe
