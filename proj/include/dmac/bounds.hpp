#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "dmac/dynamics.hpp"
#include "dmac/graph.hpp"

namespace dmac {

/// Cubic certificate polynomial in beta = gamma^2:
/// p(beta) = f1 b^3 + f2 b^2 + f3 b + f4.
struct Cubic {
  double f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0;
  double eval(double beta) const { return ((f1 * beta + f2) * beta + f3) * beta + f4; }
};

/// Certificate coefficients from the network-level model extremes.
/// Requires 0 < a_lower <= a_bar < 1.
Cubic cubic_coefficients(double a_bar, double a_lower);

/// Real roots, ascending. Companion-matrix eigenvalues for the cubic;
/// complex pairs are dropped when |imag| > 1e-9 * spectral radius.
/// Degenerate leading coefficients fall back to the quadratic / linear
/// closed forms under the same selection rule.
std::vector<double> real_roots(const Cubic& c);

struct BetaCubicReport {
  Cubic cubic;
  std::vector<double> roots;         // all real roots, ascending
  std::optional<double> beta_min;    // smallest strictly positive root
};

BetaCubicReport solve_beta_cubic(double a_bar, double a_lower);

/// Upper gain certificate sqrt(beta_min). Throws when the polynomial has
/// no positive real root (hypothesis violation; happens for every
/// degenerate a_bar == a_lower instance).
double gamma_upper(double a_bar, double a_lower);

/// Open-loop per-node gain bound 1 / (1 - (1/2 + sqrt(1/4 - 2 b^2 d))).
/// Throws when b >= sqrt(1/(8d)).
double zero_control_gain(double b, int degree);

/// Smallest eigenvalue of a sparse SPD matrix by shifted inverse power
/// iteration on a sparse LDL^T factorization. Deterministic start vector;
/// one re-shift once the estimate has settled. Throws on iteration cap.
double smallest_eigenvalue(const Eigen::SparseMatrix<double>& m, double tol = 1e-10,
                           int max_iter = 10000);

/// Lower gain bound lambda_min(diag((a_bar_i - 1)^2) + b^2 L)^{-1/2},
/// taken at the per-node candidate maxima. Sparse iterative path.
double gamma_lower(const UncertainNetwork& net);

/// Dense eigendecomposition route for the same quantity (reference).
double gamma_lower_dense(const UncertainNetwork& net);

/// 1 - max(a) > gamma^{-2}, the scalar form of (I - A_p) > gamma^{-2} I.
bool decay_margin_check(const std::vector<double>& a_values, double gamma);

/// Smallest eigenvalue of the Riccati-inequality slack
///   P - I - K^T K - (A + BK)^T (P^{-1} - gamma^{-2} I)^{-1} (A + BK)
/// with P = (I-A)^{-1}, K = B^T (A-I)^{-1}. Non-negative (>= -1e-8)
/// certifies the gamma-level attenuation. Dense; meant for moderate N.
double riccati_residual(const std::vector<double>& a_values, const NetworkGraph& g, double b,
                        double gamma);

/// Gain floor for the uniform-model case A = a_bar I:
/// || G ((1-a_bar) G - F)^{-1} ||^{1/2} with G, F polynomials in b^2 L.
/// Shared-eigenbasis route: scalar function of Laplacian eigenvalues.
double gamma_uniform(double a_bar, const NetworkGraph& g, double b);

/// Dense-matrix route for the same bound (reference, moderate N).
double gamma_uniform_dense(double a_bar, const NetworkGraph& g, double b);

/// Aggregate certificate record for one network instance.
struct GainBounds {
  double gamma_lower = 0.0;
  double gamma_uniform = 0.0;
  std::optional<double> gamma_upper;  // absent when the cubic has no positive root
  Cubic cubic;
  std::vector<double> cubic_roots;
  std::vector<double> zero_control_gains;  // per node
};

GainBounds compute_bounds(const UncertainNetwork& net);

}  // namespace dmac
