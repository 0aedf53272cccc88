#include "dmac/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmac/rng.hpp"

namespace dmac {

namespace {

constexpr int kDenseSpectrumLimit = 1024;

void check_extremes(double a_bar, double a_lower) {
  if (!(a_lower > 0.0) || !(a_bar < 1.0) || !(a_lower <= a_bar))
    throw std::invalid_argument("model extremes must satisfy 0 < a_lower <= a_bar < 1");
}

std::vector<double> quadratic_real_roots(double a, double b, double c) {
  // a x^2 + b x + c, stable two-branch form
  std::vector<double> out;
  if (a == 0.0) {
    if (b != 0.0) out.push_back(-c / b);
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return out;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
  else out.push_back(0.0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Cubic cubic_coefficients(double a_bar, double a_lower) {
  check_extremes(a_bar, a_lower);
  const double ab = a_bar;
  const double al = a_lower;
  Cubic c;
  c.f1 = (1.0 - ab) * (ab - al) * (ab - al) / 8.0;
  c.f2 = (-2.0 * ab * ab * ab + 4.0 * ab * ab - 2.0 * al * al + 4.0 * ab * al - 2.0 * ab -
          2.0 * al) /
         4.0;
  c.f3 = (4.0 * ab * ab * ab - 14.0 * ab * ab + 16.0 * ab - 4.0 * al - 18.0) /
         (4.0 * (1.0 - ab));
  c.f4 = -1.0 / ((ab - 1.0) * (ab - 1.0));
  return c;
}

std::vector<double> real_roots(const Cubic& c) {
  if (c.f1 == 0.0) return quadratic_real_roots(c.f2, c.f3, c.f4);

  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = -c.f4 / c.f1;
  companion(1, 2) = -c.f3 / c.f1;
  companion(2, 2) = -c.f2 / c.f1;

  Eigen::EigenSolver<Eigen::Matrix3d> es(companion);
  const auto vals = es.eigenvalues();
  double radius = 0.0;
  for (int k = 0; k < 3; ++k) radius = std::max(radius, std::abs(vals[k]));
  const double imag_tol = 1e-9 * radius;

  std::vector<double> out;
  for (int k = 0; k < 3; ++k)
    if (std::abs(vals[k].imag()) <= imag_tol) out.push_back(vals[k].real());
  std::sort(out.begin(), out.end());
  return out;
}

BetaCubicReport solve_beta_cubic(double a_bar, double a_lower) {
  BetaCubicReport rep;
  rep.cubic = cubic_coefficients(a_bar, a_lower);
  rep.roots = real_roots(rep.cubic);
  for (double r : rep.roots) {
    if (r > 0.0) {
      rep.beta_min = r;
      break;
    }
  }
  if (rep.beta_min && rep.cubic.f1 > 0.0) {
    // the certificate set starts at beta_min; the polynomial must be
    // non-negative just right of the crossing
    const double beta = *rep.beta_min;
    const double scale = std::abs(rep.cubic.f1) * beta * beta * beta +
                         std::abs(rep.cubic.f2) * beta * beta +
                         std::abs(rep.cubic.f3) * beta + std::abs(rep.cubic.f4);
    for (int k = 1; k <= 8; ++k) {
      const double probe = beta * (1.0 + 1e-7 * k);
      if (rep.cubic.eval(probe) < -1e-9 * scale)
        throw std::runtime_error("beta cubic: polynomial negative right of selected root");
    }
  }
  return rep;
}

double gamma_upper(double a_bar, double a_lower) {
  const BetaCubicReport rep = solve_beta_cubic(a_bar, a_lower);
  if (!rep.beta_min)
    throw std::runtime_error("gamma_upper: no positive real root of the beta polynomial");
  return std::sqrt(*rep.beta_min);
}

double zero_control_gain(double b, int degree) {
  const auto [lo, hi] = admissible_interval(b, degree);
  (void)lo;
  return 1.0 / (1.0 - hi);
}

double smallest_eigenvalue(const Eigen::SparseMatrix<double>& m, double tol, int max_iter) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw std::invalid_argument("smallest_eigenvalue: bad matrix");

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("smallest_eigenvalue: factorization failed");

  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = 1.0 + 1e-3 * counter_unit(0xd3, static_cast<std::uint64_t>(i));
  v.normalize();

  bool reshifted = false;
  double lambda = v.dot(m * v);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = solver.solve(v);
    const double ynorm = y.norm();
    if (!(ynorm > 0.0) || !std::isfinite(ynorm))
      throw std::runtime_error("smallest_eigenvalue: iteration broke down");
    v = y / ynorm;
    const double prev = lambda;
    lambda = v.dot(m * v);
    const double delta = std::abs(lambda - prev);
    if (delta <= tol * std::max(std::abs(lambda), 1e-300)) return lambda;
    if (!reshifted && delta <= 1e-3 * std::abs(lambda)) {
      // estimate has settled near the bottom of the spectrum; one shift
      // just below it makes the contraction ratio small
      Eigen::SparseMatrix<double> shifted = m;
      for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= 0.99 * lambda;
      solver.compute(shifted);
      if (solver.info() != Eigen::Success) solver.compute(m);
      reshifted = true;
    }
  }
  throw std::runtime_error("smallest_eigenvalue: iteration cap reached");
}

namespace {

Eigen::SparseMatrix<double> lower_bound_matrix(const UncertainNetwork& net) {
  Eigen::SparseMatrix<double> m = net.graph.laplacian_matrix();
  m *= net.b * net.b;
  for (int i = 0; i < net.node_count(); ++i) {
    const double d = net.candidates[static_cast<std::size_t>(i)].max() - 1.0;
    m.coeffRef(i, i) += d * d;
  }
  return m;
}

}  // namespace

double gamma_lower(const UncertainNetwork& net) {
  return 1.0 / std::sqrt(smallest_eigenvalue(lower_bound_matrix(net)));
}

double gamma_lower_dense(const UncertainNetwork& net) {
  Eigen::MatrixXd m = Eigen::MatrixXd(lower_bound_matrix(net));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gamma_lower_dense: eigensolver failed");
  return 1.0 / std::sqrt(es.eigenvalues()(0));
}

bool decay_margin_check(const std::vector<double>& a_values, double gamma) {
  if (a_values.empty()) throw std::invalid_argument("decay_margin_check: empty a_values");
  if (!(gamma > 0.0)) throw std::invalid_argument("decay_margin_check: gamma must be positive");
  const double a_max = *std::max_element(a_values.begin(), a_values.end());
  return 1.0 - a_max > 1.0 / (gamma * gamma);
}

double riccati_residual(const std::vector<double>& a_values, const NetworkGraph& g, double b,
                        double gamma) {
  const int n = g.node_count();
  if (static_cast<int>(a_values.size()) != n)
    throw std::invalid_argument("riccati_residual: a_values size mismatch");
  if (!decay_margin_check(a_values, gamma))
    throw std::invalid_argument(
        "riccati_residual: requires 1 - max(a) > gamma^{-2} (middle term not invertible)");

  const double inv_g2 = 1.0 / (gamma * gamma);
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(a_values.data(), n);
  Eigen::MatrixXd lap = Eigen::MatrixXd(g.laplacian_matrix());

  // P = (I-A)^{-1} and the middle factor are diagonal for diagonal A
  Eigen::VectorXd p = (1.0 - a.array()).inverse().matrix();
  Eigen::VectorXd mid = ((1.0 - a.array()) - inv_g2).inverse().matrix();

  // K^T K = b^2 (A-I)^{-1} L (A-I)^{-1}
  Eigen::VectorXd inv_am1 = (a.array() - 1.0).inverse().matrix();
  Eigen::MatrixXd ktk =
      b * b * inv_am1.asDiagonal() * lap * inv_am1.asDiagonal();

  // A + B K = A + b^2 L (A-I)^{-1}
  Eigen::MatrixXd acl = b * b * lap * inv_am1.asDiagonal();
  acl += Eigen::MatrixXd(a.asDiagonal());

  Eigen::MatrixXd slack = Eigen::MatrixXd(p.asDiagonal()) - Eigen::MatrixXd::Identity(n, n) -
                          ktk - acl.transpose() * mid.asDiagonal() * acl;
  slack = 0.5 * (slack + slack.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(slack);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("riccati_residual: eigensolver failed");
  return es.eigenvalues()(0);
}

namespace {

// Scalar spectral representation of the uniform-model bound. With
// s = b^2 lambda for a Laplacian eigenvalue lambda,
//   g(s) = ((1-a) a - s) / (1-a)^2,   f(s) = (a - s/(1-a))^2 = ((1-a) g)^2,
// so g / ((1-a) g - f) cancels to 1 / ((1-a)^2 + s), removing the
// 0/0 point at g = 0.
double uniform_bound_scalar(double a_bar, double s) {
  return 1.0 / ((1.0 - a_bar) * (1.0 - a_bar) + s);
}

}  // namespace

double gamma_uniform(double a_bar, const NetworkGraph& g, double b) {
  if (!(a_bar > 0.0) || !(a_bar < 1.0))
    throw std::invalid_argument("gamma_uniform: a_bar must lie in (0,1)");
  const int n = g.node_count();
  if (n <= kDenseSpectrumLimit) {
    Eigen::MatrixXd lap = Eigen::MatrixXd(g.laplacian_matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("gamma_uniform: Laplacian eigensolver failed");
    double best = 0.0;
    for (int k = 0; k < n; ++k)
      best = std::max(best, std::abs(uniform_bound_scalar(a_bar, b * b * es.eigenvalues()(k))));
    return std::sqrt(best);
  }
  // the scalar function is positive and decreasing in lambda and every
  // Laplacian has eigenvalue 0, so the maximum sits at lambda = 0
  return std::sqrt(uniform_bound_scalar(a_bar, 0.0));
}

double gamma_uniform_dense(double a_bar, const NetworkGraph& g, double b) {
  if (!(a_bar > 0.0) || !(a_bar < 1.0))
    throw std::invalid_argument("gamma_uniform_dense: a_bar must lie in (0,1)");
  const int n = g.node_count();
  Eigen::MatrixXd bbt = b * b * Eigen::MatrixXd(g.laplacian_matrix());
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  const double om = 1.0 - a_bar;
  Eigen::MatrixXd ginf = (om * a_bar * eye - bbt) / (om * om);
  Eigen::MatrixXd inner = a_bar * eye + bbt / (a_bar - 1.0);
  Eigen::MatrixXd finf = inner.transpose() * inner;
  Eigen::MatrixXd denom = om * ginf - finf;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(denom);
  if (!lu.isInvertible())
    throw std::runtime_error("gamma_uniform_dense: (1-a_bar) G - F is singular");
  Eigen::MatrixXd x = ginf * lu.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  return std::sqrt(svd.singularValues()(0));
}

GainBounds compute_bounds(const UncertainNetwork& net) {
  GainBounds out;
  out.gamma_lower = gamma_lower(net);
  out.gamma_uniform = gamma_uniform(net.a_bar(), net.graph, net.b);
  const BetaCubicReport rep = solve_beta_cubic(net.a_bar(), net.a_lower());
  out.cubic = rep.cubic;
  out.cubic_roots = rep.roots;
  if (rep.beta_min) out.gamma_upper = std::sqrt(*rep.beta_min);
  out.zero_control_gains.reserve(static_cast<std::size_t>(net.node_count()));
  for (int i = 0; i < net.node_count(); ++i)
    out.zero_control_gains.push_back(zero_control_gain(net.b, net.graph.degree(i)));
  return out;
}

}  // namespace dmac
