#pragma once

// Test-only reference implementations, kept independent of the library's
// propagation path: a plain Taylor matrix exponential, a fixed-step RK4
// integrator for the Schrodinger equation, and Simpson quadrature.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace oracles {

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  double norm = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) norm = std::max(norm, a.col(j).cwiseAbs().sum());
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (x * term) / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

// RK4 on i dpsi/dt = H(t) psi with H in rad/ns, t in ns.
inline Eigen::VectorXcd rk4_schrodinger(const std::function<Eigen::MatrixXcd(double)>& h,
                                        Eigen::VectorXcd psi, double t0, double t1, int steps) {
  const std::complex<double> mi(0.0, -1.0);
  const double dt = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Eigen::VectorXcd k1 = mi * (h(t) * psi);
    const Eigen::VectorXcd k2 = mi * (h(t + 0.5 * dt) * (psi + 0.5 * dt * k1));
    const Eigen::VectorXcd k3 = mi * (h(t + 0.5 * dt) * (psi + 0.5 * dt * k2));
    const Eigen::VectorXcd k4 = mi * (h(t + dt) * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace oracles
