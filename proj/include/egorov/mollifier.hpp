#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/domain.hpp"
#include "egorov/multi_index.hpp"

namespace egorov {

struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base window w(t) = exp(-1/(1-t^2)) on (-1, 1), zero outside.
double bump_window(double t);

/// n-th derivative of the base window. Uses w^(n) = w * R_n(t) / (1-t^2)^(2n)
/// with R_{n+1} = (1-t^2)^2 R_n' + 4 n t (1-t^2) R_n - 2 t R_n, evaluated in
/// log form so the quotient stays finite near the edges. Zero for
/// |t| >= 1 - 1e-12.
double bump_window_derivative(unsigned n, double t);

inline constexpr unsigned kMaxDerivativeOrder = 20;

/// Largest m accepted by Kernel::build; beyond it the moment system is too
/// ill-conditioned for the 1e-12 residual target.
inline constexpr unsigned kMaxEvenMoments = 8;

/// One-dimensional mollifier profile psi(t) = w(t) * P(t) with P even,
/// normalized so that int psi = 1 and int psi t^{2k} = 0 for k = 1..m.
/// Together with evenness this kills every moment of order 1..2m+1.
///
/// The d-dimensional delta kernel at scale rho is the tensor product
/// Delta_rho(xi) = rho^{-d} prod_i psi(xi_i / rho), supported in the closed
/// l-infinity ball of radius rho.
class Kernel {
 public:
  /// Solves the (m+1)x(m+1) moment system with an n-point Gauss-Legendre rule.
  /// Throws ConditioningError when m > kMaxEvenMoments or the residuals stay
  /// above 1e-12.
  static Kernel build(unsigned m, unsigned quad_resolution = 256);

  /// Rebuilds derived data (tables, residuals) from stored coefficients.
  static Kernel from_coefficients(std::vector<double> poly_coeffs, unsigned quad_resolution = 256);

  static constexpr std::size_t kTableIntervals = 4096;

  [[nodiscard]] unsigned m() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
  /// q = 2m + 1: polynomials of degree <= q are reproduced exactly.
  [[nodiscard]] unsigned vanishing_order() const noexcept { return 2 * m() + 1; }
  [[nodiscard]] unsigned quad_resolution() const noexcept { return quad_resolution_; }
  [[nodiscard]] const std::vector<double>& poly_coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const std::vector<double>& moment_residuals() const noexcept { return residuals_; }
  [[nodiscard]] const std::vector<double>& psi_table() const noexcept { return psi_table_; }
  [[nodiscard]] const std::vector<double>& Psi_table() const noexcept { return Psi_table_; }

  [[nodiscard]] double psi(double t) const { return psi_derivative(0, t); }
  [[nodiscard]] double psi_derivative(unsigned n, double t) const;
  /// Antiderivative of psi with Psi(-1) = 0 and Psi(1) = 1, from the table by
  /// cubic Hermite interpolation (the slopes are psi itself).
  [[nodiscard]] double Psi(double t) const;

  /// d^alpha Delta_rho(xi) = rho^{-d-|alpha|} prod_i psi^(alpha_i)(xi_i / rho).
  [[nodiscard]] double eval(const MultiIndex& alpha, std::span<const double> xi, double rho) const;

  /// d^alpha Pi_Omega(xi) where Pi_Omega = indicator(Omega_{3 rho}) * Delta_rho,
  /// evaluated in closed form through Psi.
  [[nodiscard]] double cutoff(const Domain& dom, std::span<const double> xi, double rho,
                              const MultiIndex& alpha) const;
  [[nodiscard]] double cutoff(const Domain& dom, std::span<const double> xi, double rho) const {
    return cutoff(dom, xi, rho, MultiIndex(xi.size()));
  }

  /// int t^order psi(t) dt by composite Gauss-Kronrod on quad_resolution
  /// panels (independent of the Gauss-Legendre rule used to build).
  [[nodiscard]] double moment(unsigned order, unsigned quad_resolution = 16) const;

 private:
  Kernel() = default;
  void finish();

  std::vector<double> coeffs_;  // c_0, c_2, ..., c_{2m}
  std::vector<double> residuals_;
  unsigned quad_resolution_ = 256;
  std::vector<double> psi_table_;
  std::vector<double> Psi_table_;
  std::vector<std::vector<double>> p_derivs_;  // P, P', P'', ... until zero
};

using KernelPtr = std::shared_ptr<const Kernel>;

KernelPtr make_kernel(unsigned m = 2, unsigned quad_resolution = 256);

void to_json(nlohmann::json& j, const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

}  // namespace egorov
