#pragma once

#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/diffeo.hpp"
#include "egorov/genfun.hpp"

namespace egorov {

struct PointMass {
  std::vector<double> a;
};

using DistBase = std::variant<Density, PointMass>;

/// Finite sum of terms coeff * d^alpha(base) on a domain.
struct Distribution {
  struct Term {
    Complex coeff{1.0, 0.0};
    MultiIndex alpha;
    DistBase base;
  };

  Domain domain;
  std::vector<Term> terms;

  [[nodiscard]] std::size_t dim() const noexcept { return domain.dim(); }
};

/// Regular distribution <S(f), phi> = int f phi.
Distribution schwartz_embed(const Density& f, const Domain& dom);
/// delta_a (delta at the origin when a is empty).
Distribution dirac(const Domain& dom, std::vector<double> a = {});

Distribution distr_derive(const Distribution& T, const MultiIndex& alpha);
/// c1 T + c2 S on a shared domain.
Distribution distr_linear(Complex c1, const Distribution& T, Complex c2, const Distribution& S);
/// f T through f d^alpha B = sum_beta (-1)^|beta| binom(alpha,beta) d^{alpha-beta}((d^beta f) B).
Distribution distr_mul_smooth(const StandardFunction& f, const Distribution& T);
/// T restricted to a subdomain: the same terms, with point masses outside
/// the subdomain dropped.
Distribution distr_restrict(const Distribution& T, const Domain& sub);

/// T * Delta_rho as a tree on T's domain.
GenFunc convolve_delta(const Distribution& T, KernelPtr k);
/// iota(T) = Pi_Omega (T * Delta_rho).
GenFunc iota_embed(const Distribution& T, KernelPtr k);

/// T(theta) under the convention <T(theta), phi> = <T, (phi o theta) |det D theta|>.
/// Densities map to g o theta^{-1}, delta_a to |det D theta(a)| delta_{theta(a)}.
/// Derivative terms need an affine theta; otherwise UnsupportedTerm.
Distribution change_of_variables_dist(const Distribution& T, const Diffeo& theta, const Domain& target);

/// theta_*(f)(y) = f(theta^{-1}(y)) on the target domain.
GenFunc pushforward_genfunc(const GenFunc& f, const Diffeo& theta, const Domain& target);

/// Classical pairing <T, phi>: point masses by (-1)^|alpha| d^alpha phi(a),
/// densities by (-1)^|alpha| int g d^alpha phi with composite Gauss-Legendre
/// on the support box of phi.
Complex pair_classical(const Distribution& T, const StandardFunction& phi, const Box& phi_support,
                       unsigned nodes_per_panel = 64, unsigned panels = 16);

void to_json(nlohmann::json& j, const Distribution& T);

}  // namespace egorov
