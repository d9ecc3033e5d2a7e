#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egorov/diffeo.hpp"
#include "egorov/domain.hpp"
#include "egorov/functions.hpp"
#include "egorov/mollifier.hpp"
#include "egorov/scalars.hpp"
#include "egorov/sweep.hpp"

namespace egorov {

struct DomainMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadConfig {
  /// Gauss-Legendre nodes per axis for convolution nodes.
  unsigned nodes_per_axis = 128;
  /// Integrate over the kernel support through eta = x - rho u. When false,
  /// a fixed unit window around x is used instead (the naive variant).
  bool local_substitution = true;
};

struct EvalContext {
  double rho = 1.0 / 256;
  QuadConfig quad{};
  double tol = 1e-9;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

namespace node {

/// d^alpha f for a standard smooth function f.
struct Standard {
  StandardFunction f;
  MultiIndex alpha;
};
/// Constant AsymptoticScalar, evaluated at the concrete rho.
struct Scalar {
  AsymptoticScalar c;
};
/// d^alpha Delta_rho(x - center).
struct Kernel {
  KernelPtr kernel;
  MultiIndex alpha;
  std::vector<double> center;
};
/// d^alpha Pi_Omega(x).
struct Cutoff {
  KernelPtr kernel;
  Domain domain;
  MultiIndex alpha;
};
/// (g * d^alpha Delta_rho)(x) for a density g.
struct Convolution {
  KernelPtr kernel;
  Density density;
  MultiIndex alpha;
};
struct Sum {
  std::vector<NodePtr> terms;
};
struct Product {
  std::vector<NodePtr> factors;
};
struct ScalarMul {
  AsymptoticScalar c;
  NodePtr child;
};
/// g^(order)(child(x)).
struct Compose {
  UnaryFunction g;
  unsigned order = 0;
  NodePtr child;
};
/// child(theta^{-1}(y)).
struct Pushforward {
  Diffeo theta;
  NodePtr child;
};

}  // namespace node

struct Node {
  std::variant<node::Standard, node::Scalar, node::Kernel, node::Cutoff, node::Convolution, node::Sum, node::Product,
               node::ScalarMul, node::Compose, node::Pushforward>
      v;
};

/// Representative of a generalized function on a domain: an expression tree
/// evaluable at (x, rho).
class GenFunc {
 public:
  GenFunc(Domain domain, NodePtr root);

  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] const NodePtr& root() const noexcept { return root_; }
  [[nodiscard]] std::size_t dim() const noexcept { return domain_.dim(); }

 private:
  Domain domain_;
  NodePtr root_;
};

// Leaves.
GenFunc sigma_embed(const StandardFunction& f, const Domain& dom);
GenFunc scalar_genfunc(const AsymptoticScalar& c, const Domain& dom);
GenFunc zero_genfunc(const Domain& dom);
/// Delta_rho(x - center) (the representative of the delta kernel).
GenFunc kernel_genfunc(KernelPtr k, const Domain& dom, std::vector<double> center = {});
GenFunc cutoff_genfunc(KernelPtr k, const Domain& dom);
GenFunc convolution_genfunc(KernelPtr k, const Density& g, const Domain& dom, MultiIndex alpha = {});
/// g applied pointwise.
GenFunc compose(const UnaryFunction& g, const GenFunc& f);

NodePtr make_sum(std::vector<NodePtr> terms);
NodePtr make_product(std::vector<NodePtr> factors);
NodePtr make_scalar_mul(const AsymptoticScalar& c, NodePtr child);
bool is_zero_node(const NodePtr& n);

enum class CombineOp { add, mul, scalar_mul };
/// Throws DomainMismatch when the domains differ.
GenFunc combine(CombineOp op, const GenFunc& f, const GenFunc& g);
GenFunc combine(CombineOp op, const GenFunc& f, const AsymptoticScalar& c);

GenFunc operator+(const GenFunc& f, const GenFunc& g);
GenFunc operator-(const GenFunc& f, const GenFunc& g);
GenFunc operator-(const GenFunc& f);
GenFunc operator*(const GenFunc& f, const GenFunc& g);
GenFunc operator*(const AsymptoticScalar& c, const GenFunc& f);

/// Symbolic derivative: Leibniz over products, chain rule over compositions,
/// index shift on standard, kernel, cutoff and convolution nodes, and the
/// linear change of frame over affine pushforwards. Throws UnsupportedTerm for
/// pushforwards through non-affine maps.
GenFunc derive(const GenFunc& f, const MultiIndex& alpha);
NodePtr derive_node(const NodePtr& n, const MultiIndex& alpha);

/// Same tree on a subdomain. Throws DomainMismatch unless sub is inside the
/// domain and nonempty.
GenFunc restrict_to(const GenFunc& f, const Domain& sub);

/// Value at x for the given rho. Throws OutsideDomain when x is not in the
/// domain, QuadratureFailure on a non-finite integrand.
Complex eval(const GenFunc& f, std::span<const double> x, const EvalContext& ctx);
/// Value of a bare tree (no domain check).
Complex eval_node(const Node& n, std::span<const double> x, const EvalContext& ctx);

/// Values of f at every (point, rho) pair, row-major [point][rho].
std::vector<Complex> eval_grid(const GenFunc& f, const std::vector<std::vector<double>>& points, double rho,
                               const QuadConfig& quad, Exec exec = Exec::parallel);
std::vector<Complex> eval_grid(const GenFunc& f, const std::vector<NearStandardPoint>& pts,
                               const std::vector<double>& rho_grid, const QuadConfig& quad,
                               Exec exec = Exec::parallel);

struct MonadComparison {
  bool equal = false;
  double max_abs_diff = 0.0;
  std::size_t rho_used = 0;
  std::vector<double> worst_point;
  double worst_rho = 0.0;
};

/// Decides equality in the algebra: |f - g| <= tol at every sampled point,
/// for every grid rho below the per-domain threshold. Equality requires at
/// least one usable rho.
MonadComparison compare_on_monad(const GenFunc& f, const GenFunc& g, const std::vector<NearStandardPoint>& pts,
                                 const std::vector<double>& rho_grid, double tol, const QuadConfig& quad = {},
                                 Exec exec = Exec::parallel);
bool equals_on_monad(const GenFunc& f, const GenFunc& g, const std::vector<NearStandardPoint>& pts,
                     const std::vector<double>& rho_grid, double tol, const QuadConfig& quad = {});

/// Points and per-axis coordinates where a tree changes character at the
/// given rho: kernel centers, edges of kernel supports, cutoff transition
/// layers, and density breakpoints widened by rho.
struct Features {
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> axis_breaks;
};
Features features(const GenFunc& f, double rho);

/// Largest number of kernel-type factors multiplied together (the order of
/// divergence in units of rho^{-d}).
unsigned kernel_power(const GenFunc& f);

/// Outer approximation of the support inside `window`: closed grid cells of
/// side grid_step on which f fails to vanish at the cell center or at any
/// feature point in the cell, for some rho in the grid.
std::vector<Box> support_estimate(const GenFunc& f, const Box& window, double grid_step,
                                  const std::vector<double>& rho_grid, double tol, const QuadConfig& quad = {});

void to_json(nlohmann::json& j, const GenFunc& f);
void to_json(nlohmann::json& j, const Node& n);

}  // namespace egorov
