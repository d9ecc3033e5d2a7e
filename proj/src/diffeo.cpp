#include "egorov/diffeo.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace egorov {

Diffeo Diffeo::make_affine(std::vector<double> A, std::vector<double> b) {
  const std::size_t d = b.size();
  if (d == 0 || A.size() != d * d) throw std::invalid_argument("affine map needs a d x d matrix and a d-vector");
  Eigen::MatrixXd M(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) M(i, j) = A[i * d + j];
  const auto lu = M.fullPivLu();
  if (!lu.isInvertible()) throw std::invalid_argument("affine map is not invertible");
  const Eigen::MatrixXd Mi = lu.inverse();
  const double det = M.determinant();

  Diffeo t;
  t.dim = d;
  std::ostringstream os;
  os << "affine(A=[";
  for (std::size_t k = 0; k < A.size(); ++k) os << (k ? "," : "") << A[k];
  os << "],b=[";
  for (std::size_t k = 0; k < d; ++k) os << (k ? "," : "") << b[k];
  os << "])";
  t.name = os.str();
  Affine af{A, b, std::vector<double>(d * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) af.A_inv[i * d + j] = Mi(i, j);
  t.forward = [A, b, d](std::span<const double> x) {
    std::vector<double> y(b);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) y[i] += A[i * d + j] * x[j];
    return y;
  };
  t.inverse = [Ai = af.A_inv, b, d](std::span<const double> y) {
    std::vector<double> x(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x[i] += Ai[i * d + j] * (y[j] - b[j]);
    return x;
  };
  t.jacobian_det = [det](std::span<const double>) { return det; };
  bool diagonal = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && A[i * d + j] != 0.0) diagonal = false;
  if (diagonal)
    for (std::size_t i = 0; i < d; ++i) t.axis_forward.push_back([a = A[i * d + i], c = b[i]](double x) { return a * x + c; });
  t.affine = std::move(af);
  return t;
}

Diffeo Diffeo::identity(std::size_t dim) {
  std::vector<double> A(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) A[i * dim + i] = 1.0;
  return make_affine(std::move(A), std::vector<double>(dim, 0.0));
}

Diffeo Diffeo::line(double a, double b) { return make_affine({a}, {b}); }

Diffeo Diffeo::general_1d(std::string name, std::function<double(double)> fwd, std::function<double(double)> inv,
                          std::function<double(double)> derivative) {
  Diffeo t;
  t.dim = 1;
  t.name = std::move(name);
  t.forward = [fwd](std::span<const double> x) { return std::vector<double>{fwd(x[0])}; };
  t.inverse = [inv](std::span<const double> y) { return std::vector<double>{inv(y[0])}; };
  t.jacobian_det = [derivative](std::span<const double> x) { return derivative(x[0]); };
  t.axis_forward = {fwd};
  return t;
}

}  // namespace egorov
