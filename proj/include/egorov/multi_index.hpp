#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace egorov {

/// Multi-index alpha in N_0^d for partial derivatives d^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : idx_(dim, 0) {}
  MultiIndex(std::initializer_list<unsigned> v) : idx_(v) {}
  explicit MultiIndex(std::vector<unsigned> v) : idx_(std::move(v)) {}

  static MultiIndex unit(std::size_t dim, std::size_t axis) {
    MultiIndex e(dim);
    e.idx_.at(axis) = 1;
    return e;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return idx_.size(); }
  [[nodiscard]] unsigned order() const noexcept { return std::accumulate(idx_.begin(), idx_.end(), 0u); }
  [[nodiscard]] bool is_zero() const noexcept { return order() == 0; }
  [[nodiscard]] unsigned operator[](std::size_t i) const { return idx_[i]; }
  unsigned& operator[](std::size_t i) { return idx_[i]; }
  [[nodiscard]] const std::vector<unsigned>& values() const noexcept { return idx_; }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("multi-index dimension mismatch");
    MultiIndex c = a;
    for (std::size_t i = 0; i < a.dim(); ++i) c.idx_[i] += b.idx_[i];
    return c;
  }

  /// Componentwise beta <= alpha.
  [[nodiscard]] bool dominates(const MultiIndex& beta) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (beta.idx_[i] > idx_[i]) return false;
    return true;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> idx_;
};

inline std::string to_string(const MultiIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.dim(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

/// All multi-indices of the given dimension with |alpha| == order, in
/// lexicographically decreasing first component.
inline std::vector<MultiIndex> multi_indices_of_order(std::size_t dim, unsigned order) {
  std::vector<MultiIndex> out;
  if (dim == 0) return out;
  if (dim == 1) return {MultiIndex({order})};
  for (unsigned first = order + 1; first-- > 0;) {
    for (auto rest : multi_indices_of_order(dim - 1, order - first)) {
      std::vector<unsigned> v{first};
      v.insert(v.end(), rest.values().begin(), rest.values().end());
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

/// All beta <= alpha componentwise.
inline std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out{MultiIndex(alpha.dim())};
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& b : out)
      for (unsigned k = 0; k <= alpha[i]; ++k) {
        MultiIndex c = b;
        c[i] = k;
        next.push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

inline double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned j = 1; j <= k; ++j) b = b * static_cast<double>(n - k + j) / static_cast<double>(j);
  return b;
}

/// prod_i binom(alpha_i, beta_i)
inline double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  double b = 1.0;
  for (std::size_t i = 0; i < alpha.dim(); ++i) b *= binomial(alpha[i], beta[i]);
  return b;
}

inline MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (!a.dominates(b)) throw std::invalid_argument("multi-index subtraction underflow");
  std::vector<unsigned> v(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) v[i] = a[i] - b[i];
  return MultiIndex(std::move(v));
}

}  // namespace egorov
