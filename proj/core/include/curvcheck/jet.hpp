// Copyright 2026 The Curvcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "curvcheck/error.hpp"

namespace curvcheck {

/// Shared coefficient layout for truncated multivariate Taylor expansions in
/// `dim` variables up to total degree `order`.
///
/// Multi-indices are stored in graded lexicographic order: ascending total
/// degree, and within a degree descending lexicographic comparison of the
/// exponent tuple.  For dim = 2, order = 2 the sequence is
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
///
/// The ordering is graded, so the first count_at_order(q) coefficients of an
/// order-K buffer are exactly the order-q truncation.  All kernels below
/// exploit this: they read only the prefix of their operands that the output
/// order requires, which lets buffers of different orders interoperate
/// without copying.
class JetLayout {
 public:
  /// Returns the cached layout for (dim, order).  Thread safe.
  static std::shared_ptr<const JetLayout> get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int count() const { return static_cast<int>(degree_of_.size()); }
  /// Number of multi-indices with |alpha| <= q (prefix length).
  int count_at_order(int q) const { return prefix_count_[q]; }

  std::span<const std::uint8_t> exponent(int index) const {
    return {exps_.data() + static_cast<std::size_t>(index) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  int degree(int index) const { return degree_of_[index]; }
  /// alpha! for the multi-index at `index`.
  double factorial(int index) const { return factorial_[index]; }
  /// Position of a multi-index, or -1 when |alpha| > order.
  int index_of(std::span<const int> alpha) const;

  // --- span kernels -------------------------------------------------------
  // All kernels treat `this` as the layout of `out`; operand buffers must be
  // valid prefixes of length >= count() in a layout of the same dim and any
  // order >= this->order().

  void add(std::span<const double> a, std::span<const double> b,
           std::span<double> out) const;
  void sub(std::span<const double> a, std::span<const double> b,
           std::span<double> out) const;
  /// out = a * b (truncated convolution).  out must not alias a or b.
  void mul(std::span<const double> a, std::span<const double> b,
           std::span<double> out) const;
  /// out += a * b.  out must not alias a or b.
  void mul_acc(std::span<const double> a, std::span<const double> b,
               std::span<double> out) const;
  /// out -= a * b.  out must not alias a or b.
  void mul_sub(std::span<const double> a, std::span<const double> b,
               std::span<double> out) const;
  /// out = a / b by recursive coefficient solve; requires b[0] != 0.
  void div(std::span<const double> a, std::span<const double> b,
           std::span<double> out) const;
  /// out = sum_k series[k] * (a - a[0])^k, Horner form; `scratch` must hold
  /// 2 * count() doubles.  Exact at the truncation order.
  void compose(std::span<const double> a, std::span<const double> series,
               std::span<double> out, std::span<double> scratch) const;
  /// Partial derivative along `axis` (0-based).  `a` lives in the layout of
  /// order `order()+1` with the same dim (parent layout);
  /// out has this->count() entries.
  void differentiate_from_parent(std::span<const double> a, int axis,
                                 std::span<double> out) const;

 private:
  JetLayout(int dim, int order);

  int dim_ = 0;
  int order_ = 0;
  std::vector<std::uint8_t> exps_;        // count * dim exponents
  std::vector<std::uint8_t> degree_of_;   // count
  std::vector<double> factorial_;         // count: alpha!
  std::vector<int> prefix_count_;         // order+1 entries
  // Convolution triples (a, b, c) with |alpha_a| + |alpha_b| <= order,
  // sorted by (c, a, b); group_begin_[c] indexes the first triple of output c.
  std::vector<std::uint32_t> tri_a_, tri_b_, tri_c_;
  std::vector<std::uint32_t> group_begin_;
  // raise_[axis * count + i] = index of alpha_i + e_axis (for |alpha_i| < order).
  std::vector<std::uint32_t> raise_;

  friend class Jet;
};

/// Truncated multivariate Taylor expansion of a scalar at a point.
/// Coefficient convention: coeffs[alpha] = d^alpha f(p) / alpha!.
/// Immutable in spirit: all operations return new values.
class Jet {
 public:
  Jet() = default;

  static Jet constant(double value, int dim, int order);
  /// Jet of the coordinate function x_axis (1-based) at the point.
  static Jet variable(int axis, double value, int dim, int order);

  bool valid() const { return layout_ != nullptr; }
  int dim() const { return layout_->dim(); }
  int order() const { return layout_->order(); }
  const JetLayout& layout() const { return *layout_; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Constant term f(p).
  double value() const { return coeffs_[0]; }
  /// Raw coefficient for a multi-index; throws OrderExhaustedError when
  /// |alpha| exceeds the jet order.
  double coefficient(std::span<const int> alpha) const;
  /// d^alpha f(p) = alpha! * coefficient(alpha).
  double partial(std::span<const int> alpha) const;

  /// Prefix truncation to a lower (or equal) order; bit-exact.
  Jet truncated(int order) const;
  /// Partial derivative along a 1-based axis; drops one order.
  Jet derivative(int axis) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator/(double s, const Jet& a);

  /// Integer power (negative allowed when value() != 0).
  Jet pow_int(int exponent) const;

  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet tan(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet sinh(const Jet& a);
  friend Jet cosh(const Jet& a);

 private:
  Jet(std::shared_ptr<const JetLayout> layout, std::vector<double> coeffs)
      : layout_(std::move(layout)), coeffs_(std::move(coeffs)) {}
  static void check_compatible(const Jet& a, const Jet& b);
  Jet apply_series(std::span<const double> series) const;

  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;
};

/// Univariate Taylor coefficients f^(k)(x0)/k! for k = 0..order, used by the
/// elementary-function compositions.  Exposed for tests.
namespace jet_series {
std::vector<double> sin(double x0, int order);
std::vector<double> cos(double x0, int order);
std::vector<double> tan(double x0, int order);
std::vector<double> exp(double x0, int order);
std::vector<double> log(double x0, int order);
std::vector<double> sqrt(double x0, int order);
std::vector<double> sinh(double x0, int order);
std::vector<double> cosh(double x0, int order);
}  // namespace jet_series

}  // namespace curvcheck
