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

#include "curvcheck/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

namespace curvcheck {

namespace {

constexpr int kMaxDim = 16;
constexpr int kMaxOrder = 15;

// Enumerates multi-indices of total degree exactly `deg` in `dim` variables,
// descending lexicographic order of the exponent tuple.
void enumerate_degree(int dim, int deg, std::vector<std::uint8_t>& current,
                      int pos, int remaining,
                      std::vector<std::vector<std::uint8_t>>& out) {
  if (pos == dim - 1) {
    current[pos] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[pos] = static_cast<std::uint8_t>(v);
    enumerate_degree(dim, deg, current, pos + 1, remaining - v, out);
  }
}

std::vector<std::vector<std::uint8_t>> enumerate_all(int dim, int order) {
  std::vector<std::vector<std::uint8_t>> indices;
  std::vector<std::uint8_t> current(dim, 0);
  for (int deg = 0; deg <= order; ++deg) {
    enumerate_degree(dim, deg, current, 0, deg, indices);
  }
  return indices;
}

std::uint64_t pack_key(std::span<const std::uint8_t> alpha) {
  std::uint64_t key = 0;
  for (std::uint8_t e : alpha) key = (key << 4) | (e & 0xF);
  return key;
}

}  // namespace

JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  // Enumerate one order beyond our own so derivative lookups (alpha + e_axis)
  // can be ranked in the parent layout.
  auto extended = enumerate_all(dim, order + 1);
  std::unordered_map<std::uint64_t, int> rank;
  rank.reserve(extended.size());
  for (std::size_t i = 0; i < extended.size(); ++i) {
    rank.emplace(pack_key(extended[i]), static_cast<int>(i));
  }

  prefix_count_.assign(order + 1, 0);
  int count = 0;
  for (const auto& alpha : extended) {
    const int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (deg > order) break;
    ++count;
    for (int q = deg; q <= order; ++q) ++prefix_count_[q];
  }

  exps_.reserve(static_cast<std::size_t>(count) * dim);
  degree_of_.reserve(count);
  factorial_.reserve(count);
  for (int i = 0; i < count; ++i) {
    const auto& alpha = extended[i];
    exps_.insert(exps_.end(), alpha.begin(), alpha.end());
    const int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
    degree_of_.push_back(static_cast<std::uint8_t>(deg));
    double f = 1.0;
    for (std::uint8_t e : alpha)
      for (int k = 2; k <= e; ++k) f *= k;
    factorial_.push_back(f);
  }

  // Derivative lookup: position of alpha + e_axis in the parent layout.
  raise_.assign(static_cast<std::size_t>(dim) * count, 0);
  for (int axis = 0; axis < dim; ++axis) {
    for (int i = 0; i < count; ++i) {
      auto alpha = extended[i];
      alpha[axis] = static_cast<std::uint8_t>(alpha[axis] + 1);
      raise_[static_cast<std::size_t>(axis) * count + i] =
          static_cast<std::uint32_t>(rank.at(pack_key(alpha)));
    }
  }

  // Convolution triples, sorted by (c, a, b).  The fixed ordering makes
  // accumulation order reproducible and keeps truncated products bit-equal
  // to products computed in a lower-order layout.
  struct Triple {
    std::uint32_t a, b, c;
  };
  std::vector<Triple> triples;
  for (int ia = 0; ia < count; ++ia) {
    const int da = degree_of_[ia];
    for (int ib = 0; ib < count; ++ib) {
      if (da + degree_of_[ib] > order) continue;
      std::vector<std::uint8_t> sum(dim);
      for (int d = 0; d < dim; ++d)
        sum[d] = static_cast<std::uint8_t>(extended[ia][d] + extended[ib][d]);
      const int ic = rank.at(pack_key(sum));
      triples.push_back({static_cast<std::uint32_t>(ia),
                         static_cast<std::uint32_t>(ib),
                         static_cast<std::uint32_t>(ic)});
    }
  }
  std::sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) {
    if (x.c != y.c) return x.c < y.c;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  tri_a_.reserve(triples.size());
  tri_b_.reserve(triples.size());
  tri_c_.reserve(triples.size());
  for (const auto& t : triples) {
    tri_a_.push_back(t.a);
    tri_b_.push_back(t.b);
    tri_c_.push_back(t.c);
  }
  group_begin_.assign(count + 1, 0);
  for (const auto& t : triples) ++group_begin_[t.c + 1];
  for (int i = 0; i < count; ++i) group_begin_[i + 1] += group_begin_[i];
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
  if (dim < 1 || dim > kMaxDim)
    throw ShapeError("jet dimension must be in [1, " +
                     std::to_string(kMaxDim) + "], got " + std::to_string(dim));
  if (order < 0 || order > kMaxOrder)
    throw ShapeError("jet order must be in [0, " + std::to_string(kMaxOrder) +
                     "], got " + std::to_string(order));
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, order}];
  if (!slot) slot = std::shared_ptr<const JetLayout>(new JetLayout(dim, order));
  return slot;
}

int JetLayout::index_of(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) return -1;
  int deg = 0;
  std::vector<std::uint8_t> a(dim_);
  for (int d = 0; d < dim_; ++d) {
    if (alpha[d] < 0) return -1;
    deg += alpha[d];
    a[d] = static_cast<std::uint8_t>(alpha[d]);
  }
  if (deg > order_) return -1;
  // Linear scan inside the degree block; blocks are small at the orders the
  // pipeline uses.
  const int begin = deg == 0 ? 0 : prefix_count_[deg - 1];
  const int end = prefix_count_[deg];
  for (int i = begin; i < end; ++i) {
    if (std::equal(a.begin(), a.end(), exps_.begin() + static_cast<std::size_t>(i) * dim_))
      return i;
  }
  return -1;
}

void JetLayout::add(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) const {
  const int n = count();
  for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void JetLayout::sub(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) const {
  const int n = count();
  for (int i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void JetLayout::mul(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) const {
  std::fill(out.begin(), out.begin() + count(), 0.0);
  mul_acc(a, b, out);
}

void JetLayout::mul_acc(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) const {
  const std::size_t m = tri_a_.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (std::size_t t = 0; t < m; ++t) {
    po[tri_c_[t]] += pa[tri_a_[t]] * pb[tri_b_[t]];
  }
}

void JetLayout::mul_sub(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) const {
  const std::size_t m = tri_a_.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (std::size_t t = 0; t < m; ++t) {
    po[tri_c_[t]] -= pa[tri_a_[t]] * pb[tri_b_[t]];
  }
}

void JetLayout::div(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) const {
  const double b0 = b[0];
  if (b0 == 0.0)
    throw DomainError("division by jet with zero constant term");
  const int n = count();
  for (int c = 0; c < n; ++c) {
    double acc = a[c];
    for (std::uint32_t t = group_begin_[c]; t < group_begin_[c + 1]; ++t) {
      if (tri_a_[t] == 0) continue;  // the b0 * out[c] term being solved for
      acc -= b[tri_a_[t]] * out[tri_b_[t]];
    }
    out[c] = acc / b0;
  }
}

void JetLayout::compose(std::span<const double> a,
                        std::span<const double> series, std::span<double> out,
                        std::span<double> scratch) const {
  const int n = count();
  const int k_max = static_cast<int>(series.size()) - 1;
  std::span<double> tilde = scratch.first(n);
  std::span<double> tmp = scratch.subspan(n, n);
  std::copy(a.begin(), a.begin() + n, tilde.begin());
  tilde[0] = 0.0;
  std::fill(out.begin(), out.begin() + n, 0.0);
  out[0] = series[k_max];
  for (int k = k_max - 1; k >= 0; --k) {
    mul(out.first(n), tilde, tmp);
    std::copy(tmp.begin(), tmp.end(), out.begin());
    out[0] += series[k];
  }
}

void JetLayout::differentiate_from_parent(std::span<const double> a, int axis,
                                          std::span<double> out) const {
  const int n = count();
  const std::uint32_t* up = raise_.data() + static_cast<std::size_t>(axis) * n;
  for (int i = 0; i < n; ++i) {
    const int e = exps_[static_cast<std::size_t>(i) * dim_ + axis];
    out[i] = static_cast<double>(e + 1) * a[up[i]];
  }
}

// ---------------------------------------------------------------------------

Jet Jet::constant(double value, int dim, int order) {
  auto layout = JetLayout::get(dim, order);
  std::vector<double> c(layout->count(), 0.0);
  c[0] = value;
  return Jet(std::move(layout), std::move(c));
}

Jet Jet::variable(int axis, double value, int dim, int order) {
  if (axis < 1 || axis > dim)
    throw AxisError("axis " + std::to_string(axis) +
                    " out of range for dimension " + std::to_string(dim));
  auto layout = JetLayout::get(dim, order);
  std::vector<double> c(layout->count(), 0.0);
  c[0] = value;
  if (order >= 1) c[axis] = 1.0;  // degree-1 block is e_1, e_2, ... in order
  return Jet(std::move(layout), std::move(c));
}

double Jet::coefficient(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != dim())
    throw ShapeError("multi-index length does not match jet dimension");
  int deg = 0;
  for (int e : alpha) {
    if (e < 0) throw ShapeError("negative entry in multi-index");
    deg += e;
  }
  if (deg > order())
    throw OrderExhaustedError(
        "requested derivative order " + std::to_string(deg) +
        " exceeds jet order " + std::to_string(order()));
  const int idx = layout_->index_of(alpha);
  return coeffs_[idx];
}

double Jet::partial(std::span<const int> alpha) const {
  const double c = coefficient(alpha);
  const int pos = layout_->index_of(alpha);
  return c * layout_->factorial(pos);
}

Jet Jet::truncated(int order) const {
  if (order > this->order())
    throw ShapeError("cannot truncate to a higher order");
  auto layout = JetLayout::get(dim(), order);
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + layout->count());
  return Jet(std::move(layout), std::move(c));
}

Jet Jet::derivative(int axis) const {
  if (axis < 1 || axis > dim())
    throw AxisError("axis " + std::to_string(axis) +
                    " out of range for dimension " + std::to_string(dim()));
  if (order() < 1)
    throw OrderExhaustedError("derivative of an order-0 jet");
  auto layout = JetLayout::get(dim(), order() - 1);
  std::vector<double> c(layout->count());
  layout->differentiate_from_parent(coeffs_, axis - 1, c);
  return Jet(std::move(layout), std::move(c));
}

void Jet::check_compatible(const Jet& a, const Jet& b) {
  if (!a.valid() || !b.valid()) throw ShapeError("operation on empty jet");
  if (a.dim() != b.dim() || a.order() != b.order())
    throw ShapeError("jet dimension/order mismatch: (" +
                     std::to_string(a.dim()) + "," + std::to_string(a.order()) +
                     ") vs (" + std::to_string(b.dim()) + "," +
                     std::to_string(b.order()) + ")");
}

Jet Jet::operator-() const {
  std::vector<double> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return Jet(layout_, std::move(c));
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_compatible(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_compatible(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  std::vector<double> c(a.coeffs_.size());
  a.layout_->add(a.coeffs_, b.coeffs_, c);
  return Jet(a.layout_, std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  std::vector<double> c(a.coeffs_.size());
  a.layout_->sub(a.coeffs_, b.coeffs_, c);
  return Jet(a.layout_, std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  std::vector<double> c(a.coeffs_.size());
  a.layout_->mul(a.coeffs_, b.coeffs_, c);
  return Jet(a.layout_, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  std::vector<double> c(a.coeffs_.size());
  a.layout_->div(a.coeffs_, b.coeffs_, c);
  return Jet(a.layout_, std::move(c));
}

Jet operator+(const Jet& a, double s) {
  std::vector<double> c = a.coeffs_;
  c[0] += s;
  return Jet(a.layout_, std::move(c));
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r.coeffs_[0] += s;
  return r;
}
Jet operator*(const Jet& a, double s) {
  std::vector<double> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] * s;
  return Jet(a.layout_, std::move(c));
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
Jet operator/(double s, const Jet& a) {
  return Jet::constant(s, a.dim(), a.order()) / a;
}

Jet Jet::pow_int(int exponent) const {
  if (exponent == 0) return Jet::constant(1.0, dim(), order());
  if (exponent < 0) {
    if (value() == 0.0)
      throw DomainError("negative integer power of a jet with zero value");
    return Jet::constant(1.0, dim(), order()) / pow_int(-exponent);
  }
  Jet base = *this;
  Jet result = Jet::constant(1.0, dim(), order());
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Jet Jet::apply_series(std::span<const double> series) const {
  std::vector<double> out(coeffs_.size());
  std::vector<double> scratch(2 * coeffs_.size());
  layout_->compose(coeffs_, series, out, scratch);
  return Jet(layout_, std::move(out));
}

namespace jet_series {

namespace {
std::vector<double> cycle4(double x0, int order, int phase) {
  // Derivative cycle sin -> cos -> -sin -> -cos, divided by k!.
  std::vector<double> c(order + 1);
  double kfac = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) kfac *= k;
    switch ((k + phase) % 4) {
      case 0: c[k] = std::sin(x0) / kfac; break;
      case 1: c[k] = std::cos(x0) / kfac; break;
      case 2: c[k] = -std::sin(x0) / kfac; break;
      default: c[k] = -std::cos(x0) / kfac; break;
    }
  }
  return c;
}
}  // namespace

std::vector<double> sin(double x0, int order) { return cycle4(x0, order, 0); }
std::vector<double> cos(double x0, int order) { return cycle4(x0, order, 1); }

std::vector<double> tan(double x0, int order) {
  if (std::cos(x0) == 0.0)
    throw DomainError("tan at a point where cos vanishes");
  // y' = 1 + y^2 gives (k+1) y_{k+1} = [k == 0] + sum_{i=0..k} y_i y_{k-i}.
  std::vector<double> y(order + 1);
  y[0] = std::tan(x0);
  for (int k = 0; k + 1 <= order; ++k) {
    double conv = 0.0;
    for (int i = 0; i <= k; ++i) conv += y[i] * y[k - i];
    y[k + 1] = ((k == 0 ? 1.0 : 0.0) + conv) / (k + 1);
  }
  return y;
}

std::vector<double> exp(double x0, int order) {
  std::vector<double> c(order + 1);
  const double e = std::exp(x0);
  double kfac = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) kfac *= k;
    c[k] = e / kfac;
  }
  return c;
}

std::vector<double> log(double x0, int order) {
  if (x0 <= 0.0) throw DomainError("log of a jet with non-positive value");
  std::vector<double> c(order + 1);
  c[0] = std::log(x0);
  double inv_pow = 1.0;
  for (int k = 1; k <= order; ++k) {
    inv_pow /= x0;
    c[k] = (k % 2 == 1 ? 1.0 : -1.0) * inv_pow / k;
  }
  return c;
}

std::vector<double> sqrt(double x0, int order) {
  if (x0 <= 0.0) throw DomainError("sqrt of a jet with non-positive value");
  std::vector<double> c(order + 1);
  c[0] = std::sqrt(x0);
  for (int k = 1; k <= order; ++k) {
    c[k] = c[k - 1] * (1.5 - k) / (k * x0);
  }
  return c;
}

std::vector<double> sinh(double x0, int order) {
  std::vector<double> c(order + 1);
  double kfac = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) kfac *= k;
    c[k] = (k % 2 == 0 ? std::sinh(x0) : std::cosh(x0)) / kfac;
  }
  return c;
}

std::vector<double> cosh(double x0, int order) {
  std::vector<double> c(order + 1);
  double kfac = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) kfac *= k;
    c[k] = (k % 2 == 0 ? std::cosh(x0) : std::sinh(x0)) / kfac;
  }
  return c;
}

}  // namespace jet_series

Jet sin(const Jet& a) { return a.apply_series(jet_series::sin(a.value(), a.order())); }
Jet cos(const Jet& a) { return a.apply_series(jet_series::cos(a.value(), a.order())); }
Jet tan(const Jet& a) { return a.apply_series(jet_series::tan(a.value(), a.order())); }
Jet exp(const Jet& a) { return a.apply_series(jet_series::exp(a.value(), a.order())); }
Jet log(const Jet& a) { return a.apply_series(jet_series::log(a.value(), a.order())); }
Jet sqrt(const Jet& a) { return a.apply_series(jet_series::sqrt(a.value(), a.order())); }
Jet sinh(const Jet& a) { return a.apply_series(jet_series::sinh(a.value(), a.order())); }
Jet cosh(const Jet& a) { return a.apply_series(jet_series::cosh(a.value(), a.order())); }

}  // namespace curvcheck
