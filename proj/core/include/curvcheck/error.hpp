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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvcheck {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis index outside [1, dim].
class AxisError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree in dimension, order or valence.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A derivative of higher order than the jet carries was requested.
class OrderExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the real domain of a function (log of a non-positive
/// constant term, division by a jet with zero constant term, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Syntax or validation error in expression / manifest / selector text.
/// `position` is the 1-based character offset into the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Metric not invertible (or not positive definite) at a point.
class SingularMetricError : public Error {
 public:
  SingularMetricError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

}  // namespace curvcheck
