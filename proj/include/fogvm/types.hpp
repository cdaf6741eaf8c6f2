// Copyright 2026 The fogvm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGVM_TYPES_HPP
#define FOGVM_TYPES_HPP

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fogvm {

// Dense containers used throughout. Per-node quantities are column vectors
// indexed by internal node index; per-access-network quantities are
// (pon x node) matrices.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IndexVector = Eigen::VectorXi;
using IndexMatrix = Eigen::MatrixXi;

template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Equipment sizing: integral devices (ceilings) or fractional device counts.
enum class Sizing { Integral, Fractional };

// Linear workload profile evaluation.
//   Default: baseline M per active replica instance plus slope * traffic.
//   Literal: (traffic / T_v) * M + slope * traffic, which equals W_v * D / T_v.
enum class LinearMode { Default, Literal };

// Wavelength grooming on a physical link.
//   Aggregate: demands sharing a link share wavelengths (sum, then ceil).
//   PerDemand: every (s, d) commodity gets its own wavelengths.
enum class Grooming { Aggregate, PerDemand };

enum class LocationKind { Cloud = 0, MetroFog = 1, AccessFog = 2 };

// Which serving locations a solver may use.
enum class Restriction { None, CloudsOnly, AttSites, CloudsAndMetro };

std::string to_string(Sizing s);
std::string to_string(LinearMode m);
std::string to_string(Grooming g);
std::string to_string(LocationKind k);
std::string to_string(Restriction r);

Sizing parse_sizing(const std::string& s);
LinearMode parse_linear_mode(const std::string& s);
Grooming parse_grooming(const std::string& s);
LocationKind parse_location_kind(const std::string& s);
Restriction parse_restriction(const std::string& s);

// Short labels used in reports: ATT, OC, OC&F1, OC&F.
std::string approach_label(Restriction r);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class Inconsistency : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, double bound)
      : Error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

class UnclassifiedVm : public Error {
 public:
  using Error::Error;
};

// Tolerance applied before taking ceilings, so that sums such as
// 3 * 13333.333... do not round up an exact multiple.
inline constexpr double kCeilSlack = 1e-9;

// Number of devices of `capacity` needed to carry `load`.
inline double size_units(double load, double capacity, Sizing mode) {
  if (load <= 0.0) return 0.0;
  const double ratio = load / capacity;
  if (mode == Sizing::Fractional) return ratio;
  return std::ceil(ratio - kCeilSlack * std::max(1.0, ratio));
}

// Elementwise version over any Eigen array expression.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Derived::RowsAtCompileTime,
             Derived::ColsAtCompileTime>
size_units(const Eigen::ArrayBase<Derived>& load, double capacity,
           Sizing mode) {
  return load.unaryExpr(
      [=](typename Derived::Scalar x) { return size_units(x, capacity, mode); });
}

}  // namespace fogvm

#endif  // FOGVM_TYPES_HPP
