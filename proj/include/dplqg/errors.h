// Copyright 2026 The dplqg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPLQG_ERRORS_H_
#define DPLQG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dplqg {

// Malformed input: bad dimensions, out-of-range parameters, bad config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A modelling assumption (definiteness, controllability, detectability)
// does not hold. `condition()` names the failing check.
class AssumptionError : public std::domain_error {
 public:
  AssumptionError(std::string condition, const std::string& detail)
      : std::domain_error(condition + ": " + detail),
        condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

// Fixed-point iteration hit its cap or ended above the residual target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                           ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// The entropy bound's hypothesis fails, so no bound is emitted.
class BoundInapplicableError : public std::domain_error {
 public:
  BoundInapplicableError(const std::string& what, double margin)
      : std::domain_error(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

}  // namespace dplqg

#endif  // DPLQG_ERRORS_H_
