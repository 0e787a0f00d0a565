// Copyright 2026 The WCN Authors
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

#ifndef WCN_ERRORS_H_
#define WCN_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcn {

// Raised by every iterative solver when the iteration budget runs out. Carries
// the last iterate so callers can inspect or record how far it got.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate,
                      double residual, int iterations,
                      std::vector<double> residual_trace = {})
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations),
        residual_trace_(std::move(residual_trace)) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }
  const std::vector<double>& residual_trace() const { return residual_trace_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  int iterations_;
  std::vector<double> residual_trace_;
};

// The exact (enumerating) model refuses instances above its size cap.
class ExactCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace wcn

#endif  // WCN_ERRORS_H_
