// Copyright 2026 The gamebound Authors
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

#ifndef GAMEBOUND_ERRORS_HPP
#define GAMEBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gamebound {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SingularJacobianError : public Error {
 public:
  SingularJacobianError(std::size_t pivot, double magnitude)
      : Error("singular Jacobian: pivot " + std::to_string(pivot) +
              " has magnitude " + std::to_string(magnitude)),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class SpectralFailure : public Error {
 public:
  explicit SpectralFailure(std::size_t index)
      : Error("QR iteration failed to converge at eigenvalue index " +
              std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class UndefinedKappaError : public Error {
 public:
  using Error::Error;
};

class DegenerateBoundsError : public Error {
 public:
  using Error::Error;
};

class UnsupportedArityError : public Error {
 public:
  using Error::Error;
};

class NotAMinMaxError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace gamebound

#endif  // GAMEBOUND_ERRORS_HPP
