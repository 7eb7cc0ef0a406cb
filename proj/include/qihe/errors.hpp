// Copyright 2026 The qihe Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qihe {

/// Base of every error raised by the library. The message names the violated
/// invariant or precondition.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidOperatorError : public Error {
  public:
    using Error::Error;
};

class InvalidDensityMatrixError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
  public:
    using Error::Error;
};

class UnsupportedStatisticsError : public Error {
  public:
    using Error::Error;
};

/// A scalar function was evaluated outside its domain (e.g. log of a
/// non-positive eigenvalue).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Raised when a state would need a Hamiltonian with infinite energy gaps to
/// be thermal (zero eigenvalues, c = 1 polarization, ...).
class PureLimitError : public Error {
  public:
    using Error::Error;
};

class IncompatibleControlSetError : public Error {
  public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
  public:
    using Error::Error;
};

class ScenarioError : public Error {
  public:
    using Error::Error;
};

} // namespace qihe
